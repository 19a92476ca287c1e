"""Exact arithmetic in cyclotomic fields Q(omega), omega a primitive n-th root of 1.

Elements are polynomials in omega with rational coefficients, reduced mod
the n-th cyclotomic polynomial Phi_n.  Phi_n is irreducible over Q, so
every nonzero element is invertible (extended Euclid).  No floating point
anywhere; zero tests are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence


def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _int_poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        q, r = divmod(num[shift + len(den) - 1], lead)
        if q:
            out[shift] = q
            for i, c in enumerate(den):
                num[shift + i] -= q * c
    return out, _trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, constant term first; computed as (t^n - 1) / prod Phi_d."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num, rem = _int_poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(num)


class CyclotomicField:
    """The field Q(omega) for a fixed n, with element construction helpers."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.modulus_poly = cyclotomic_polynomial(n)
        self.degree = len(self.modulus_poly) - 1

    def element(self, coeffs: Sequence) -> "CyclotomicNumber":
        coeffs = [Fraction(c) for c in coeffs]
        coeffs = self._reduce(coeffs)
        return CyclotomicNumber(self, tuple(coeffs))

    def _reduce(self, coeffs: list[Fraction]) -> list[Fraction]:
        mod = self.modulus_poly
        deg = self.degree
        coeffs = list(coeffs)
        for shift in range(len(coeffs) - deg - 1, -1, -1):
            c = coeffs[shift + deg]
            if c:
                for i in range(deg + 1):
                    coeffs[shift + i] -= c * mod[i]
        coeffs = coeffs[:deg]
        coeffs += [Fraction(0)] * (deg - len(coeffs))
        return coeffs

    def zero(self) -> "CyclotomicNumber":
        return self.element([])

    def one(self) -> "CyclotomicNumber":
        return self.element([1])

    def rational(self, q) -> "CyclotomicNumber":
        return self.element([Fraction(q)])

    def omega(self, power: int = 1) -> "CyclotomicNumber":
        power %= self.n
        coeffs = [Fraction(0)] * power + [Fraction(1)]
        return self.element(coeffs)

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("CyclotomicField", self.n))

    def __repr__(self):
        return f"CyclotomicField({self.n})"


@dataclass(frozen=True)
class CyclotomicNumber:
    """An element of Q(omega) in reduced form (degree < deg Phi_n)."""

    field: CyclotomicField
    coeffs: tuple[Fraction, ...]

    def _same(self, other):
        if self.field != other.field:
            raise ValueError("mixed cyclotomic fields")

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        self._same(other)
        return CyclotomicNumber(
            self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        self._same(other)
        return CyclotomicNumber(
            self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> "CyclotomicNumber":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber(self.field, tuple(a * q for a in self.coeffs))
        self._same(other)
        prod = [Fraction(0)] * (2 * self.field.degree)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicNumber(self.field, tuple(self.field._reduce(prod)))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via extended Euclid against Phi_n."""
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        # Bezout: s * self + t * Phi_n = gcd = constant (Phi_n irreducible over Q)
        r0 = [Fraction(c) for c in self.field.modulus_poly]
        r1 = _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _frac_poly_sub(s0, _frac_poly_mul(q, s1))
        assert r1, "cyclotomic polynomial must be coprime to a nonzero reduced element"
        inv_lead = 1 / r1[0]
        return self.field.element([c * inv_lead for c in s1])

    def __truediv__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inverse()

    def __pow__(self, k: int) -> "CyclotomicNumber":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_json(self) -> list[str]:
        coeffs = _trim(list(self.coeffs))
        return [str(c) for c in coeffs]

    @classmethod
    def from_json(cls, field: CyclotomicField, data: Sequence[str]) -> "CyclotomicNumber":
        return field.element([Fraction(str(c)) for c in data])

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*w")
            else:
                parts.append(f"{c}*w^{i}")
        return " + ".join(parts)


def _frac_poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1] / lead
        if c:
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    return q, num


def _frac_poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1 if a and b else 0)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _frac_poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)
