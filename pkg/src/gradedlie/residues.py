"""Index combinatorics in Z/nZ for odd n.

Additive orders, (-1)-dependence of index sequences, the dependency set
D(seq) and the coefficient-{0,+-1,+-2} span Dtilde(seq), plus the named
numeric bounds used by the derived-length pipeline.  Everything is exact
integer arithmetic and every value is immutable after construction, so
instances can be shared freely between concurrent tasks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator


def _check_modulus(n: int) -> None:
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise ValueError(
            f"modulus must be an odd integer >= 3, got {n!r} "
            "(every statement here assumes 2 does not divide n)"
        )


@dataclass(frozen=True, order=True)
class Residue:
    """An element of Z/nZ, stored as its least nonnegative representative."""

    value: int
    modulus: int

    def __post_init__(self):
        _check_modulus(self.modulus)
        if not isinstance(self.value, int) or not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value!r} not reduced mod {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        _check_modulus(modulus)
        return cls(value % modulus, modulus)

    def signed(self) -> int:
        """Representative in (-n/2, n/2); for report output only."""
        return self.value if self.value <= self.modulus // 2 else self.value - self.modulus

    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, other: "Residue") -> "Residue":
        self._same(other)
        return Residue((self.value + other.value) % self.modulus, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._same(other)
        return Residue((self.value - other.value) % self.modulus, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue((-self.value) % self.modulus, self.modulus)

    def __mul__(self, k: int) -> "Residue":
        return Residue((self.value * k) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def _same(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise ValueError(f"mixed moduli {self.modulus} and {other.modulus}")

    def __str__(self):
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True)
class IndexSequence:
    """A finite ordered sequence of residues sharing one modulus."""

    entries: tuple[Residue, ...]

    def __post_init__(self):
        if len(self.entries) < 1:
            raise ValueError("index sequence must be nonempty")
        n = self.entries[0].modulus
        for r in self.entries:
            if r.modulus != n:
                raise ValueError("all entries must share one modulus")

    @classmethod
    def of(cls, modulus: int, values: Iterable[int]) -> "IndexSequence":
        return cls(tuple(Residue.of(v, modulus) for v in values))

    @property
    def modulus(self) -> int:
        return self.entries[0].modulus

    def values(self) -> tuple[int, ...]:
        return tuple(r.value for r in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[Residue]:
        return iter(self.entries)

    def extended(self, r: Residue) -> "IndexSequence":
        return IndexSequence(self.entries + (r,))

    def has_zero_entry(self) -> bool:
        return any(r.is_zero() for r in self.entries)

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "entries": list(self.values())}

    @classmethod
    def from_json(cls, data: dict) -> "IndexSequence":
        return cls.of(int(data["modulus"]), [int(v) for v in data["entries"]])


def residue_order(a: Residue) -> int:
    """Additive order of a in Z/nZ, the least t > 0 with t*a = 0 (= n / gcd(n, a))."""
    return a.modulus // math.gcd(a.modulus, a.value)


def is_minus_one_dependent(seq: IndexSequence) -> bool:
    """True iff some nonzero {0,1}-vector t has sum(t_i * a_i) = 0 mod n.

    Exhaustive over the 2^k - 1 nonzero coefficient vectors; sequences here
    have k <= ~8, so no cleverness is warranted.
    """
    n = seq.modulus
    vals = seq.values()
    k = len(vals)
    for mask in range(1, 1 << k):
        s = 0
        for i in range(k):
            if mask >> i & 1:
                s += vals[i]
        if s % n == 0:
            return True
    return False


def subset_sums(seq: IndexSequence) -> frozenset[Residue]:
    """All sums of subsets of the entries, the empty sum (= 0) included."""
    n = seq.modulus
    sums = {0}
    for v in seq.values():
        sums |= {(s + v) % n for s in sums}
    return frozenset(Residue(s, n) for s in sums)


def dependency_set(seq: IndexSequence) -> frozenset[Residue]:
    """D(seq): all j in Z/nZ making the extended sequence (-1)-dependent.

    Defined only for (-1)-independent seq; there the set is exactly the
    negated subset sums of the entries.  Note 0 is always a member (the
    empty subset), even though lemma hypotheses elsewhere require nonzero
    indices.
    """
    if is_minus_one_dependent(seq):
        raise ValueError("dependency_set is defined only for (-1)-independent sequences")
    return frozenset(-s for s in subset_sums(seq))


def dtilde_set(seq: IndexSequence) -> frozenset[Residue]:
    """Dtilde(seq): all combinations u_1 b_1 + ... + u_k b_k, u_i in {0,+-1,+-2}."""
    n = seq.modulus
    vals = seq.values()
    out = set()
    for coeffs in product((0, 1, -1, 2, -2), repeat=len(vals)):
        out.add(sum(c * v for c, v in zip(coeffs, vals)) % n)
    return frozenset(Residue(v, n) for v in out)


def residue_set_to_json(rs: Iterable[Residue]) -> dict:
    rs = sorted(rs)
    if not rs:
        return {"modulus": None, "values": []}
    return {"modulus": rs[0].modulus, "values": [r.value for r in rs]}


@dataclass(frozen=True)
class SymbolicBound:
    """coefficient * base**exponent, kept unexpanded.

    The headline bound has about 6.5 million decimal digits, so the product
    is never formed unless expand() is called explicitly.  digit_count()
    works from logarithms; the float rounding error is < 1e-8 digits at this
    exponent, comfortably inside the +-1 digit contract.
    """

    coefficient: int
    base: int
    exponent: int

    def digit_count(self) -> int:
        log10 = math.log10(self.coefficient) + self.exponent * math.log10(self.base)
        return math.floor(log10) + 1

    def expand(self) -> int:
        """The exact integer.  Explicit request only; this is a huge number."""
        return self.coefficient * self.base ** self.exponent

    def __str__(self):
        return f"{self.coefficient} * {self.base}^{self.exponent}"


@dataclass(frozen=True)
class PaperConstants:
    """The explicit numeric bounds of the derived-length argument.

    dtilde_max bounds |Dtilde(d1,d2,d3,d4)|, u_max bounds the length of the
    reordered initial segment, e_bound bounds the number of nontrivial
    components of the generated ideal, and final_length is the resulting
    derived-length bound given the input parameter f1.
    """

    f1: int
    dtilde_max: int
    u_max: int
    e_bound: SymbolicBound
    final_length: int

    def to_json(self) -> dict:
        return {
            "f1": self.f1,
            "dtilde_max": self.dtilde_max,
            "u_max": self.u_max,
            "e_bound": {
                "coefficient": self.e_bound.coefficient,
                "base": self.e_bound.base,
                "exponent": self.e_bound.exponent,
            },
            "final_length": self.final_length,
        }


def paper_constants(f1: int) -> PaperConstants:
    """Assemble the explicit constants for a given solvability parameter f1 >= 1."""
    if not isinstance(f1, int) or f1 < 1:
        raise ValueError(f"f1 must be a positive integer, got {f1!r}")
    dtilde_max = 5 ** 4
    u_max = 6 * 5 ** 8
    return PaperConstants(
        f1=f1,
        dtilde_max=dtilde_max,
        u_max=u_max,
        e_bound=SymbolicBound(coefficient=3, base=5, exponent=4 * u_max),
        final_length=max(3, f1 + 1) + 1,
    )
