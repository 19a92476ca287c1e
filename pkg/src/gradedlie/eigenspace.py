"""Eigenspace decomposition of structure-constant Lie algebras.

Takes a finite-dimensional Lie algebra over a cyclotomic field together
with a grading automorphism phi of order n (and optionally an involution h
with h phi h^-1 = phi^-1), verifies the dihedral relations, decomposes the
algebra into the eigenspaces L_i = {x : phi(x) = omega^i x}, checks the
grading laws, and tests the fixed-point hypotheses and the resulting
selective metabelian condition.

This module is deliberately independent of the graded-quotient engine: the
metabelian test on the h-fixed subalgebra is a direct four-fold bracket
sweep over a basis, and all linear algebra is dense Gaussian elimination
over the cyclotomic field (dimensions here are desk-scale).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CyclotomicField, CyclotomicNumber
from .residues import IndexSequence, Residue, is_minus_one_dependent

Vector = tuple  # tuple of CyclotomicNumber
Matrix = tuple  # tuple of row Vectors


# ---------------------------------------------------------------------------
# dense linear algebra over the field


def mat_vec(m: Matrix, v: Vector):
    return tuple(
        _dot(row, v) for row in m
    )


def _dot(row, v):
    acc = None
    for a, b in zip(row, v):
        term = a * b
        acc = term if acc is None else acc + term
    return acc


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(_dot(row, col) for col in cols) for row in a)


def identity_matrix(field: CyclotomicField, d: int) -> Matrix:
    one, zero = field.one(), field.zero()
    return tuple(tuple(one if i == j else zero for j in range(d)) for i in range(d))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(a, b))


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(not (x - y) for r1, r2 in zip(a, b) for x, y in zip(r1, r2))


def mat_inverse(m: Matrix, field: CyclotomicField) -> Matrix:
    d = len(m)
    aug = [list(row) + list(idrow) for row, idrow in zip(m, identity_matrix(field, d))]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[d:]) for row in aug)


def kernel_basis(m: Matrix, field: CyclotomicField) -> list[Vector]:
    """Basis of {x : m x = 0} by reduced row echelon form."""
    if not m:
        return []
    d = len(m[0])
    rows = [list(r) for r in m]
    pivots: list[int] = []
    r = 0
    for col in range(d):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(d) if c not in pivots]
    zero, one = field.zero(), field.one()
    basis = []
    for fc in free:
        vec = [zero] * d
        vec[fc] = one
        for prow, pcol in zip(rows[: len(pivots)], pivots):
            vec[pcol] = -prow[fc]
        basis.append(tuple(vec))
    return basis


class _Span:
    """Incremental span of vectors over the field, for membership tests."""

    def __init__(self, field: CyclotomicField, d: int):
        self.field = field
        self.d = d
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, v: Sequence) -> bool:
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = v[p].inverse()
        self.rows.append([x * inv for x in v])
        self.pivots.append(p)
        return True

    def contains(self, v: Sequence) -> bool:
        return all(not x for x in self.reduce(v))

    @property
    def dim(self):
        return len(self.rows)


def span_of(field, d, vectors) -> _Span:
    s = _Span(field, d)
    for v in vectors:
        s.add(v)
    return s


# ---------------------------------------------------------------------------
# the algebra and automorphism carriers


class SCAlgebra:
    """Structure-constant Lie algebra over a cyclotomic field.

    brackets maps (i, j) with i < j to the coordinate vector of [e_i, e_j];
    antisymmetry is built in and the Jacobi identity is checked on
    construction (invalid tables are rejected, never repaired).
    """

    def __init__(self, field: CyclotomicField, labels: Sequence[str], brackets):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        table = {}
        for (i, j), vec in brackets.items():
            if not 0 <= i < self.dim and 0 <= j < self.dim:
                raise ValueError(f"bracket index ({i},{j}) out of range")
            if i == j:
                raise ValueError("diagonal brackets must be omitted (they vanish)")
            vec = tuple(field.element(c.coeffs) if isinstance(c, CyclotomicNumber) else field.rational(c) for c in vec)
            if len(vec) != self.dim:
                raise ValueError("bracket vector has wrong dimension")
            if i > j:
                i, j, vec = j, i, tuple(-c for c in vec)
            if (i, j) in table and not all(not (a - b) for a, b in zip(table[(i, j)], vec)):
                raise ValueError(f"conflicting entries for bracket ({i},{j})")
            table[(i, j)] = vec
        self.table = table
        self._zero_vec = tuple(field.zero() for _ in range(self.dim))
        self._check_jacobi()

    def basis_vector(self, i: int) -> Vector:
        return tuple(
            self.field.one() if k == i else self.field.zero() for k in range(self.dim)
        )

    def basis_bracket(self, i: int, j: int) -> Vector:
        if i == j:
            return self._zero_vec
        if i < j:
            return self.table.get((i, j), self._zero_vec)
        return tuple(-c for c in self.table.get((j, i), self._zero_vec))

    def bracket(self, x: Vector, y: Vector) -> Vector:
        out = list(self._zero_vec)
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b or i == j:
                    continue
                ab = a * b
                for k, c in enumerate(self.basis_bracket(i, j)):
                    if c:
                        out[k] = out[k] + ab * c
        return tuple(out)

    def _check_jacobi(self):
        for i in range(self.dim):
            ei = self.basis_vector(i)
            for j in range(i + 1, self.dim):
                ej = self.basis_vector(j)
                for k in range(j + 1, self.dim):
                    ek = self.basis_vector(k)
                    total = self.bracket(self.bracket(ei, ej), ek)
                    total = tuple(
                        a + b
                        for a, b in zip(total, self.bracket(self.bracket(ej, ek), ei))
                    )
                    total = tuple(
                        a + b
                        for a, b in zip(total, self.bracket(self.bracket(ek, ei), ej))
                    )
                    if any(total):
                        raise ValueError(
                            f"Jacobi identity fails on basis triple ({i},{j},{k})"
                        )


@dataclass(frozen=True)
class AutomorphismPair:
    """Matrices phi (order n) and optionally h (involution inverting phi)."""

    phi: Matrix
    h: Matrix | None
    order_n: int


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool | None  # None = skipped
    witness: str = ""


@dataclass(frozen=True)
class CheckSummary:
    checks: tuple[CheckItem, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def failures(self) -> list[CheckItem]:
        return [c for c in self.checks if c.passed is False]

    def to_json(self) -> list[dict]:
        return [
            {"check": c.name, "passed": c.passed, "witness": c.witness}
            for c in self.checks
        ]


def _is_bracket_preserving(alg: SCAlgebra, m: Matrix):
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            lhs = mat_vec(m, alg.basis_bracket(i, j))
            rhs = alg.bracket(
                mat_vec(m, alg.basis_vector(i)),
                mat_vec(m, alg.basis_vector(j)),
            )
            if any(a - b for a, b in zip(lhs, rhs)):
                return (i, j)
    return None


def verify_automorphism_pair(alg: SCAlgebra, aut: AutomorphismPair) -> CheckSummary:
    """Check both maps are Lie automorphisms and the dihedral relations hold."""
    n = aut.order_n
    d = alg.dim
    if len(aut.phi) != d or any(len(r) != d for r in aut.phi):
        raise ValueError(f"phi must be {d}x{d}")
    if aut.h is not None and (len(aut.h) != d or any(len(r) != d for r in aut.h)):
        raise ValueError(f"h must be {d}x{d}")
    checks = []
    wit = _is_bracket_preserving(alg, aut.phi)
    checks.append(
        CheckItem("phi preserves brackets", wit is None, "" if wit is None else f"basis pair {wit}")
    )
    ident = identity_matrix(alg.field, d)
    power = aut.phi
    order_ok = True
    witness = ""
    for k in range(1, n):
        if mat_eq(power, ident):
            order_ok = False
            witness = f"phi^{k} = identity with k = {k} < n"
            break
        power = mat_mul(power, aut.phi)
    if order_ok and not mat_eq(power, ident):
        order_ok = False
        witness = f"phi^{n} is not the identity"
    checks.append(CheckItem(f"phi has order exactly n = {n}", order_ok, witness))
    if aut.h is None:
        checks.append(CheckItem("h preserves brackets", None, "h not supplied"))
        checks.append(CheckItem("h^2 = identity", None, "h not supplied"))
        checks.append(CheckItem("h phi h^-1 = phi^-1", None, "h not supplied"))
        return CheckSummary(tuple(checks))
    wit = _is_bracket_preserving(alg, aut.h)
    checks.append(
        CheckItem("h preserves brackets", wit is None, "" if wit is None else f"basis pair {wit}")
    )
    invol = mat_eq(mat_mul(aut.h, aut.h), ident)
    checks.append(CheckItem("h^2 = identity", invol, "" if invol else "h^2 differs from identity"))
    try:
        conj = mat_mul(mat_mul(aut.h, aut.phi), mat_inverse(aut.h, alg.field))
        phi_inv = mat_inverse(aut.phi, alg.field)
        dihedral = mat_eq(conj, phi_inv)
        checks.append(
            CheckItem(
                "h phi h^-1 = phi^-1",
                dihedral,
                "" if dihedral else "conjugate of phi by h differs from phi^-1",
            )
        )
    except ValueError as exc:
        checks.append(CheckItem("h phi h^-1 = phi^-1", False, str(exc)))
    return CheckSummary(tuple(checks))


@dataclass(frozen=True)
class Grading:
    """Eigenspace components L_0 .. L_{n-1} of the grading automorphism."""

    field: CyclotomicField
    n: int
    components: tuple[tuple[Vector, ...], ...]
    algebra: SCAlgebra

    def dimension(self, i: int) -> int:
        return len(self.components[i % self.n])

    def nonzero_indices(self) -> list[int]:
        return [i for i in range(self.n) if self.components[i]]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "component_dimensions": [len(c) for c in self.components],
        }


def eigenspace_decomposition(alg: SCAlgebra, aut: AutomorphismPair) -> Grading:
    """Solve (phi - omega^i I) x = 0 per i; verify completeness and grading laws."""
    n = aut.order_n
    field = alg.field
    if field.n != n:
        raise ValueError("algebra field and automorphism order disagree")
    ident = identity_matrix(field, alg.dim)
    comps = []
    for i in range(n):
        scaled = tuple(tuple(x * field.omega(i) for x in row) for row in ident)
        comps.append(tuple(kernel_basis(mat_sub(aut.phi, scaled), field)))
    total = sum(len(c) for c in comps)
    if total != alg.dim:
        raise ArithmeticError(
            f"decomposition incomplete: eigenspace dimensions sum to {total} != {alg.dim}; "
            "phi is not a diagonalizable order-n map (internal inconsistency)"
        )
    grading = Grading(field, n, tuple(comps), alg)
    _assert_grading_closure(grading)
    if aut.h is not None:
        _assert_h_symmetry(grading, aut.h)
    return grading


def _assert_grading_closure(grading: Grading):
    alg = grading.algebra
    spans = [span_of(grading.field, alg.dim, comp) for comp in grading.components]
    for i, ci in enumerate(grading.components):
        for j, cj in enumerate(grading.components):
            target = spans[(i + j) % grading.n]
            for u in ci:
                for v in cj:
                    w = alg.bracket(u, v)
                    if any(w) and not target.contains(w):
                        raise ArithmeticError(
                            f"grading closure fails: [L_{i}, L_{j}] leaves L_{(i+j) % grading.n}"
                        )


def _assert_h_symmetry(grading: Grading, h: Matrix):
    spans = [span_of(grading.field, grading.algebra.dim, c) for c in grading.components]
    for i, comp in enumerate(grading.components):
        target = spans[(-i) % grading.n]
        if len(comp) != grading.dimension(-i):
            raise ArithmeticError(f"dim L_{i} != dim L_{-i % grading.n} under h-symmetry")
        for v in comp:
            if not target.contains(mat_vec(h, v)):
                raise ArithmeticError(f"h does not map L_{i} into L_{-i % grading.n}")


def fixed_subalgebra(alg: SCAlgebra, m: Matrix) -> list[Vector]:
    """Kernel of (m - I); asserted closed under the bracket."""
    ident = identity_matrix(alg.field, alg.dim)
    basis = kernel_basis(mat_sub(m, ident), alg.field)
    span = span_of(alg.field, alg.dim, basis)
    for u in basis:
        for v in basis:
            w = alg.bracket(u, v)
            if any(w) and not span.contains(w):
                raise ArithmeticError("fixed subspace is not closed under the bracket")
    return basis


def verify_hypotheses(alg: SCAlgebra, aut: AutomorphismPair) -> CheckSummary:
    """C_L(F) = 0 and C_L(H) metabelian, i.e. [[C,C],[C,C]] = 0 inside L."""
    checks = []
    fixed_phi = fixed_subalgebra(alg, aut.phi)
    checks.append(
        CheckItem(
            "fixed-point subalgebra of F is trivial",
            not fixed_phi,
            "" if not fixed_phi else f"fixed vector {_vec_str(alg, fixed_phi[0])}",
        )
    )
    if aut.h is None:
        checks.append(CheckItem("fixed-point subalgebra of H is metabelian", None, "h not supplied"))
        return CheckSummary(tuple(checks))
    c_basis = fixed_subalgebra(alg, aut.h)
    witness = ""
    ok = True
    derived = []
    for a in c_basis:
        for b in c_basis:
            w = alg.bracket(a, b)
            if any(w):
                derived.append(w)
    for i, u in enumerate(derived):
        for v in derived[i:]:
            w = alg.bracket(u, v)
            if any(w):
                ok = False
                witness = f"[[C,C],[C,C]] contains {_vec_str(alg, w)}"
                break
        if not ok:
            break
    checks.append(CheckItem("fixed-point subalgebra of H is metabelian", ok, witness))
    return CheckSummary(tuple(checks))


def verify_selective_condition(grading: Grading) -> CheckSummary:
    """[[x1,x2],[x3,x4]] = 0 over basis quadruples with (-1)-independent indices."""
    n = grading.n
    if n < 3 or n % 2 == 0:
        raise ValueError("the selective condition is defined for odd n >= 3")
    alg = grading.algebra
    nonzero = grading.nonzero_indices()
    checked = 0
    for i1 in nonzero:
        for i2 in nonzero:
            for i3 in nonzero:
                for i4 in nonzero:
                    if 0 in (i1, i2, i3, i4):
                        continue
                    seq = IndexSequence.of(n, [i1, i2, i3, i4])
                    if is_minus_one_dependent(seq):
                        continue
                    for x1 in grading.components[i1]:
                        for x2 in grading.components[i2]:
                            p = alg.bracket(x1, x2)
                            if not any(p):
                                continue
                            for x3 in grading.components[i3]:
                                for x4 in grading.components[i4]:
                                    q = alg.bracket(x3, x4)
                                    w = alg.bracket(p, q)
                                    checked += 1
                                    if any(w):
                                        return CheckSummary(
                                            (
                                                CheckItem(
                                                    "selective metabelian condition",
                                                    False,
                                                    f"indices ({i1},{i2},{i3},{i4}) give "
                                                    f"{_vec_str(alg, w)}",
                                                ),
                                            )
                                        )
    return CheckSummary(
        (
            CheckItem(
                "selective metabelian condition",
                True,
                f"{checked} independent basis quadruples checked",
            ),
        )
    )


def _vec_str(alg: SCAlgebra, v: Vector) -> str:
    parts = [f"({c})*{alg.labels[i]}" for i, c in enumerate(v) if c]
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# file format


def load_algebra(data: dict) -> tuple[SCAlgebra, AutomorphismPair]:
    """Parse the SCAlgebra JSON: dimension, labels, sparse triples, phi, h."""
    try:
        n = int(data["order_n"])
        dim = int(data["dimension"])
        labels = [str(x) for x in data["basis"]]
        if len(labels) != dim:
            raise ValueError(f"expected {dim} basis labels, got {len(labels)}")
        field = CyclotomicField(n)
        brackets: dict[tuple[int, int], list] = {}
        for entry in data.get("brackets", []):
            i, j, k, coeff = entry
            i, j, k = int(i), int(j), int(k)
            vec = brackets.setdefault(
                (i, j), [field.zero() for _ in range(dim)]
            )
            vec[k] = vec[k] + CyclotomicNumber.from_json(field, coeff)
        matrices = {}
        for name in ("phi", "h"):
            raw = data.get(name)
            if raw is None:
                matrices[name] = None
                continue
            if len(raw) != dim or any(len(r) != dim for r in raw):
                raise ValueError(f"{name} must be a {dim}x{dim} matrix")
            matrices[name] = tuple(
                tuple(CyclotomicNumber.from_json(field, c) for c in row) for row in raw
            )
        if matrices["phi"] is None:
            raise ValueError("phi matrix is required")
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed algebra JSON: {exc}") from exc
    alg = SCAlgebra(field, labels, brackets)
    return alg, AutomorphismPair(matrices["phi"], matrices["h"], n)


def algebra_to_json(alg: SCAlgebra, aut: AutomorphismPair) -> dict:
    brackets = []
    for (i, j), vec in sorted(alg.table.items()):
        for k, c in enumerate(vec):
            if c:
                brackets.append([i, j, k, c.to_json()])
    out = {
        "order_n": aut.order_n,
        "dimension": alg.dim,
        "basis": list(alg.labels),
        "brackets": brackets,
        "phi": [[c.to_json() for c in row] for row in aut.phi],
        "h": None if aut.h is None else [[c.to_json() for c in row] for row in aut.h],
    }
    return out
