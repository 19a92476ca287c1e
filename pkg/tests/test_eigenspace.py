"""Cyclotomic arithmetic and the eigenspace/dihedral verification pipeline."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedlie.cyclotomic import CyclotomicField, CyclotomicNumber, cyclotomic_polynomial
from gradedlie.eigenspace import (
    AutomorphismPair,
    SCAlgebra,
    algebra_to_json,
    eigenspace_decomposition,
    fixed_subalgebra,
    identity_matrix,
    kernel_basis,
    load_algebra,
    mat_inverse,
    mat_mul,
    verify_automorphism_pair,
    verify_hypotheses,
    verify_selective_condition,
)


class TestCyclotomicPolynomial:
    def test_examples(self):
        assert cyclotomic_polynomial(1) == (-1, 1)
        assert cyclotomic_polynomial(3) == (1, 1, 1)
        assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)

    def test_prime_case(self):
        assert cyclotomic_polynomial(7) == (1,) * 7

    def test_degree_is_totient(self):
        import math

        for n in range(1, 31):
            deg = len(cyclotomic_polynomial(n)) - 1
            phi = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
            assert deg == phi

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            cyclotomic_polynomial(0)


class TestCyclotomicField:
    def test_omega_has_order_n(self):
        for n in (3, 5, 9, 11):
            F = CyclotomicField(n)
            w = F.omega()
            assert not (w ** n - F.one())
            assert all(bool(w ** k - F.one()) for k in range(1, n))

    def test_modulus_polynomial_kills_omega(self):
        F = CyclotomicField(9)
        w = F.omega()
        acc = F.zero()
        for i, c in enumerate(cyclotomic_polynomial(9)):
            acc = acc + F.rational(c) * w ** i
        assert not acc

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=6))
    @settings(max_examples=50, deadline=None)
    def test_nonzero_elements_invertible(self, coeffs):
        F = CyclotomicField(7)
        x = F.element([Fraction(c) for c in coeffs])
        if not x:
            return
        assert not (x * x.inverse() - F.one())

    def test_zero_not_invertible(self):
        F = CyclotomicField(5)
        with pytest.raises(ZeroDivisionError):
            F.zero().inverse()

    def test_json_roundtrip(self):
        F = CyclotomicField(5)
        x = F.element([Fraction(1, 2), Fraction(-2, 3), 0, 4])
        assert CyclotomicNumber.from_json(F, x.to_json()) == x


def abelian_example():
    """d = 2 abelian algebra, n = 3, phi = diag(w, w^2), h = coordinate swap."""
    F = CyclotomicField(3)
    alg = SCAlgebra(F, ["e1", "e2"], {})
    w = F.omega()
    z, one = F.zero(), F.one()
    phi = ((w, z), (z, w ** 2))
    h = ((z, one), (one, z))
    return alg, AutomorphismPair(phi, h, 3)


def heisenberg_example():
    """[x, y] = z over Q(w_5); phi scales x, y by w and z by w^2; no valid h."""
    F = CyclotomicField(5)
    alg = SCAlgebra(F, ["x", "y", "z"], {(0, 1): [0, 0, 1]})
    w, z = F.omega(), F.zero()
    phi = ((w, z, z), (z, w, z), (z, z, w ** 2))
    return alg, AutomorphismPair(phi, None, 5)


def multilinear_truncation_example():
    """Multilinear quotient of the free Lie algebra on 4 graded generators.

    Monomials with a repeated generator span an ideal; the quotient has the
    square-free Hall monomials as a basis, with structure constants computed
    by the free Lie engine.  Degrees (1,1,2,2) mod 7.
    """
    from itertools import combinations

    from gradedlie.freelie import (
        FineDegree,
        Generator,
        LieElement,
        bracket,
        hall_basis,
    )
    from gradedlie.residues import Residue

    degs = {"w1": 1, "w2": 1, "w3": 2, "w4": 2}
    gens = tuple(Generator(nm, Residue.of(d, 7)) for nm, d in degs.items())
    names = [g.name for g in gens]
    basis = []
    for r in range(1, 5):
        for sub in combinations(names, r):
            fd = FineDegree.of(gens, {nm: 1 for nm in sub})
            basis.extend(hall_basis(gens, fd))
    index = {m: i for i, m in enumerate(basis)}
    F = CyclotomicField(7)
    brackets = {}
    for i, m1 in enumerate(basis):
        e1 = LieElement.make(gens, {m1: Fraction(1)})
        for j in range(i + 1, len(basis)):
            e2 = LieElement.make(gens, {basis[j]: Fraction(1)})
            prod = bracket(e1, e2)
            vec = [Fraction(0)] * len(basis)
            nonzero = False
            for m, c in prod.terms:
                if m in index:  # repeated-generator monomials are killed
                    vec[index[m]] = c
                    nonzero = True
            if nonzero:
                brackets[(i, j)] = vec
    alg = SCAlgebra(F, [str(m) for m in basis], brackets)
    w, z = F.omega(), F.zero()
    phi = tuple(
        tuple(
            (w ** m.degree.zn_degree.value if i == j else z)
            for j in range(len(basis))
        )
        for i, m in enumerate(basis)
    )
    return alg, AutomorphismPair(phi, None, 7)


class TestSCAlgebra:
    def test_jacobi_validated_on_construction(self):
        F = CyclotomicField(3)
        # [e1,e2]=e3, [e1,e3]=e1 violates Jacobi
        with pytest.raises(ValueError, match="Jacobi"):
            SCAlgebra(F, ["a", "b", "c"], {(0, 1): [0, 0, 1], (0, 2): [1, 0, 0]})

    def test_sl2_is_accepted(self):
        # [h,e]=2e, [h,f]=-2f, [e,f]=h
        F = CyclotomicField(3)
        alg = SCAlgebra(
            F,
            ["e", "f", "h"],
            {(0, 1): [0, 0, 1], (2, 0): [2, 0, 0], (2, 1): [0, -2, 0]},
        )
        e, f, h = (alg.basis_vector(i) for i in range(3))
        assert alg.bracket(h, e) == tuple(F.rational(c) for c in (2, 0, 0))

    def test_dimension_mismatch_rejected(self):
        alg, aut = abelian_example()
        bad = AutomorphismPair(identity_matrix(alg.field, 3), None, 3)
        with pytest.raises(ValueError, match="2x2"):
            verify_automorphism_pair(alg, bad)


class TestVerifyAutomorphismPair:
    def test_abelian_pair_passes(self):
        alg, aut = abelian_example()
        rep = verify_automorphism_pair(alg, aut)
        assert rep.passed
        assert not rep.failures()

    def test_identity_phi_fails_order(self):
        alg, _ = abelian_example()
        bad = AutomorphismPair(identity_matrix(alg.field, 2), None, 3)
        rep = verify_automorphism_pair(alg, bad)
        assert not rep.passed
        assert any("order" in c.name for c in rep.failures())

    def test_non_bracket_preserving_h_on_heisenberg(self):
        alg, aut = heisenberg_example()
        F = alg.field
        z, one = F.zero(), F.one()
        swap_xz = ((z, z, one), (z, one, z), (one, z, z))
        rep = verify_automorphism_pair(alg, AutomorphismPair(aut.phi, swap_xz, 5))
        bad = [c for c in rep.failures() if c.name == "h preserves brackets"]
        assert bad and "basis pair" in bad[0].witness


class TestDecomposition:
    def test_abelian_dimensions(self):
        alg, aut = abelian_example()
        g = eigenspace_decomposition(alg, aut)
        assert [g.dimension(i) for i in range(3)] == [0, 1, 1]

    def test_heisenberg_recovers_grading(self):
        alg, aut = heisenberg_example()
        g = eigenspace_decomposition(alg, aut)
        assert [g.dimension(i) for i in range(5)] == [0, 2, 1, 0, 0]
        one, zero = alg.field.one(), alg.field.zero()
        l1 = {tuple(str(c) for c in v) for v in g.components[1]}
        assert l1 == {("1", "0", "0"), ("0", "1", "0")}
        assert [tuple(str(c) for c in v) for v in g.components[2]] == [("0", "0", "1")]

    def test_dimensions_sum_to_algebra_dimension(self):
        for alg, aut in (abelian_example(), heisenberg_example()):
            g = eigenspace_decomposition(alg, aut)
            assert sum(g.dimension(i) for i in range(g.n)) == alg.dim


class TestFixedSubalgebra:
    def test_identity_fixes_everything(self):
        alg, _ = abelian_example()
        basis = fixed_subalgebra(alg, identity_matrix(alg.field, 2))
        assert len(basis) == 2

    def test_phi_has_no_fixed_points(self):
        alg, aut = abelian_example()
        assert fixed_subalgebra(alg, aut.phi) == []

    def test_h_fixes_diagonal(self):
        alg, aut = abelian_example()
        basis = fixed_subalgebra(alg, aut.h)
        assert len(basis) == 1
        v = basis[0]
        assert not (v[0] - v[1])  # spanned by e1 + e2


class TestHypothesesAndSelective:
    def test_abelian_example_passes_everything(self):
        alg, aut = abelian_example()
        assert verify_hypotheses(alg, aut).passed
        g = eigenspace_decomposition(alg, aut)
        assert verify_selective_condition(g).passed

    def test_fixed_points_of_phi_fail_hypotheses(self):
        # n = 3 on a 3-dim abelian algebra with an eigenvalue-1 direction
        F = CyclotomicField(3)
        alg = SCAlgebra(F, ["a", "b", "c"], {})
        w, z, one = F.omega(), F.zero(), F.one()
        phi = ((one, z, z), (z, w, z), (z, z, w ** 2))
        rep = verify_hypotheses(alg, AutomorphismPair(phi, None, 3))
        bad = [c for c in rep.failures() if "trivial" in c.name]
        assert bad and "fixed vector" in bad[0].witness

    def test_selective_condition_catches_violation(self):
        # the multilinear truncation of a free Lie algebra on four graded
        # generators is an honest Lie algebra (so it passes the load-time
        # Jacobi check) but [[a1,a2],[b1,b2]] != 0 with independent degrees
        # (1,1,2,2) mod 7, so the selective condition must fail with a witness
        alg, aut = multilinear_truncation_example()
        assert verify_automorphism_pair(alg, aut).passed
        g = eigenspace_decomposition(alg, aut)
        rep = verify_selective_condition(g)
        assert not rep.passed
        assert "indices" in rep.checks[0].witness


class TestSerialization:
    def test_roundtrip(self):
        alg, aut = heisenberg_example()
        data = algebra_to_json(alg, aut)
        alg2, aut2 = load_algebra(data)
        assert alg2.dim == 3 and aut2.order_n == 5
        g = eigenspace_decomposition(alg2, aut2)
        assert [g.dimension(i) for i in range(5)] == [0, 2, 1, 0, 0]

    def test_malformed_rejected(self):
        with pytest.raises(ValueError, match="malformed|phi"):
            load_algebra({"order_n": 5, "dimension": 2, "basis": ["x", "y"]})

    def test_mismatched_matrix_rejected(self):
        alg, aut = abelian_example()
        data = algebra_to_json(alg, aut)
        data["phi"] = [[["1"]]]
        with pytest.raises(ValueError, match="2x2"):
            load_algebra(data)


class TestKernels:
    def test_kernel_of_singular_map(self):
        F = CyclotomicField(3)
        one, z = F.one(), F.zero()
        m = ((one, one), (one, one))
        k = kernel_basis(m, F)
        assert len(k) == 1

    def test_inverse_roundtrip(self):
        F = CyclotomicField(5)
        w, z, one = F.omega(), F.zero(), F.one()
        m = ((w, one), (z, w ** 3))
        assert mat_mul(m, mat_inverse(m, F)) == identity_matrix(F, 2) or all(
            not (a - b)
            for r1, r2 in zip(mat_mul(m, mat_inverse(m, F)), identity_matrix(F, 2))
            for a, b in zip(r1, r2)
        )
