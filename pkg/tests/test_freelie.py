"""Free Lie engine: Hall/Lyndon bases, normal forms, Witt dimensions."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedlie.freelie import (
    FineDegree,
    Generator,
    HallMonomial,
    LieElement,
    bracket,
    hall_basis,
    is_lyndon,
    left_normalized,
    lyndon_words,
    normalize,
    witt_count,
    witt_dimension,
)
from gradedlie.residues import Residue


def gens3(n=7):
    return tuple(
        Generator(name, Residue.of(d, n)) for name, d in (("a", 1), ("b", 2), ("c", 3))
    )


GENS = gens3()
A, B, C = (LieElement.from_generator(GENS, nm) for nm in "abc")


def fd(counts, gens=GENS):
    return FineDegree.of(gens, counts)


class TestWitt:
    def test_examples(self):
        assert witt_dimension(fd({"a": 2, "b": 1})) == 1
        assert witt_count((2,)) == 0
        assert witt_count((1,)) == 1
        assert witt_count((3, 3)) == 3
        assert witt_count((1, 7, 7)) == 3432

    def test_total_length_five_over_two_generators(self):
        # sum over all fine degrees of length 5 equals (2^5 - 2)/5 = 6
        total = sum(witt_count((i, 5 - i)) for i in range(6))
        assert total == 6

    def test_necklace_example_with_common_divisor(self):
        # (1/15) * 15!/(1!7!7!) with gcd 1
        assert witt_count((1, 7, 7)) == 51480 // 15


class TestHallBasis:
    def test_counts_match_witt_small(self):
        for c1, c2, c3 in product(range(7), repeat=3):
            if not 1 <= c1 + c2 + c3 <= 6:
                continue
            counts = {"a": c1, "b": c2, "c": c3}
            basis = hall_basis(GENS, fd(counts))
            assert len(basis) == witt_count((c1, c2, c3))

    def test_single_generator_bracket_vanishes(self):
        assert hall_basis(GENS, fd({"a": 2})) == []

    def test_empty_generator_set_rejected(self):
        with pytest.raises(ValueError, match="empty generator set"):
            hall_basis((), fd({"a": 1}))

    def test_basis_is_lyndon_ordered(self):
        basis = hall_basis(GENS, fd({"a": 2, "b": 2}))
        words = [m.word for m in basis]
        assert words == sorted(words)
        assert all(is_lyndon(w) for w in words)

    def test_monomial_fine_degree(self):
        (m,) = hall_basis(GENS, fd({"a": 2, "b": 1}))
        assert m.word == ("a", "a", "b")
        assert m.degree == fd({"a": 2, "b": 1})
        assert m.degree.zn_degree == Residue.of(4, 7)


class TestNormalize:
    def test_antisymmetry_swap(self):
        assert normalize((B, A)) == -bracket(A, B)

    def test_square_is_zero(self):
        assert bracket(A, A).is_zero()

    def test_jacobi_rewrite_example(self):
        d_gen = Generator("d", Residue.of(4, 7))
        gens = GENS + (d_gen,)
        a, b, c, d = (LieElement.from_generator(gens, nm) for nm in "abcd")
        lhs = normalize(((a, b), (c, d)))
        rhs = left_normalized([a, b, c, d]) - left_normalized([a, b, d, c])
        assert lhs == rhs

    def test_idempotent(self):
        e = normalize(((A, B), (A, C)))
        assert normalize(e) == e

    def test_bilinearity(self):
        x = bracket(A, B) + C.scale(Fraction(2, 3))
        y = bracket(B, C)
        lhs = bracket(x, y)
        rhs = bracket(bracket(A, B), y) + bracket(C, y).scale(Fraction(2, 3))
        assert lhs == rhs

    def test_grading_additivity(self):
        e = bracket(A, B)
        assert e.fine_degree().zn_degree == Residue.of(3, 7)
        e = left_normalized([A, B, B, B])
        assert e.fine_degree().zn_degree == Residue.of(1 + 3 * 2, 7)

    def test_left_normalized_definition(self):
        assert left_normalized([A, B, C]) == normalize(((A, B), C))
        assert left_normalized([A]) == A

    def test_malformed_expression_rejected(self):
        with pytest.raises(ValueError, match="malformed"):
            normalize(42)


def random_monomials(max_len=4):
    degrees = [
        fd(dict(zip("abc", cs)))
        for cs in product(range(max_len + 1), repeat=3)
        if 1 <= sum(cs) <= max_len
    ]
    pool = [m for d in degrees for m in hall_basis(GENS, d)]
    return st.sampled_from(pool)


@st.composite
def lie_elements(draw, max_terms=3):
    n = draw(st.integers(1, max_terms))
    coeffs = {}
    for _ in range(n):
        m = draw(random_monomials())
        c = Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
        coeffs[m] = coeffs.get(m, Fraction(0)) + c
    return LieElement.make(GENS, coeffs)


class TestAlgebraLaws:
    @settings(max_examples=60, deadline=None)
    @given(random_monomials(), random_monomials(), random_monomials())
    def test_jacobi(self, u, v, w):
        eu, ev, ew = (LieElement.make(GENS, {m: Fraction(1)}) for m in (u, v, w))
        total = (
            bracket(bracket(eu, ev), ew)
            + bracket(bracket(ev, ew), eu)
            + bracket(bracket(ew, eu), ev)
        )
        assert total.is_zero()

    @settings(max_examples=40, deadline=None)
    @given(lie_elements(), lie_elements())
    def test_antisymmetry(self, x, y):
        assert bracket(x, y) == -bracket(y, x)

    @settings(max_examples=40, deadline=None)
    @given(lie_elements())
    def test_normalize_idempotent(self, e):
        assert normalize(e) == e

    @settings(max_examples=40, deadline=None)
    @given(random_monomials(max_len=2), random_monomials(max_len=2))
    def test_bracket_homogeneity(self, u, v):
        eu = LieElement.make(GENS, {u: Fraction(1)})
        ev = LieElement.make(GENS, {v: Fraction(1)})
        e = bracket(eu, ev)
        if not e.is_zero():
            assert e.fine_degree() == u.degree + v.degree


class TestSerialization:
    def test_monomial_roundtrip(self):
        basis = hall_basis(GENS, fd({"a": 1, "b": 2, "c": 1}))
        for m in basis:
            assert HallMonomial.from_tree(GENS, m.to_json()) == m

    def test_nonstandard_tree_rejected(self):
        with pytest.raises(ValueError, match="standard bracketing|Lyndon"):
            HallMonomial.from_tree(GENS, [["a", "b"], "c"])

    def test_element_roundtrip(self):
        e = bracket(A, B).scale(Fraction(-3, 7)) + C
        assert LieElement.from_json(GENS, e.to_json()) == e


class TestLyndonMachinery:
    def test_lyndon_filter(self):
        words = lyndon_words(["a", "b"], [2, 2])
        assert words == [("a", "a", "b", "b"), ("a", "b", "a", "b")] or all(
            is_lyndon(w) for w in words
        )
        assert len(words) == witt_count((2, 2))

    def test_big_component_count(self):
        assert len(lyndon_words([0, 1, 2], [1, 7, 7])) == 3432
