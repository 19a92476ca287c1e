"""Graded quotient engine: slices, ideals, derived series, censuses."""

import pytest
from fractions import Fraction
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedlie.freelie import Generator, LieElement, bracket, left_normalized, witt_count
from gradedlie.linalg import IntEchelon
from gradedlie.quotient import (
    AMBIENT_COMMUTATOR,
    BudgetExceeded,
    ExplicitList,
    GradedPresentation,
    SelectSecond,
    SelectiveMetabelian,
    ZeroComponentKill,
    centralizer_census,
    derived_length,
    derived_series,
    ideal_generated,
    instantiate_relators,
    is_zero,
    presentation_from_json,
    presentation_to_json,
    reduce_mod_relations,
    relation_subspace,
    set_budget,
)
from gradedlie.quotient import _engine, _bracket_letter
from gradedlie.residues import Residue


def mk_gens(n, degs, names=None):
    names = names or [f"x{d}" for d in degs]
    return tuple(Generator(nm, Residue.of(d, n)) for nm, d in zip(names, degs))


def gen_elems(gens):
    return [LieElement.from_generator(gens, g.name) for g in gens]


G7 = mk_gens(7, [1, 2, 3])
X1, X2, X3 = gen_elems(G7)


class TestPresentation:
    def test_validation(self):
        with pytest.raises(ValueError, match="odd"):
            GradedPresentation(6, G7)
        with pytest.raises(ValueError, match="cutoff"):
            GradedPresentation(7, G7, cutoff=0)
        with pytest.raises(ValueError, match="nonzero"):
            GradedPresentation(7, mk_gens(7, [0, 1]), (ZeroComponentKill(),))

    def test_json_roundtrip(self):
        rel = ExplicitList((bracket(X1, X2),))
        p = GradedPresentation(7, G7, (SelectiveMetabelian(), ZeroComponentKill(), rel), 5)
        assert presentation_from_json(presentation_to_json(p)) == p

    def test_malformed_json(self):
        with pytest.raises(ValueError, match="malformed|unknown"):
            presentation_from_json({"modulus": 7})
        with pytest.raises(ValueError, match="unknown relator"):
            presentation_from_json(
                {"modulus": 7, "generators": [], "relator_families": [{"kind": "bogus"}],
                 "cutoff": 3}
            )


class TestRelationSubspace:
    def test_free_presentation_rank_zero(self):
        p = GradedPresentation(7, G7, (), cutoff=4)
        qc = relation_subspace(p, p.fine_degree({"x1": 1, "x2": 1}))
        assert qc.rank == 0
        assert qc.quotient_dimension == 1

    def test_zck_kills_zero_degree_component(self):
        g = mk_gens(3, [1, 2])
        p = GradedPresentation(3, g, (ZeroComponentKill(),), cutoff=4)
        qc = relation_subspace(p, p.fine_degree({"x1": 1, "x2": 1}))
        assert qc.quotient_dimension == 0 and qc.full

    def test_relator_reduces_to_zero(self):
        g = mk_gens(3, [1, 2])
        p = GradedPresentation(3, g, (ZeroComponentKill(),), cutoff=4)
        a, b = gen_elems(g)
        assert is_zero(p, bracket(a, b))
        assert reduce_mod_relations(p, bracket(a, b)).is_zero()

    def test_cutoff_exceeded_rejected(self):
        p = GradedPresentation(7, G7, (), cutoff=2)
        with pytest.raises(ValueError, match="cutoff"):
            relation_subspace(p, p.fine_degree({"x1": 2, "x2": 1}))
        with pytest.raises(ValueError, match="cutoff"):
            is_zero(p, left_normalized([X1, X2, X3]))

    def test_inhomogeneous_rejected(self):
        p = GradedPresentation(7, G7, (), cutoff=4)
        with pytest.raises(ValueError, match="homogeneous"):
            is_zero(p, X1 + bracket(X1, X2))

    def test_quotient_dimension_formula(self):
        p = GradedPresentation(7, G7, (SelectiveMetabelian(), ZeroComponentKill()), cutoff=5)
        fd = p.fine_degree({"x1": 2, "x2": 1, "x3": 1})
        qc = relation_subspace(p, fd)
        assert qc.quotient_dimension == len(qc.free_basis) - qc.rank
        assert len(qc.free_basis) == witt_count((2, 1, 1))


class TestInstantiateRelators:
    def test_zck_single_instance(self):
        g = mk_gens(3, [1, 2])
        p = GradedPresentation(3, g, (ZeroComponentKill(),), cutoff=4)
        rels = instantiate_relators(p, p.fine_degree({"x1": 1, "x2": 1}))
        assert len(rels) == 1
        assert str(rels[0]) == "(1)*[x1,x2]"

    def test_selective_includes_independent_quadruple(self):
        # (1,2,3,1) is (-1)-independent mod 11 (subset sums stay below 11),
        # so [[x1,x2],[x3,x1']] appears as a length-4 instance.  Mod 7 the
        # full sum is 1+2+3+1 = 7 = 0, the quadruple is dependent, and the
        # instance must be absent.
        g11 = mk_gens(11, [1, 2, 3])
        y1, y2, y3 = gen_elems(g11)
        p = GradedPresentation(11, g11, (SelectiveMetabelian(),), cutoff=5)
        rels = instantiate_relators(p, p.fine_degree({"x1": 2, "x2": 1, "x3": 1}))
        target = bracket(bracket(y1, y2), bracket(y3, y1))
        assert any(r == target or r == -target for r in rels)

        p7 = GradedPresentation(7, G7, (SelectiveMetabelian(),), cutoff=5)
        rels7 = instantiate_relators(p7, p7.fine_degree({"x1": 2, "x2": 1, "x3": 1}))
        target7 = bracket(bracket(X1, X2), bracket(X3, X1))
        assert all(r != target7 and r != -target7 for r in rels7)

    def test_selective_excludes_dependent_quadruples(self):
        # quadruples with a (d, -d) pair summing to zero never appear
        g = mk_gens(7, [1, 6])
        p2 = GradedPresentation(7, g, (SelectiveMetabelian(),), cutoff=4)
        rels = instantiate_relators(p2, p2.fine_degree({"x1": 2, "x6": 2}))
        assert rels == []  # any quadruple from degrees {1,6} contains 1+6 = 0

    def test_instances_are_homogeneous_and_vanish(self):
        p = GradedPresentation(7, G7, (SelectiveMetabelian(), ZeroComponentKill()), cutoff=5)
        fd = p.fine_degree({"x1": 2, "x2": 1, "x3": 1})
        for r in instantiate_relators(p, fd):
            assert r.is_homogeneous()
            assert is_zero(p, r)


class TestShortcutFreeCrossValidation:
    """Slice ranks via gather+propagation match a shortcut-free closure."""

    def independent_rank(self, p, key_counts):
        eng = _engine(p)
        key = eng.key_of(p.fine_degree(key_counts))
        rows_by_key = {}
        for k in sorted(eng.subkeys(key), key=lambda t: (sum(t), t)):
            rows_by_key[k] = list(eng.instance_rows(k, include_zck=True))
        for k in sorted(rows_by_key, key=lambda t: (sum(t), t)):
            for g in range(eng.m):
                child = tuple(c + (1 if i == g else 0) for i, c in enumerate(k))
                if any(a > b for a, b in zip(child, key)):
                    continue
                rows_by_key.setdefault(child, [])
                for r in rows_by_key[k]:
                    rows_by_key[child].append(_bracket_letter(r, g))
        ech = IntEchelon(pivot_order=eng.lyndon(key))
        for r in rows_by_key.get(key, []):
            ech.insert(r)
        return ech.rank

    @pytest.mark.parametrize(
        "counts",
        [
            {"b": 1, "c": 1, "e": 2},
            {"b": 2, "c": 1, "e": 2},
            {"b": 3, "c": 1, "e": 3},
            {"b": 2, "c": 2, "e": 2},
        ],
    )
    def test_lemma2_style_slices(self, counts):
        n, b, c = 11, 3, 2
        e = (1 - b) % n
        gg = mk_gens(n, [b, c, e], names=["b", "c", "e"])
        p = GradedPresentation(n, gg, (SelectiveMetabelian(), ZeroComponentKill()), 15)
        qc = relation_subspace(p, p.fine_degree(counts))
        assert qc.rank == self.independent_rank(p, counts)

    def test_propagation_flag_agrees(self):
        gg = mk_gens(7, [1, 2, 3])
        p1 = GradedPresentation(7, gg, (SelectSecond(), ZeroComponentKill()), 6)
        p2 = GradedPresentation(7, gg, (SelectSecond(), ZeroComponentKill()), 6)
        _engine(p2).propagate_fullness = False
        eng = _engine(p1)
        for key in eng.all_keys(6):
            fd = eng.fd_of(key)
            assert relation_subspace(p1, fd).rank == relation_subspace(p2, fd).rank


class TestCutoffStability:
    @given(st.integers(2, 4), st.integers(0, 2))
    @settings(max_examples=10, deadline=None)
    def test_is_zero_independent_of_cutoff(self, c1_extra, c2_extra):
        e = bracket(bracket(X1, X2), bracket(X3, X1))
        base = e.fine_degree().length
        p1 = GradedPresentation(7, G7, (SelectiveMetabelian(), ZeroComponentKill()), base + c1_extra - 2)
        p2 = GradedPresentation(7, G7, (SelectiveMetabelian(), ZeroComponentKill()), base + c2_extra)
        assert is_zero(p1, e) == is_zero(p2, e)

    def test_reduce_idempotent(self):
        p = GradedPresentation(7, G7, (SelectiveMetabelian(), ZeroComponentKill()), 5)
        e = left_normalized([X1, X2, X3, X1])
        r = reduce_mod_relations(p, e)
        if not r.is_zero():
            assert reduce_mod_relations(p, r) == r
        assert is_zero(p, e) == r.is_zero()


class TestDerivedSeries:
    def test_abelian_generator(self):
        p = GradedPresentation(7, mk_gens(7, [1]), (), cutoff=4)
        assert derived_length(p)[0] == 1

    def test_zero_algebra(self):
        p = GradedPresentation(7, (), (), cutoff=3)
        assert derived_length(p)[0] == 0

    def test_free_two_generators_cutoff_three(self):
        p = GradedPresentation(7, mk_gens(7, [1, 2]), (), cutoff=3)
        terms = derived_series(p, 2)
        assert terms[1].is_trivial()

    def test_free_two_generators_cutoff_seven(self):
        p = GradedPresentation(7, mk_gens(7, [1, 2]), (), cutoff=7)
        length, note = derived_length(p)
        assert length == 3
        assert note.vacuity_threshold == 3
        assert not note.informative

    def test_metabelian_quotient_informative(self):
        p = GradedPresentation(7, G7, (SelectSecond(), ZeroComponentKill()), cutoff=6)
        length, note = derived_length(p)
        assert length == 2
        assert note.vacuity_threshold == 3
        assert note.informative

    def test_nesting(self):
        p = GradedPresentation(7, mk_gens(7, [1, 2]), (), cutoff=6)
        terms = derived_series(p, 3)
        eng = _engine(p)
        for deeper, shallower in zip(terms[1:], terms):
            for key, ech in deeper._echelons.items():
                for row in ech.rows:
                    e = eng.row_to_element(row)
                    assert shallower.contains(e)

    def test_depth_validation(self):
        with pytest.raises(ValueError):
            derived_series(GradedPresentation(7, G7, (), cutoff=3), 0)


class TestIdeals:
    def test_empty_seeds(self):
        p = GradedPresentation(7, G7, (), cutoff=4)
        snap = ideal_generated(p, [])
        assert snap.is_trivial()
        assert snap.nontrivial_zn_degrees() == frozenset()

    def test_single_generator_seed_fills_support_components(self):
        p = GradedPresentation(7, G7, (), cutoff=3)
        snap = ideal_generated(p, [X1])
        dims = {tuple(sorted(dict(fd.counts).items())): d for fd, d in snap.dimensions().items()}
        # every component whose fine degree contains x1 is full, up to the cutoff
        eng = _engine(p)
        for key in eng.all_keys(3):
            if key[0] >= 1:
                expected = witt_count(key)
                fd = eng.fd_of(key)
                got = dims.get(tuple(sorted(dict(fd.counts).items())), 0)
                assert got == expected, (key, got, expected)

    def test_ideal_closed_under_generator_brackets(self):
        p = GradedPresentation(7, G7, (SelectiveMetabelian(),), cutoff=5)
        seed = bracket(bracket(X1, X2), bracket(X3, X1))
        snap = ideal_generated(p, [seed])
        eng = _engine(p)
        for key, ech in list(snap._echelons.items()):
            for row in ech.rows:
                e = eng.row_to_element(row)
                for x in (X1, X2, X3):
                    w = bracket(e, x)
                    if w.fine_degree() is not None and w.fine_degree().length <= 5:
                        assert snap.contains(w)

    def test_commutator_ambient_requires_length_two_seeds(self):
        p = GradedPresentation(7, G7, (), cutoff=5)
        with pytest.raises(ValueError, match=r"\[L,L\]"):
            ideal_generated(p, [X1], ambient=AMBIENT_COMMUTATOR)

    def test_seed_beyond_cutoff_rejected(self):
        p = GradedPresentation(7, G7, (), cutoff=2)
        with pytest.raises(ValueError, match="cutoff"):
            ideal_generated(p, [left_normalized([X1, X2, X3])])


class TestCentralizerCensus:
    def test_zero_ideal(self):
        p = GradedPresentation(7, G7, (), cutoff=4)
        nontrivial, noncentral = centralizer_census(p, ideal_generated(p, []))
        assert nontrivial == frozenset() and noncentral == frozenset()

    def test_abelian_presentation(self):
        g = mk_gens(7, [1, 2])
        a, b = gen_elems(g)
        rel = ExplicitList((bracket(a, b),))
        p = GradedPresentation(7, g, (rel,), cutoff=4)
        snap = ideal_generated(p, [a])
        nontrivial, noncentral = centralizer_census(p, snap)
        assert noncentral == frozenset()

    def test_lemma7_bound_on_free_example(self):
        p = GradedPresentation(7, G7, (), cutoff=4)
        snap = ideal_generated(p, [bracket(X1, X2)])
        nontrivial, noncentral = centralizer_census(p, snap)
        assert len(noncentral) <= len(nontrivial) ** 2


class TestGradingLaw:
    def test_bracket_lands_in_sum_degree(self):
        p = GradedPresentation(7, G7, (SelectiveMetabelian(), ZeroComponentKill()), cutoff=4)
        e1 = bracket(X1, X2)
        e2 = bracket(X1, X3)
        w = bracket(e1, e2)
        if not w.is_zero():
            assert w.fine_degree().zn_degree == (
                e1.fine_degree().zn_degree + e2.fine_degree().zn_degree
            )

    def test_zck_invariant_all_zero_degree_components_die(self):
        g = mk_gens(9, [1, 2, 4])
        p = GradedPresentation(9, g, (ZeroComponentKill(),), cutoff=5)
        eng = _engine(p)
        for key in eng.all_keys(5):
            if eng.zn(key) == 0:
                assert relation_subspace(p, eng.fd_of(key)).quotient_dimension == 0


class TestBudget:
    def test_budget_exceeded_raises(self):
        g = mk_gens(11, [1, 3, 9], names=["b", "c", "e"])
        p = GradedPresentation(11, g, (SelectiveMetabelian(), ZeroComponentKill()), 15)
        set_budget(p, -1.0)  # already expired
        with pytest.raises(BudgetExceeded):
            relation_subspace(p, p.fine_degree({"b": 7, "c": 1, "e": 7}))
        set_budget(p, None)
        qc = relation_subspace(p, p.fine_degree({"b": 7, "c": 1, "e": 7}))
        assert qc.full
