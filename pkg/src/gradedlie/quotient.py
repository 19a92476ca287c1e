"""Finitely presented (Z/nZ)-graded Lie algebras as truncated quotients.

A GradedPresentation fixes graded generators, relator families and a length
cutoff; the engine computes, per fine degree, the slice of the two-sided
relation ideal, quotient component bases, homogeneous ideals generated by
seeds, derived series, and centralizer censuses.  All relator families are
length-homogeneous, so the relation ideal splits by fine degree and any
result for an element of length l is independent of the cutoff as long as
the cutoff is >= l.

Internally an element is its associative expansion: a sparse dict from
words (tuples of generator indices) to exact integers.  The bracket is the
commutator of word polynomials.  Row reduction pivots only on Lyndon words:
the Lyndon coefficients of an expansion are a faithful (triangular
unipotent w.r.t. the Hall basis) coordinate system for the Lie component,
so ranks, memberships and zero tests agree with Hall coordinates while rows
never need straightening.

A relation slice is marked "full" (the whole component) when the component
dimension is 0, when ZeroComponentKill applies, when elimination reaches
full rank, or when every parent slice one generator below is full - every
length->=2 component is spanned by simple products split by their last
letter, so fullness propagates upward exactly.
"""

from __future__ import annotations

import heapq
import itertools
import math
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .freelie import (
    FineDegree,
    Generator,
    HallMonomial,
    LieElement,
    check_generators,
    expand_tree,
    lyndon_words,
    reduce_to_lyndon_basis,
    standard_tree,
    witt_count,
)
from .linalg import IntEchelon
from .residues import IndexSequence, Residue, is_minus_one_dependent

AMBIENT_FULL = "L"
AMBIENT_COMMUTATOR = "[L,L]"


class BudgetExceeded(Exception):
    """Raised when a computation overruns its wall-clock budget."""

    def __init__(self, stage: str, statistics: dict | None = None):
        super().__init__(f"budget exceeded during {stage}")
        self.stage = stage
        self.statistics = statistics or {}


# ---------------------------------------------------------------------------
# relator families and presentations


@dataclass(frozen=True)
class ZeroComponentKill:
    """Kill every monomial of Z/nZ-degree 0 (the L_0 = 0 hypothesis)."""

    kind = "zero_component_kill"


@dataclass(frozen=True)
class SelectiveMetabelian:
    """[[x_{d1},x_{d2}],[x_{d3},x_{d4}]] whenever (d1,d2,d3,d4) is (-1)-independent."""

    kind = "selective_metabelian"


@dataclass(frozen=True)
class SelectSecond:
    """[[x_{d1},x_{d2}],[x_{d3},x]] whenever (d1,d2,d3) is (-1)-independent, x free."""

    kind = "select_second"


@dataclass(frozen=True)
class ExplicitList:
    """User-supplied homogeneous relators."""

    elements: tuple[LieElement, ...]
    kind = "explicit_list"

    def __post_init__(self):
        for e in self.elements:
            if not e.is_homogeneous() or e.is_zero():
                raise ValueError("explicit relators must be nonzero and fine-degree homogeneous")


RELATOR_KINDS = {
    "zero_component_kill": ZeroComponentKill,
    "selective_metabelian": SelectiveMetabelian,
    "select_second": SelectSecond,
    "explicit_list": ExplicitList,
}


@dataclass(frozen=True)
class GradedPresentation:
    """A truncated presentation: modulus, graded generators, relators, cutoff."""

    modulus: int
    generators: tuple[Generator, ...]
    relator_families: tuple = ()
    cutoff: int = 6

    def __post_init__(self):
        if self.modulus < 3 or self.modulus % 2 == 0:
            raise ValueError(f"modulus must be odd and >= 3, got {self.modulus} "
                             "(2 does not divide n)")
        if self.cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        gens = tuple(sorted(self.generators, key=lambda g: g.name))
        if gens:
            gens = check_generators(gens)
            if any(g.degree.modulus != self.modulus for g in gens):
                raise ValueError("generator degrees must live mod the presentation modulus")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relator_families", tuple(self.relator_families))
        has_zck = any(isinstance(f, ZeroComponentKill) for f in self.relator_families)
        if has_zck and any(g.degree.is_zero() for g in gens):
            raise ValueError("ZeroComponentKill requires all generator degrees nonzero")
        for f in self.relator_families:
            if isinstance(f, ExplicitList):
                for e in f.elements:
                    if e.generators != gens:
                        raise ValueError("explicit relators must use the presentation's generators")

    def fine_degree(self, counts: Mapping[str, int]) -> FineDegree:
        return FineDegree.of(self.generators, counts)


def presentation_to_json(p: GradedPresentation) -> dict:
    fams = []
    for f in p.relator_families:
        entry: dict = {"kind": f.kind}
        if isinstance(f, ExplicitList):
            entry["elements"] = [e.to_json() for e in f.elements]
        fams.append(entry)
    return {
        "modulus": p.modulus,
        "generators": [{"name": g.name, "degree": g.degree.value} for g in p.generators],
        "relator_families": fams,
        "cutoff": p.cutoff,
    }


def presentation_from_json(data: Mapping) -> GradedPresentation:
    try:
        n = int(data["modulus"])
        cutoff = int(data["cutoff"])
        gens = tuple(
            Generator(str(g["name"]), Residue.of(int(g["degree"]), n))
            for g in data["generators"]
        )
        fams = []
        for f in data.get("relator_families", []):
            kind = f["kind"]
            if kind not in RELATOR_KINDS:
                raise ValueError(f"unknown relator family kind {kind!r}")
            if kind == "explicit_list":
                elems = tuple(LieElement.from_json(gens, e) for e in f["elements"])
                fams.append(ExplicitList(elems))
            else:
                fams.append(RELATOR_KINDS[kind]())
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed presentation JSON: {exc}") from exc
    return GradedPresentation(n, gens, tuple(fams), cutoff)


# ---------------------------------------------------------------------------
# word-polynomial helpers (words are tuples of generator indices)


def _commutator(p: dict, q: dict) -> dict:
    out: dict = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            c = c1 * c2
            w = w1 + w2
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
            w = w2 + w1
            v = out.get(w, 0) - c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def _bracket_letter(row: dict, g: int) -> dict:
    out: dict = {}
    tail = (g,)
    for w, c in row.items():
        k = w + tail
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
        k = tail + w
        v = out.get(k, 0) - c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


@dataclass
class _Slice:
    key: tuple
    witt: int
    full: bool
    echelon: IntEchelon | None  # None iff full

    @property
    def rank(self) -> int:
        return self.witt if self.full else self.echelon.rank

    @property
    def quotient_dimension(self) -> int:
        return self.witt - self.rank


class _Engine:
    """Per-presentation computation cache; safe for concurrent fine-degree requests."""

    def __init__(self, p: GradedPresentation):
        self.p = p
        self.n = p.modulus
        self.names = tuple(g.name for g in p.generators)
        self.degs = tuple(g.degree.value for g in p.generators)
        self.m = len(self.names)
        self.lock = threading.RLock()
        self.deadline: float | None = None
        self.propagate_fullness = True  # tests may disable to force brute elimination
        self._slices: dict[tuple, _Slice] = {}
        self._reps: dict[tuple, list[dict]] = {}
        self._lyndon: dict[tuple, list] = {}
        self._expand_cache: dict = {}
        self._expand_budget = 4_000_000
        self._indep_cache: dict[tuple, bool] = {}
        self.counters = {"rows_inserted": 0, "rows_seen": 0, "slices": 0}

    # -- basics ------------------------------------------------------------

    def check_deadline(self, stage: str):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(stage, dict(self.counters))

    def key_of(self, fd: FineDegree) -> tuple:
        counts = dict(fd.counts)
        unknown = set(counts) - set(self.names)
        if unknown:
            raise ValueError(f"fine degree uses unknown generators {sorted(unknown)}")
        return tuple(counts.get(nm, 0) for nm in self.names)

    def fd_of(self, key: tuple) -> FineDegree:
        return FineDegree.of(self.p.generators, dict(zip(self.names, key)))

    def zn(self, key: tuple) -> int:
        return sum(c * d for c, d in zip(key, self.degs)) % self.n

    def lyndon(self, key: tuple) -> list:
        words = self._lyndon.get(key)
        if words is None:
            words = lyndon_words(range(self.m), key)
            self._lyndon[key] = words
        return words

    def expand_word(self, w: tuple) -> dict:
        tree = standard_tree(w)
        if tree in self._expand_cache:
            return self._expand_cache[tree]
        use_cache = self._expand_budget > 0
        poly = expand_tree(tree, self._expand_cache if use_cache else None)
        if use_cache:
            self._expand_budget -= len(poly)
        return poly

    def independent(self, degs: tuple) -> bool:
        skey = tuple(sorted(degs))
        hit = self._indep_cache.get(skey)
        if hit is None:
            hit = not is_minus_one_dependent(IndexSequence.of(self.n, skey))
            self._indep_cache[skey] = hit
        return hit

    def subkeys(self, key: tuple, min_len=1) -> list:
        out = []
        for tup in itertools.product(*(range(c + 1) for c in key)):
            if min_len <= sum(tup):
                out.append(tup)
        return out

    def all_keys(self, max_len: int) -> list:
        out = []
        for tup in itertools.product(*(range(min(max_len, 15) + 1) for _ in range(self.m))):
            if 1 <= sum(tup) <= max_len:
                out.append(tup)
        return sorted(out, key=lambda k: (sum(k), k))

    def element_row(self, e: LieElement) -> tuple[tuple, dict]:
        """Fine-degree key and integer word row of a homogeneous element."""
        if e.generators != self.p.generators:
            raise ValueError("element lives over a different generating set")
        fd = e.fine_degree()
        if fd is None:
            raise ValueError("element must be nonzero and fine-degree homogeneous; split it first")
        idx = {nm: i for i, nm in enumerate(self.names)}
        poly: dict = {}
        for w, c in e.expansion().items():
            poly[tuple(idx[nm] for nm in w)] = c
        den = math.lcm(*(c.denominator for c in poly.values()))
        return self.key_of(fd), {w: int(c * den) for w, c in poly.items()}

    def row_to_element(self, row: Mapping) -> LieElement:
        named = {tuple(self.names[i] for i in w): Fraction(c) for w, c in row.items()}
        coords = reduce_to_lyndon_basis(named)
        coeffs = {
            HallMonomial.from_word(self.p.generators, w): c for w, c in coords.items()
        }
        return LieElement.make(self.p.generators, coeffs)

    # -- relator instances ---------------------------------------------------

    def _pair_items(self, k: tuple):
        """Canonical bracket pairs [m1, m2] of total fine degree k.

        Yields (tag, degree_pair, word_poly) with tag usable for cross-pair
        canonicalization; covers each unordered pair once (sign is immaterial
        for row spans).
        """
        for fd1 in self.subkeys(k):
            fd2 = tuple(a - b for a, b in zip(k, fd1))
            if sum(fd2) < 1 or fd1 > fd2:
                continue
            words1 = self.lyndon(fd1)
            words2 = self.lyndon(fd2)
            if not words1 or not words2:
                continue
            d1, d2 = self.zn(fd1), self.zn(fd2)
            for m1 in words1:
                e1 = self.expand_word(m1)
                for m2 in words2:
                    if fd1 == fd2 and m1 >= m2:
                        continue
                    yield (fd1, m1, fd2, m2), (d1, d2), _commutator(e1, self.expand_word(m2))

    def _count_pairs(self, k: tuple) -> int:
        total = 0
        for fd1 in self.subkeys(k):
            fd2 = tuple(a - b for a, b in zip(k, fd1))
            if sum(fd2) < 1 or fd1 > fd2:
                continue
            w1, w2 = witt_count(fd1) if any(fd1) else 0, witt_count(fd2) if any(fd2) else 0
            if fd1 == fd2:
                total += w1 * (w1 - 1) // 2
            else:
                total += w1 * w2
        return total

    def selective_metabelian_rows(self, key: tuple):
        """Instances [[m1,m2],[m3,m4]] at exactly this fine degree, deduped."""
        if sum(key) < 4:
            return
        seen_halves = set()
        for k12 in self.subkeys(key, min_len=2):
            k34 = tuple(a - b for a, b in zip(key, k12))
            if sum(k34) < 2 or k12 > k34 or (k34, k12) in seen_halves:
                continue
            seen_halves.add((k12, k34))
            same = k12 == k34
            if self._count_pairs(k12) <= self._count_pairs(k34) or same:
                stored_key, lazy_key = k12, k34
            else:
                stored_key, lazy_key = k34, k12
            stored = list(self._pair_items(stored_key))
            count = 0
            for tag_q, degs_q, q in self._pair_items(lazy_key):
                for tag_p, degs_p, ppoly in stored:
                    if same and tag_p >= tag_q:
                        continue
                    if not self.independent(degs_p + degs_q):
                        continue
                    row = _commutator(ppoly, q)
                    if row:
                        yield row
                    count += 1
                    if count % 512 == 0:
                        self.check_deadline("relator instantiation")

    def select_second_rows(self, key: tuple):
        """Instances [[m1,m2],[m3,m4]] with (d1,d2,d3) independent, slot 4 free."""
        if sum(key) < 4:
            return
        count = 0
        for k12 in self.subkeys(key, min_len=2):
            rest = tuple(a - b for a, b in zip(key, k12))
            if sum(rest) < 2:
                continue
            pairs = list(self._pair_items(k12))
            if not pairs:
                continue
            for fd3 in self.subkeys(rest):
                fd4 = tuple(a - b for a, b in zip(rest, fd3))
                if sum(fd4) < 1:
                    continue
                words3, words4 = self.lyndon(fd3), self.lyndon(fd4)
                if not words3 or not words4:
                    continue
                d3 = self.zn(fd3)
                for _, (d1, d2), ppoly in pairs:
                    if not self.independent((d1, d2, d3)):
                        continue
                    for m3 in words3:
                        e3 = self.expand_word(m3)
                        for m4 in words4:
                            if fd3 == fd4 and m3 == m4:
                                continue
                            row = _commutator(ppoly, _commutator(e3, self.expand_word(m4)))
                            if row:
                                yield row
                            count += 1
                            if count % 512 == 0:
                                self.check_deadline("relator instantiation")

    def explicit_rows(self, fam: ExplicitList, key: tuple):
        for e in fam.elements:
            ekey, row = self.element_row(e)
            if ekey == key:
                yield row

    def zck_rows(self, key: tuple):
        if self.zn(key) == 0:
            for w in self.lyndon(key):
                yield dict(self.expand_word(w))

    def instance_rows(self, key: tuple, include_zck=True):
        for fam in self.p.relator_families:
            if isinstance(fam, ZeroComponentKill):
                if include_zck:
                    yield from self.zck_rows(key)
            elif isinstance(fam, SelectiveMetabelian):
                yield from self.selective_metabelian_rows(key)
            elif isinstance(fam, SelectSecond):
                yield from self.select_second_rows(key)
            elif isinstance(fam, ExplicitList):
                yield from self.explicit_rows(fam, key)

    # -- relation slices -----------------------------------------------------

    def slice(self, key: tuple) -> _Slice:
        with self.lock:
            hit = self._slices.get(key)
            if hit is not None:
                return hit
            self.check_deadline("relation slice")
            wd = witt_count(key)
            has_zck = any(isinstance(f, ZeroComponentKill) for f in self.p.relator_families)
            if wd == 0 or (has_zck and self.zn(key) == 0):
                sl = _Slice(key, wd, True, None)
                self._slices[key] = sl
                self.counters["slices"] += 1
                return sl
            parents = (
                [
                    (g, tuple(c - (1 if i == g else 0) for i, c in enumerate(key)))
                    for g in range(self.m)
                    if key[g] > 0
                ]
                if sum(key) >= 2
                else []
            )
            if (
                parents
                and self.propagate_fullness
                and all(self.slice(pk).full for _, pk in parents)
            ):
                sl = _Slice(key, wd, True, None)
                self._slices[key] = sl
                self.counters["slices"] += 1
                return sl
            rows: list[dict] = []
            for g, pk in parents:
                ps = self.slice(pk)
                if ps.full:
                    for w in self.lyndon(pk):
                        rows.append(_bracket_letter(self.expand_word(w), g))
                else:
                    for r in ps.echelon.rows:
                        rows.append(_bracket_letter(r, g))
            ech = IntEchelon(pivot_order=self.lyndon(key))
            rows.sort(key=len)
            seen = 0
            for row in rows:
                self.counters["rows_seen"] += 1
                if ech.insert(row) is not None:
                    self.counters["rows_inserted"] += 1
                seen += 1
                if seen % 128 == 0:
                    self.check_deadline("relation slice")
            for row in self.instance_rows(key, include_zck=False):
                self.counters["rows_seen"] += 1
                if ech.insert(row) is not None:
                    self.counters["rows_inserted"] += 1
                seen += 1
                if seen % 128 == 0:
                    self.check_deadline("relation slice")
            sl = _Slice(key, wd, ech.rank == wd, None if ech.rank == wd else ech)
            self._slices[key] = sl
            self.counters["slices"] += 1
            return sl

    def reduce_row(self, key: tuple, row: dict) -> dict:
        sl = self.slice(key)
        if sl.full:
            return {}
        return sl.echelon.reduce(row)

    def row_is_zero(self, key: tuple, row: dict) -> bool:
        if not row:
            return True
        sl = self.slice(key)
        if sl.full:
            return True
        residual = sl.echelon.reduce(row)
        if not residual:
            return True
        if sl.echelon.leading_column(residual) is None:
            raise AssertionError(
                f"non-Lie residual at fine degree {key}; expansion invariant broken"
            )
        return False

    def component_reps(self, key: tuple) -> list[dict]:
        with self.lock:
            hit = self._reps.get(key)
            if hit is not None:
                return hit
            sl = self.slice(key)
            reps: list[dict] = []
            if not sl.full:
                ech = IntEchelon(pivot_order=self.lyndon(key))
                for w in self.lyndon(key):
                    row = sl.echelon.reduce(self.expand_word(w))
                    if row and ech.insert(row) is not None:
                        reps.append(ech.rows[-1])
                assert len(reps) == sl.quotient_dimension
            self._reps[key] = reps
            return reps


@lru_cache(maxsize=128)
def _engine(p: GradedPresentation) -> _Engine:
    return _Engine(p)


# ---------------------------------------------------------------------------
# public operations


@dataclass(frozen=True)
class QuotientComponent:
    """One fine-degree slice of the quotient.

    relation_rows are a row-reduced exact basis of the relation subspace in
    Lyndon-word coordinates: row[w] is the coefficient of the expansion on
    the Lyndon word w, a faithful triangular image of Hall coordinates (the
    basis monomial of w is free_basis at the same index).
    """

    key: FineDegree
    free_basis: tuple[HallMonomial, ...]
    relation_rows: tuple
    rank: int
    quotient_dimension: int
    full: bool


def relation_subspace(p: GradedPresentation, key: FineDegree) -> QuotientComponent:
    """Row-reduced relation-ideal slice at a fine degree (length <= cutoff)."""
    eng = _engine(p)
    k = eng.key_of(key)
    if sum(k) > p.cutoff:
        raise ValueError(f"fine degree length {sum(k)} exceeds cutoff {p.cutoff}")
    sl = eng.slice(k)
    basis = tuple(
        HallMonomial.from_word(p.generators, tuple(eng.names[i] for i in w))
        for w in eng.lyndon(k)
    )
    if sl.full:
        rows = tuple({m.word: 1} for m in basis)
    else:
        lyn = set(eng.lyndon(k))
        rows = tuple(
            {
                tuple(eng.names[i] for i in w): c
                for w, c in r.items()
                if w in lyn
            }
            for r in sl.echelon.rows
        )
    return QuotientComponent(
        key=key,
        free_basis=basis,
        relation_rows=rows,
        rank=sl.rank,
        quotient_dimension=sl.quotient_dimension,
        full=sl.full,
    )


def instantiate_relators(p: GradedPresentation, key: FineDegree) -> list[LieElement]:
    """All relator instances of fine degree componentwise <= key, normalized.

    Slots range over Hall-basis monomials of the required degrees, which
    spans all homogeneous slot values by multilinearity of the bracket.
    """
    eng = _engine(p)
    kmax = eng.key_of(key)
    if sum(kmax) > p.cutoff:
        raise ValueError(f"fine degree length {sum(kmax)} exceeds cutoff {p.cutoff}")
    out = []
    for k in sorted(eng.subkeys(kmax), key=lambda t: (sum(t), t)):
        for row in eng.instance_rows(k, include_zck=True):
            e = eng.row_to_element(row)
            if not e.is_zero():
                out.append(e)
    return out


def reduce_mod_relations(p: GradedPresentation, e: LieElement) -> LieElement:
    """Canonical representative of a homogeneous element modulo the relation ideal."""
    eng = _engine(p)
    key, row = eng.element_row(e)
    if sum(key) > p.cutoff:
        raise ValueError(f"element length {sum(key)} exceeds cutoff {p.cutoff}")
    return eng.row_to_element(eng.reduce_row(key, row))


def is_zero(p: GradedPresentation, e: LieElement) -> bool:
    """Exact membership of a homogeneous element in the relation ideal."""
    if e.is_zero():
        return True
    eng = _engine(p)
    key, row = eng.element_row(e)
    if sum(key) > p.cutoff:
        raise ValueError(f"element length {sum(key)} exceeds cutoff {p.cutoff}")
    return eng.row_is_zero(key, row)


@dataclass
class IdealSnapshot:
    """Per-fine-degree bases of a homogeneous ideal inside the quotient.

    ambient records which algebra the snapshot is an ideal of (L itself or
    M = [L,L]); censuses quantify over the components of that ambient.
    """

    presentation: GradedPresentation
    seed_description: str
    ambient: str = AMBIENT_FULL
    _echelons: dict = field(default_factory=dict, repr=False)  # key -> IntEchelon

    def dimensions(self) -> dict[FineDegree, int]:
        eng = _engine(self.presentation)
        return {
            eng.fd_of(k): ech.rank
            for k, ech in sorted(self._echelons.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            if ech.rank
        }

    def nontrivial_zn_degrees(self) -> frozenset[Residue]:
        eng = _engine(self.presentation)
        return frozenset(
            Residue(eng.zn(k), self.presentation.modulus)
            for k, ech in self._echelons.items()
            if ech.rank
        )

    def is_trivial(self) -> bool:
        return all(ech.rank == 0 for ech in self._echelons.values())

    def total_dimension(self) -> int:
        return sum(ech.rank for ech in self._echelons.values())

    def contains(self, e: LieElement) -> bool:
        """Membership of a homogeneous element, modulo the relation ideal."""
        eng = _engine(self.presentation)
        key, row = eng.element_row(e)
        row = eng.reduce_row(key, row)
        if not row:
            return True
        ech = self._echelons.get(key)
        return ech is not None and ech.contains(row)

    def to_json(self) -> dict:
        eng = _engine(self.presentation)
        dims = {
            str(fd): d for fd, d in self.dimensions().items()
        }
        return {
            "seeds": self.seed_description,
            "dimensions": dims,
            "nontrivial_zn_degrees": sorted(r.value for r in self.nontrivial_zn_degrees()),
        }


def _snapshot_insert(eng: _Engine, snap: IdealSnapshot, key: tuple, row: dict) -> bool:
    row = eng.reduce_row(key, row)
    if not row:
        return False
    ech = snap._echelons.get(key)
    if ech is None:
        ech = snap._echelons[key] = IntEchelon(pivot_order=eng.lyndon(key))
    return ech.insert(row) is not None


def ideal_generated(
    p: GradedPresentation,
    seeds: Sequence[LieElement],
    ambient: str = AMBIENT_FULL,
    description: str | None = None,
) -> IdealSnapshot:
    """Smallest ideal of the ambient algebra (L, or M = [L,L]) containing the seeds.

    Closure brackets with single generators (ambient L) or with length->=2
    basis monomials (ambient [L,L]); both suffice by the Jacobi identity.
    """
    if ambient not in (AMBIENT_FULL, AMBIENT_COMMUTATOR):
        raise ValueError(f"ambient must be '{AMBIENT_FULL}' or '{AMBIENT_COMMUTATOR}'")
    eng = _engine(p)
    snap = IdealSnapshot(
        p, description or f"{len(seeds)} explicit seeds, ambient {ambient}", ambient
    )
    heap: list[tuple] = []
    queued = set()

    def push(key, row):
        if _snapshot_insert(eng, snap, key, row):
            item = (sum(key), key)
            if item not in queued:
                queued.add(item)
                heapq.heappush(heap, item)

    for e in seeds:
        key, row = eng.element_row(e)
        if sum(key) > p.cutoff:
            raise ValueError("seed length exceeds cutoff")
        if ambient == AMBIENT_COMMUTATOR and sum(key) < 2:
            raise ValueError("seeds must lie in [L,L] when the ambient is [L,L]")
        push(key, row)

    processed = set()
    while heap:
        _, key = heapq.heappop(heap)
        if key in processed:
            continue
        processed.add(key)
        eng.check_deadline("ideal closure")
        rows = list(snap._echelons[key].rows)
        if ambient == AMBIENT_FULL:
            for g in range(eng.m):
                child = tuple(c + (1 if i == g else 0) for i, c in enumerate(key))
                if sum(child) > p.cutoff:
                    continue
                for r in rows:
                    push(child, _bracket_letter(r, g))
        else:
            for k2 in eng.all_keys(p.cutoff - sum(key)):
                if sum(k2) < 2:
                    continue
                child = tuple(a + b for a, b in zip(key, k2))
                for w in eng.lyndon(k2):
                    mono = eng.expand_word(w)
                    for r in rows:
                        push(child, _commutator(r, mono))
    return snap


def derived_series(p: GradedPresentation, depth: int) -> list[IdealSnapshot]:
    """Snapshots of L^(1), ..., L^(depth) within the truncation."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    eng = _engine(p)
    terms: list[IdealSnapshot] = []
    first = IdealSnapshot(p, "L^(1) = [L, L]", AMBIENT_FULL)
    if eng.m:
        for key in eng.all_keys(p.cutoff):
            if sum(key) < 2:
                continue
            for row in eng.component_reps(key):
                _snapshot_insert(eng, first, key, row)
    terms.append(first)
    while len(terms) < depth:
        prev = terms[-1]
        nxt = IdealSnapshot(p, f"L^({len(terms) + 1})")
        keys = [k for k, ech in prev._echelons.items() if ech.rank]
        for i, k1 in enumerate(keys):
            for k2 in keys[i:]:
                child = tuple(a + b for a, b in zip(k1, k2))
                if sum(child) > p.cutoff:
                    continue
                eng.check_deadline("derived series")
                rows1 = prev._echelons[k1].rows
                rows2 = prev._echelons[k2].rows
                for a, r1 in enumerate(rows1):
                    start = a + 1 if k1 == k2 else 0
                    for r2 in rows2[start:]:
                        _snapshot_insert(eng, nxt, child, _commutator(r1, r2))
        terms.append(nxt)
        if nxt.is_trivial():
            break
    while len(terms) < depth:
        terms.append(IdealSnapshot(p, f"L^({len(terms) + 1})"))
    return terms


@dataclass(frozen=True)
class TruncationNote:
    """How informative a truncated derived-length value is.

    A cutoff c forces L^(k) = 0 as soon as 2^k > c, regardless of the
    presentation; lengths at or above that threshold say nothing.
    """

    cutoff: int
    vacuity_threshold: int
    informative: bool

    def message(self) -> str:
        status = "informative" if self.informative else "uninformative (forced by truncation)"
        return (
            f"cutoff {self.cutoff} forces L^({self.vacuity_threshold}) = 0; "
            f"result is {status}"
        )


def derived_length(p: GradedPresentation) -> tuple[int, TruncationNote]:
    """Least k with L^(k) = 0 in the truncated quotient, plus a vacuity note."""
    eng = _engine(p)
    threshold = math.ceil(math.log2(p.cutoff + 1))
    nonzero_algebra = False
    if eng.m:
        for key in eng.all_keys(p.cutoff):
            if eng.slice(key).quotient_dimension:
                nonzero_algebra = True
                break
    if not nonzero_algebra:
        return 0, TruncationNote(p.cutoff, threshold, True)
    k = 1
    terms = derived_series(p, 1)
    while not terms[-1].is_trivial():
        k += 1
        terms = derived_series(p, k)
    note = TruncationNote(p.cutoff, threshold, informative=k < threshold)
    return k, note


def centralizer_census(
    p: GradedPresentation, t: IdealSnapshot
) -> tuple[frozenset[Residue], frozenset[Residue]]:
    """Nontrivial zn-degrees of T and zn-degrees of L failing to centralize T."""
    if t.presentation is not p and t.presentation != p:
        raise ValueError("snapshot was computed under a different presentation")
    eng = _engine(p)
    nontrivial = t.nontrivial_zn_degrees()
    noncentral: set[Residue] = set()
    tkeys = [(k, ech) for k, ech in t._echelons.items() if ech.rank]
    min_len = 2 if t.ambient == AMBIENT_COMMUTATOR else 1
    for key1 in eng.all_keys(p.cutoff - 1) if eng.m else []:
        if sum(key1) < min_len:
            continue
        zn1 = Residue(eng.zn(key1), p.modulus)
        if zn1 in noncentral:
            continue
        reps = eng.component_reps(key1)
        if not reps:
            continue
        found = False
        for key2, ech2 in tkeys:
            if sum(key1) + sum(key2) > p.cutoff:
                continue
            child = tuple(a + b for a, b in zip(key1, key2))
            for r1 in reps:
                for r2 in ech2.rows:
                    if not eng.row_is_zero(child, _commutator(r1, r2)):
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if found:
            noncentral.add(zn1)
    return nontrivial, frozenset(noncentral)


def set_budget(p: GradedPresentation, seconds: float | None) -> None:
    """Install a wall-clock budget on the presentation's engine (None clears it)."""
    eng = _engine(p)
    eng.deadline = None if seconds is None else time.monotonic() + seconds


def engine_statistics(p: GradedPresentation) -> dict:
    return dict(_engine(p).counters)
