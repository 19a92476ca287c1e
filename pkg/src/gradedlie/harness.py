"""Scripted, reproducible verification campaigns for the graded-quotient engine.

Each check validates its hypotheses with the index combinatorics first (no
algebra is built when they fail), then instantiates a truncated graded
quotient and decides the target identity by exact row reduction.  Verdicts:

  verified             the identity holds in the truncated quotient
  counterexample       it fails; the witness replays to nonzero under is_zero
  hypothesis-violated  the config does not satisfy the lemma's hypotheses
  budget-exceeded      the wall-clock budget ran out (partial statistics)

Every check has a deliberately weakened negative-control twin (weaken=True)
that is expected to fail, guarding against vacuously-true implementations.
Verification paths are deterministic; reports are reproducible bit for bit
from their config (wall time is carried separately and never serialized).
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__
from .freelie import Generator, LieElement, bracket, left_normalized, witt_count
from .quotient import (
    AMBIENT_COMMUTATOR,
    BudgetExceeded,
    ExplicitList,
    GradedPresentation,
    IdealSnapshot,
    SelectSecond,
    SelectiveMetabelian,
    ZeroComponentKill,
    _commutator,
    _engine,
    _snapshot_insert,
    centralizer_census,
    derived_length,
    derived_series,
    engine_statistics,
    ideal_generated,
    is_zero,
    reduce_mod_relations,
    relation_subspace,
    set_budget,
)
from .residues import (
    IndexSequence,
    Residue,
    dependency_set,
    dtilde_set,
    is_minus_one_dependent,
    residue_order,
)

VERDICT_VERIFIED = "verified"
VERDICT_COUNTEREXAMPLE = "counterexample"
VERDICT_HYPOTHESIS = "hypothesis-violated"
VERDICT_BUDGET = "budget-exceeded"

LEMMA_IDS = ("lemma1", "lemma2", "lemma3", "span_form", "component_bound", "proposition")


@dataclass(frozen=True)
class CheckConfig:
    """Parameters of one lemma check.

    indices carries the lemma's index tuple: (a1,a2,a3,a4,b) for lemma1,
    (a,b,c) for lemma2, (d1,d2,d3,d4) for span_form / component_bound.
    degrees lists generator degrees where the lemma quantifies over whole
    components (lemma3, proposition).  multiplicity is the lemma2 repetition
    count (7 is the lemma itself; below that the check is a smoke run that
    reports the exactly decided membership without a lemma claim).  weaken
    switches to the deliberately broken negative-control twin.
    """

    lemma: str
    n: int
    indices: tuple[int, ...] = ()
    degrees: tuple[int, ...] = ()
    cutoff: int | None = None
    multiplicity: int = 7
    weaken: bool = False
    budget_seconds: float | None = None

    def to_json(self) -> dict:
        out = {
            "lemma": self.lemma,
            "n": self.n,
            "indices": list(self.indices),
            "degrees": list(self.degrees),
            "cutoff": self.cutoff,
            "multiplicity": self.multiplicity,
            "weaken": self.weaken,
        }
        if self.budget_seconds is not None:
            out["budget_seconds"] = self.budget_seconds
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CheckConfig":
        known = {
            "lemma", "n", "indices", "degrees", "cutoff", "multiplicity",
            "weaken", "budget_seconds",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        if "lemma" not in data or "n" not in data:
            raise ValueError("a check config needs at least 'lemma' and 'n'")
        if data["lemma"] not in LEMMA_IDS:
            raise ValueError(f"unknown lemma id {data['lemma']!r}; known: {LEMMA_IDS}")
        return cls(
            lemma=str(data["lemma"]),
            n=int(data["n"]),
            indices=tuple(int(x) for x in data.get("indices", ())),
            degrees=tuple(int(x) for x in data.get("degrees", ())),
            cutoff=None if data.get("cutoff") is None else int(data["cutoff"]),
            multiplicity=int(data.get("multiplicity", 7)),
            weaken=bool(data.get("weaken", False)),
            budget_seconds=(
                None if data.get("budget_seconds") is None
                else float(data["budget_seconds"])
            ),
        )


@dataclass
class CheckReport:
    """Outcome of one check; wall_time is volatile and never serialized."""

    config: CheckConfig
    verdict: str
    witness: dict | None = None
    statistics: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict == VERDICT_VERIFIED

    def to_json(self) -> dict:
        return {
            "version": __version__,
            "config": self.config.to_json(),
            "verdict": self.verdict,
            "witness": self.witness,
            "statistics": self.statistics,
            "notes": self.notes,
        }


def _hypothesis(report: CheckReport, reason: str) -> CheckReport:
    report.verdict = VERDICT_HYPOTHESIS
    report.notes.append(reason)
    return report


def _make_generators(n: int, degrees: Sequence[int], prefix: str = "x") -> tuple[Generator, ...]:
    return tuple(
        Generator(f"{prefix}{d}", Residue.of(d, n)) for d in dict.fromkeys(degrees)
    )


def run_check(cfg: CheckConfig, dry_run: bool = False) -> CheckReport:
    started = time.monotonic()
    runner = _RUNNERS.get(cfg.lemma)
    if runner is None:
        raise ValueError(f"unknown lemma id {cfg.lemma!r}; known: {LEMMA_IDS}")
    report = CheckReport(cfg, VERDICT_VERIFIED)
    if cfg.n < 3 or cfg.n % 2 == 0:
        _hypothesis(report, f"n = {cfg.n} is not an odd modulus >= 3")
    else:
        try:
            runner(cfg, report, dry_run=dry_run)
        except BudgetExceeded as exc:
            report.verdict = VERDICT_BUDGET
            report.statistics.update(exc.statistics)
            report.notes.append(f"budget exceeded during {exc.stage}")
    p = getattr(report, "_presentation", None)
    if p is not None:
        report.statistics.update(engine_statistics(p))
    report.wall_time = time.monotonic() - started
    return report


def _witt_total(num_gens: int, cutoff: int) -> int:
    """Sum of free component dimensions over all fine degrees up to the cutoff."""
    total = 0
    for counts in itertools.product(*(range(cutoff + 1) for _ in range(num_gens))):
        if 1 <= sum(counts) <= cutoff:
            total += witt_count(counts)
    return total


def _dry(report: CheckReport, **stats) -> CheckReport:
    report.statistics.update(stats)
    report.notes.append("dry run: hypotheses validated, dimensions estimated, "
                        "no row reduction performed")
    report.verdict = VERDICT_VERIFIED
    return report


def _presentation(cfg, report, gens, families, cutoff) -> GradedPresentation:
    p = GradedPresentation(cfg.n, gens, families, cutoff)
    if cfg.budget_seconds is not None:
        set_budget(p, cfg.budget_seconds)
    report._presentation = p
    return p


# ---------------------------------------------------------------------------
# lemma 1: [[x_a1,x_a2],[x_a3,x_a4], x_b] = 0 for b outside Dtilde


def check_lemma1(cfg: CheckConfig, report: CheckReport, dry_run: bool = False) -> CheckReport:
    if len(cfg.indices) != 5:
        return _hypothesis(report, "lemma1 needs indices (a1, a2, a3, a4, b)")
    n = cfg.n
    a1, a2, a3, a4, b = (v % n for v in cfg.indices)
    if 0 in (a1, a2, a3, a4):
        return _hypothesis(report, "indices a1..a4 must be nonzero")
    triple = IndexSequence.of(n, [a1, a2, a3])
    if is_minus_one_dependent(triple):
        return _hypothesis(report, f"(a1,a2,a3) = ({a1},{a2},{a3}) is (-1)-dependent")
    if Residue.of(a4, n) not in dependency_set(triple):
        return _hypothesis(report, f"a4 = {a4} is not in D({a1},{a2},{a3})")
    dt = dtilde_set(IndexSequence.of(n, [a1, a2, a3, a4]))
    if len(dt) == n:
        return _hypothesis(report, "no admissible b: Dtilde covers all of Z/nZ")
    if Residue.of(b, n) in dt:
        return _hypothesis(report, f"b = {b} lies in Dtilde(a1,a2,a3,a4)")
    degrees = [a1, a2, a3, a4, b]
    if len(set(degrees)) != 5:
        return _hypothesis(report, "degrees a1,a2,a3,a4,b must be distinct to build "
                                   "the five-generator presentation")
    cutoff = cfg.cutoff if cfg.cutoff is not None else 5
    if cutoff < 5:
        return _hypothesis(report, f"cutoff {cutoff} is below the product length 5")
    if dry_run:
        return _dry(report, free_dimension=witt_count((1, 1, 1, 1, 1)), dtilde_size=len(dt))
    names = ["a1", "a2", "a3", "a4", "b"]
    gens = tuple(Generator(nm, Residue.of(d, n)) for nm, d in zip(names, degrees))
    families = () if cfg.weaken else (SelectiveMetabelian(), ZeroComponentKill())
    p = _presentation(cfg, report, gens, families, cutoff)
    e1, e2, e3, e4, eb = (LieElement.from_generator(gens, nm) for nm in names)
    product = left_normalized([bracket(e1, e2), bracket(e3, e4), eb])
    qc = relation_subspace(p, product.fine_degree())
    report.statistics.update(
        free_dimension=len(qc.free_basis),
        relation_rank=qc.rank,
        quotient_dimension=qc.quotient_dimension,
        dtilde_size=len(dt),
    )
    if is_zero(p, product):
        report.verdict = VERDICT_VERIFIED
    else:
        report.verdict = VERDICT_COUNTEREXAMPLE
        report.witness = {
            "fine_degree": str(product.fine_degree()),
            "residual": str(reduce_mod_relations(p, product)),
        }
    return report


# ---------------------------------------------------------------------------
# lemma 2: [x_c, x_a * 7] = 0 with x_a = [x_b, x_{a-b}], o(a) > 3


def check_lemma2(cfg: CheckConfig, report: CheckReport, dry_run: bool = False) -> CheckReport:
    if len(cfg.indices) != 3:
        return _hypothesis(report, "lemma2 needs indices (a, b, c)")
    n = cfg.n
    a, b, c = (v % n for v in cfg.indices)
    e = (a - b) % n
    if 0 in (a, b, c, e):
        return _hypothesis(report, "a, b, c and a-b must all be nonzero")
    if residue_order(Residue.of(a, n)) <= 3:
        return _hypothesis(report, f"o(a) = {residue_order(Residue.of(a, n))} is not > 3")
    k = cfg.multiplicity
    if k < 1:
        return _hypothesis(report, "multiplicity must be >= 1")
    length = 1 + 2 * k
    cutoff = cfg.cutoff if cfg.cutoff is not None else length
    if cutoff < length:
        return _hypothesis(report, f"cutoff {cutoff} is below the product length {length}")
    if len({b, c, e}) != 3:
        return _hypothesis(report, "degrees b, c, a-b must be distinct to build "
                                   "the three-generator presentation")
    if dry_run:
        return _dry(report, fine_degree=f"(b:{k}, c:1, e:{k})",
                    free_dimension=witt_count((k, 1, k)))
    gens = tuple(
        Generator(nm, Residue.of(d, n)) for nm, d in (("b", b), ("c", c), ("e", e))
    )
    families = () if cfg.weaken else (SelectiveMetabelian(), ZeroComponentKill())
    p = _presentation(cfg, report, gens, families, cutoff)
    gb, gc, ge = (LieElement.from_generator(gens, nm) for nm in ("b", "c", "e"))
    xa = bracket(gb, ge)
    product = left_normalized([gc] + [xa] * k)
    fd = product.fine_degree()
    if fd is None:
        report.notes.append("the product is already zero in the free algebra")
        report.verdict = VERDICT_VERIFIED
        return report
    vanishes = is_zero(p, product)
    qc = relation_subspace(p, fd)
    report.statistics.update(
        fine_degree=str(fd),
        free_dimension=len(qc.free_basis),
        relation_rank=qc.rank,
        quotient_dimension=qc.quotient_dimension,
        product_is_zero=vanishes,
    )
    if k < 7:
        # below multiplicity 7 the lemma makes no claim; report the exact
        # membership decision and call the pipeline run verified
        report.notes.append(
            f"smoke variant at multiplicity {k}: membership decided exactly, "
            "no lemma claim at this length"
        )
        report.verdict = VERDICT_VERIFIED
    elif vanishes:
        report.verdict = VERDICT_VERIFIED
    else:
        report.verdict = VERDICT_COUNTEREXAMPLE
        report.witness = {
            "fine_degree": str(fd),
            "residual": str(reduce_mod_relations(p, product)),
        }
    return report


# ---------------------------------------------------------------------------
# lemma 3: the second selective condition forces a metabelian algebra


def check_lemma3(cfg: CheckConfig, report: CheckReport, dry_run: bool = False) -> CheckReport:
    n = cfg.n
    degrees = tuple(d % n for d in cfg.degrees) or tuple(range(1, min(4, n)))
    if not degrees or 0 in degrees:
        return _hypothesis(report, "generator degrees must be nonzero")
    cutoff = cfg.cutoff if cfg.cutoff is not None else 6
    if cutoff < 4:
        return _hypothesis(report, "cutoff must be >= 4 to see L^(2)")
    if dry_run:
        return _dry(report, total_free_dimension=_witt_total(len(degrees), cutoff))
    gens = _make_generators(n, degrees)
    families = (ExplicitList(()),) if cfg.weaken else (SelectSecond(), ZeroComponentKill())
    p = _presentation(cfg, report, gens, families, cutoff)
    second = derived_series(p, 2)[1]
    length, note = derived_length(p)
    report.statistics.update(
        derived_length=length,
        vacuity_threshold=note.vacuity_threshold,
        informative=note.informative,
        second_term_dimension=second.total_dimension(),
    )
    report.notes.append(note.message())
    if second.is_trivial():
        report.verdict = VERDICT_VERIFIED
    else:
        key, ech = next((k, e) for k, e in second._echelons.items() if e.rank)
        witness_elem = _engine(p).row_to_element(ech.rows[0])
        report.verdict = VERDICT_COUNTEREXAMPLE
        report.witness = {
            "fine_degree": str(witness_elem.fine_degree()),
            "element": str(reduce_mod_relations(p, witness_elem)),
        }
    return report


# ---------------------------------------------------------------------------
# lemmas 4-5 and corollary 6: span form and component census of the ideal


def _span_form_setting(cfg: CheckConfig, report: CheckReport, dry_run: bool = False):
    if len(cfg.indices) != 4:
        _hypothesis(report, "needs indices (d1, d2, d3, d4)")
        return None
    n = cfg.n
    d1, d2, d3, d4 = (v % n for v in cfg.indices)
    if 0 in (d1, d2, d3, d4):
        _hypothesis(report, "indices d1..d4 must be nonzero")
        return None
    triple = IndexSequence.of(n, [d1, d2, d3])
    if is_minus_one_dependent(triple):
        _hypothesis(report, f"(d1,d2,d3) = ({d1},{d2},{d3}) is (-1)-dependent")
        return None
    if Residue.of(d4, n) not in dependency_set(triple):
        _hypothesis(report, f"d4 = {d4} is not in D(d1,d2,d3)")
        return None
    if len({d1, d2, d3, d4}) != 4:
        _hypothesis(report, "degrees d1..d4 must be distinct to build the presentation")
        return None
    cutoff = cfg.cutoff if cfg.cutoff is not None else 6
    if cutoff < 6:
        _hypothesis(report, "cutoff must be >= 6 (U has length 4, closure adds >= 2)")
        return None
    if dry_run:
        _dry(report, total_free_dimension=_witt_total(4, cutoff))
        return None
    names = ["u1", "u2", "u3", "u4"]
    gens = tuple(
        Generator(nm, Residue.of(d, n)) for nm, d in zip(names, (d1, d2, d3, d4))
    )
    p = _presentation(cfg, report, gens, (SelectiveMetabelian(), ZeroComponentKill()), cutoff)
    u1, u2, u3, u4 = (LieElement.from_generator(gens, nm) for nm in names)
    seed = bracket(bracket(u1, u2), bracket(u3, u4))
    dt = frozenset(r.value for r in dtilde_set(IndexSequence.of(n, [d1, d2, d3, d4])))
    return p, seed, dt, (d1, d2, d3, d4), cutoff


def _eq6_span(p: GradedPresentation, seed: LieElement, dt: frozenset,
              allow_prefix: bool) -> IdealSnapshot:
    """Span of the constrained products [U, m_{i_1}, ..., m_{i_v}].

    Factors are length->=2 basis monomials with zn-degree in dt; those of
    additive order > 3 form an initial segment (absent when allow_prefix is
    False, the negative control), followed by a tail of order-3 factors.
    All such products up to the cutoff are enumerated without pruning.
    """
    eng = _engine(p)
    snap = IdealSnapshot(p, "span of constrained products")
    key0, row0 = eng.element_row(seed)
    _snapshot_insert(eng, snap, key0, dict(row0))

    def extend(key, row, tail_started):
        for k2 in eng.all_keys(p.cutoff - sum(key)):
            if sum(k2) < 2:
                continue
            zn2 = eng.zn(k2)
            if zn2 not in dt:
                continue
            order = residue_order(Residue.of(zn2, p.modulus))
            if order == 3:
                now_tail = True
            elif order > 3 and not tail_started and allow_prefix:
                now_tail = False
            else:
                continue
            child = tuple(x + y for x, y in zip(key, k2))
            for w in eng.lyndon(k2):
                nrow = _commutator(row, eng.expand_word(w))
                if nrow:
                    _snapshot_insert(eng, snap, child, dict(nrow))
                    extend(child, nrow, now_tail)

    extend(key0, row0, False)
    return snap


def check_span_form(cfg: CheckConfig, report: CheckReport, dry_run: bool = False) -> CheckReport:
    setting = _span_form_setting(cfg, report, dry_run)
    if setting is None or dry_run:
        return report
    p, seed, dt, quad, cutoff = setting
    ideal = ideal_generated(
        p, [seed], ambient=AMBIENT_COMMUTATOR, description="ideal of [L,L] generated by U"
    )
    span = _eq6_span(p, seed, dt, allow_prefix=not cfg.weaken)
    eng = _engine(p)
    report.statistics.update(
        ideal_dimension=ideal.total_dimension(),
        span_dimension=span.total_dimension(),
        dtilde_size=len(dt),
    )
    for key, ech in ideal._echelons.items():
        for row in ech.rows:
            e = eng.row_to_element(row)
            if not span.contains(e):
                report.verdict = VERDICT_COUNTEREXAMPLE
                report.witness = {"fine_degree": str(eng.fd_of(key)), "element": str(e)}
                return report
    report.verdict = VERDICT_VERIFIED
    return report


def check_component_bound(cfg: CheckConfig, report: CheckReport, dry_run: bool = False) -> CheckReport:
    setting = _span_form_setting(cfg, report, dry_run)
    if setting is None or dry_run:
        return report
    p, seed, dt, quad, cutoff = setting
    n = cfg.n
    ideal = ideal_generated(
        p, [seed], ambient=AMBIENT_COMMUTATOR, description="ideal of [L,L] generated by U"
    )
    nontrivial, noncentral = centralizer_census(p, ideal)
    sigma = sum(quad) % n
    dt_high = [v for v in dt if residue_order(Residue.of(v, n)) > 3]
    order3 = [v for v in range(1, n) if residue_order(Residue.of(v, n)) == 3]
    max_factors = (cutoff - 4) // 2
    if cfg.weaken:
        predicted = {sigma}
    else:
        predicted = set()
        for total in range(max_factors + 1):
            for pre_count in range(total + 1):
                for pre in itertools.combinations_with_replacement(dt_high, pre_count):
                    base = (sigma + sum(pre)) % n
                    for tail in itertools.combinations_with_replacement(
                        order3, total - pre_count
                    ):
                        predicted.add((base + sum(tail)) % n)
    got = {r.value for r in nontrivial}
    report.statistics.update(
        nontrivial_count=len(nontrivial),
        noncentralizing_count=len(noncentral),
        predicted_count=len(predicted),
        lemma7_bound=len(nontrivial) ** 2,
    )
    if not got <= predicted:
        report.verdict = VERDICT_COUNTEREXAMPLE
        report.witness = {"unpredicted_zn_degrees": sorted(got - predicted)}
    elif len(noncentral) > len(nontrivial) ** 2:
        report.verdict = VERDICT_COUNTEREXAMPLE
        report.witness = {
            "noncentralizing": sorted(r.value for r in noncentral),
            "nontrivial": sorted(got),
        }
    else:
        report.verdict = VERDICT_VERIFIED
    return report


# ---------------------------------------------------------------------------
# the proposition: L^(3) <= J


def _proposition_seeds(p: GradedPresentation) -> list[LieElement]:
    """[[M_{i1},M_{i2}],[M_{i3},M_{i4}]] over length->=2 basis monomials.

    The defining index condition ((i1,i2,i3) independent, i4 in D(i1,i2,i3))
    is accepted in any orientation that leaves the product's span unchanged
    (swapping the halves or the factors inside a half only changes sign).
    """
    eng = _engine(p)
    n = p.modulus
    monos = []
    for key in eng.all_keys(p.cutoff - 6):
        if sum(key) < 2:
            continue
        for w in eng.lyndon(key):
            monos.append((eng.zn(key), sum(key), eng.row_to_element(eng.expand_word(w))))

    def admits(z1, z2, z3, z4):
        for (x1, x2, x3, x4) in (
            (z1, z2, z3, z4), (z1, z2, z4, z3), (z3, z4, z1, z2), (z3, z4, z2, z1),
        ):
            if 0 in (x1, x2, x3):
                continue
            triple = IndexSequence.of(n, [x1, x2, x3])
            if is_minus_one_dependent(triple):
                continue
            if Residue.of(x4, n) in dependency_set(triple):
                return True
        return False

    seeds = []
    pairs = []
    for i, (z1, l1, m1) in enumerate(monos):
        for j in range(i + 1, len(monos)):
            z2, l2, m2 = monos[j]
            if l1 + l2 + 4 <= p.cutoff:
                pairs.append((i, j, z1, z2, l1 + l2))
    for ai, (i, j, z1, z2, l12) in enumerate(pairs):
        for (k, l, z3, z4, l34) in pairs[ai:]:
            if l12 + l34 > p.cutoff:
                continue
            if (i, j) == (k, l):
                continue  # [P, P] = 0
            if not admits(z1, z2, z3, z4):
                continue
            seed = bracket(
                bracket(monos[i][2], monos[j][2]), bracket(monos[k][2], monos[l][2])
            )
            if not seed.is_zero():
                seeds.append(seed)
    return seeds


def check_proposition(cfg: CheckConfig, report: CheckReport, dry_run: bool = False) -> CheckReport:
    n = cfg.n
    degrees = tuple(d % n for d in cfg.degrees) or (1, 2, 3)
    if 0 in degrees:
        return _hypothesis(report, "generator degrees must be nonzero")
    cutoff = cfg.cutoff if cfg.cutoff is not None else 6
    if cutoff < 6:
        return _hypothesis(report, "cutoff must be >= 6")
    if dry_run:
        return _dry(report, total_free_dimension=_witt_total(len(degrees), cutoff))
    gens = _make_generators(n, degrees)
    p = _presentation(cfg, report, gens, (SelectiveMetabelian(), ZeroComponentKill()), cutoff)
    eng = _engine(p)
    seeds = [] if cfg.weaken else _proposition_seeds(p)
    ideal_j = ideal_generated(
        p, seeds, ambient=AMBIENT_COMMUTATOR,
        description="J: ideal of [L,L] generated by the dependent double brackets",
    )
    third = derived_series(p, 3)[2]
    length, note = derived_length(p)
    report.statistics.update(
        seed_count=len(seeds),
        j_dimension=ideal_j.total_dimension(),
        third_term_dimension=third.total_dimension(),
        derived_length=length,
        vacuity_threshold=note.vacuity_threshold,
        informative=note.informative,
    )
    report.notes.append(note.message())
    if third.total_dimension() == 0:
        report.notes.append(
            "L^(3) = 0 at this cutoff (its length exceeds the truncation), so "
            "the containment L^(3) <= J holds vacuously"
        )
        report.verdict = VERDICT_VERIFIED
        return report
    for key, ech in third._echelons.items():
        for row in ech.rows:
            e = eng.row_to_element(row)
            if not ideal_j.contains(e):
                report.verdict = VERDICT_COUNTEREXAMPLE
                report.witness = {"fine_degree": str(eng.fd_of(key)), "element": str(e)}
                return report
    report.verdict = VERDICT_VERIFIED
    return report


_RUNNERS = {
    "lemma1": check_lemma1,
    "lemma2": check_lemma2,
    "lemma3": check_lemma3,
    "span_form": check_span_form,
    "component_bound": check_component_bound,
    "proposition": check_proposition,
}


def run_campaign(configs: Sequence[CheckConfig], dry_run: bool = False) -> list[CheckReport]:
    """Run checks in config order; output ordering is by index, not completion."""
    return [run_check(cfg, dry_run=dry_run) for cfg in configs]


# ---------------------------------------------------------------------------
# randomized fuzz campaigns (the lemmas are theorems: any counterexample
# verdict here is an engine bug, which makes this the regression surface)


def fuzz_configs(lemma: str, count: int, seed: int = 0) -> list[CheckConfig]:
    rng = random.Random(seed)
    out: list[CheckConfig] = []
    guard = 0
    while len(out) < count and guard < 200 * count:
        guard += 1
        n = rng.choice([5, 7, 9, 11])
        if lemma == "lemma1":
            # Dtilde of four indices covers all of Z/nZ for n <= 11, so no
            # admissible b exists there; the smallest usable moduli are larger
            n = rng.choice([47, 53, 61])
            indices = _random_lemma1_indices(rng, n)
            if indices is None:
                continue
            out.append(CheckConfig("lemma1", n, indices=indices, cutoff=5))
        elif lemma == "lemma3":
            degs = _random_degrees(rng, n)
            out.append(CheckConfig("lemma3", n, degrees=degs, cutoff=rng.choice([4, 5, 6])))
        elif lemma in ("span_form", "component_bound"):
            quad = _random_span_indices(rng, n)
            if quad is None:
                continue
            out.append(CheckConfig(lemma, n, indices=quad, cutoff=6))
        elif lemma == "proposition":
            degs = _random_degrees(rng, n)
            out.append(CheckConfig("proposition", n, degrees=degs, cutoff=6))
        else:
            raise ValueError(f"no fuzz generator for {lemma!r}")
    if len(out) < count:
        raise RuntimeError(f"could not sample {count} valid configs for {lemma}")
    return out


def _random_degrees(rng, n):
    k = rng.randint(1, 3)
    return tuple(sorted(rng.sample(range(1, n), min(k, n - 1))))


def _random_lemma1_indices(rng, n):
    for _ in range(40):
        picks = rng.sample(range(1, n), 3)
        seq = IndexSequence.of(n, picks)
        if is_minus_one_dependent(seq):
            continue
        dset = [r.value for r in dependency_set(seq) if r.value not in (0, *picks)]
        if not dset:
            continue
        a4 = rng.choice(dset)
        dt = {r.value for r in dtilde_set(IndexSequence.of(n, picks + [a4]))}
        admissible = [b for b in range(1, n) if b not in dt and b not in picks and b != a4]
        if not admissible:
            continue
        return (*picks, a4, rng.choice(admissible))
    return None


def _random_span_indices(rng, n):
    for _ in range(40):
        picks = rng.sample(range(1, n), 3)
        seq = IndexSequence.of(n, picks)
        if is_minus_one_dependent(seq):
            continue
        dset = [r.value for r in dependency_set(seq) if r.value not in (0, *picks)]
        if not dset:
            continue
        return (*picks, rng.choice(dset))
    return None


def random_ideal_census(seed: int, n_max: int = 11, cutoff_max: int = 5) -> tuple[int, int]:
    """One randomized homogeneous ideal; returns (|nontrivial|, |noncentralizing|).

    Random small presentation with random relator families and random
    homogeneous monomial seeds; the Lemma 7 property suite asserts the
    |noncentralizing| <= |nontrivial|^2 bound on the result.
    """
    rng = random.Random(seed)
    n = rng.choice(range(3, n_max + 1, 2))
    degrees = rng.sample(range(1, n), min(rng.randint(1, 3), n - 1))
    gens = _make_generators(n, degrees)
    families = []
    if rng.random() < 0.5:
        families.append(SelectiveMetabelian())
    if rng.random() < 0.5:
        families.append(ZeroComponentKill())
    if rng.random() < 0.3:
        families.append(SelectSecond())
    cutoff = rng.randint(2, cutoff_max)
    p = GradedPresentation(n, gens, tuple(families), cutoff)
    eng = _engine(p)
    pool = []
    for key in eng.all_keys(cutoff):
        for w in eng.lyndon(key):
            pool.append(eng.row_to_element(eng.expand_word(w)))
    seeds = rng.sample(pool, min(len(pool), rng.randint(1, 3))) if pool else []
    snap = ideal_generated(p, seeds, description="fuzz ideal")
    nontrivial, noncentral = centralizer_census(p, snap)
    assert len(noncentral) <= len(nontrivial) ** 2, (
        f"Lemma 7 bound violated: seed={seed} n={n} degrees={degrees} "
        f"|nontrivial|={len(nontrivial)} |noncentralizing|={len(noncentral)}"
    )
    return len(nontrivial), len(noncentral)
