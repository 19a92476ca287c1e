"""Command-line entry point.

Subcommands: deps (dependence and index-set queries), build (presentation
to component-dimension report), decompose (structure-constant algebra to
grading and hypothesis report), verify (run a lemma campaign), constants
(print the named bounds).

Exit codes: 0 all checks verified / query answered; 1 counterexample or
hypothesis violation; 2 invalid input or schema error; 3 budget exceeded.
JSON reports are byte-identical across runs on identical inputs: keys are
sorted, rationals print canonically, and volatile fields (wall time) are
never serialized.  The default budget comes from GRADEDLIE_BUDGET_SECONDS.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .eigenspace import (
    eigenspace_decomposition,
    load_algebra,
    verify_automorphism_pair,
    verify_hypotheses,
    verify_selective_condition,
)
from .freelie import witt_count
from .harness import CheckConfig, run_campaign
from .quotient import (
    BudgetExceeded,
    presentation_from_json,
    relation_subspace,
    set_budget,
)
from .residues import (
    IndexSequence,
    dependency_set,
    dtilde_set,
    is_minus_one_dependent,
    paper_constants,
    residue_set_to_json,
)

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _fail_invalid(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INVALID


def _load_json_file(path: str):
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------


def cmd_deps(args) -> int:
    try:
        values = [int(v) for v in args.seq.split(",") if v.strip() != ""]
        seq = IndexSequence.of(args.n, values)
    except ValueError as exc:
        return _fail_invalid(str(exc))
    dependent = is_minus_one_dependent(seq)
    payload = {
        "version": __version__,
        "modulus": args.n,
        "sequence": list(seq.values()),
        "dependent": dependent,
        "dtilde": sorted(r.value for r in dtilde_set(seq)),
    }
    if not dependent:
        payload["dependency_set"] = sorted(r.value for r in dependency_set(seq))
    if args.output == "json":
        _emit_json(payload)
    else:
        print("dependent" if dependent else "independent")
        if not dependent:
            print(f"D(seq)      = {payload['dependency_set']}")
        print(f"Dtilde(seq) = {payload['dtilde']}")
    return EXIT_OK


def cmd_constants(args) -> int:
    try:
        c = paper_constants(args.f1)
    except ValueError as exc:
        return _fail_invalid(str(exc))
    payload = {"version": __version__, **c.to_json()}
    if args.digits:
        payload["e_bound_digit_count"] = c.e_bound.digit_count()
    if args.output == "json":
        _emit_json(payload)
    else:
        print(f"Dtilde bound      : {c.dtilde_max}")
        print(f"u bound           : {c.u_max}")
        print(f"component bound   : {c.e_bound}")
        if args.digits:
            print(f"  decimal digits  : {c.e_bound.digit_count()}")
        print(f"final length (f1={c.f1}): {c.final_length}")
    return EXIT_OK


def cmd_build(args) -> int:
    try:
        p = presentation_from_json(_load_json_file(args.presentation))
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _fail_invalid(str(exc))
    if args.cutoff is not None:
        from .quotient import GradedPresentation

        p = GradedPresentation(p.modulus, p.generators, p.relator_families, args.cutoff)
    if args.budget_seconds is not None:
        set_budget(p, args.budget_seconds)
    from .quotient import _engine

    eng = _engine(p)
    components = []
    zn_census: dict[int, int] = {}
    try:
        for key in eng.all_keys(p.cutoff):
            fd = eng.fd_of(key)
            free_dim = witt_count(key)
            entry = {"fine_degree": str(fd), "length": sum(key),
                     "zn_degree": eng.zn(key), "free_dimension": free_dim}
            if not args.dry_run and free_dim:
                qc = relation_subspace(p, fd)
                entry["relation_rank"] = qc.rank
                entry["quotient_dimension"] = qc.quotient_dimension
                if qc.quotient_dimension:
                    zn_census[eng.zn(key)] = (
                        zn_census.get(eng.zn(key), 0) + qc.quotient_dimension
                    )
            components.append(entry)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    payload = {
        "version": __version__,
        "modulus": p.modulus,
        "cutoff": p.cutoff,
        "generators": [{"name": g.name, "degree": g.degree.value} for g in p.generators],
        "dry_run": bool(args.dry_run),
        "components": components,
    }
    if not args.dry_run:
        payload["zn_census"] = {str(k): v for k, v in sorted(zn_census.items())}
    if args.output == "json":
        _emit_json(payload)
    else:
        print(f"modulus {p.modulus}, cutoff {p.cutoff}, "
              f"{len(p.generators)} generators")
        for entry in components:
            line = (f"  {entry['fine_degree']:<28} len {entry['length']} "
                    f"zn {entry['zn_degree']:>3} free {entry['free_dimension']:>5}")
            if "quotient_dimension" in entry:
                line += f" quotient {entry['quotient_dimension']:>5}"
            print(line)
        if not args.dry_run:
            print("surviving zn-degrees:",
                  {int(k): v for k, v in payload["zn_census"].items()})
    return EXIT_OK


def cmd_decompose(args) -> int:
    try:
        alg, aut = load_algebra(_load_json_file(args.algebra))
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _fail_invalid(str(exc))
    pair_report = verify_automorphism_pair(alg, aut)
    payload = {
        "version": __version__,
        "order_n": aut.order_n,
        "dimension": alg.dim,
        "automorphism_checks": pair_report.to_json(),
    }
    failed = not pair_report.passed
    if pair_report.passed:
        try:
            grading = eigenspace_decomposition(alg, aut)
        except ArithmeticError as exc:
            payload["decomposition_error"] = str(exc)
            failed = True
            grading = None
        if grading is not None:
            payload["component_dimensions"] = [grading.dimension(i) for i in range(grading.n)]
            hyp = verify_hypotheses(alg, aut)
            payload["hypothesis_checks"] = hyp.to_json()
            failed = failed or not hyp.passed
            if aut.order_n >= 3 and aut.order_n % 2 == 1:
                sel = verify_selective_condition(grading)
                payload["selective_condition"] = sel.to_json()
                failed = failed or not sel.passed
    if args.output == "json":
        _emit_json(payload)
    else:
        for c in payload["automorphism_checks"]:
            status = {True: "pass", False: "FAIL", None: "skip"}[c["passed"]]
            print(f"  [{status}] {c['check']}" + (f"  ({c['witness']})" if c["witness"] else ""))
        if "component_dimensions" in payload:
            print("component dimensions:", payload["component_dimensions"])
        for section in ("hypothesis_checks", "selective_condition"):
            for c in payload.get(section, []):
                status = {True: "pass", False: "FAIL", None: "skip"}[c["passed"]]
                print(f"  [{status}] {c['check']}" + (f"  ({c['witness']})" if c["witness"] else ""))
    return EXIT_FINDING if failed else EXIT_OK


def cmd_verify(args) -> int:
    try:
        raw = _load_json_file(args.campaign)
        if not isinstance(raw, list):
            raise ValueError("a campaign file is a JSON list of check configs")
        configs = [CheckConfig.from_json(entry) for entry in raw]
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _fail_invalid(str(exc))
    if args.budget_seconds is not None:
        configs = [
            CheckConfig(
                lemma=c.lemma, n=c.n, indices=c.indices, degrees=c.degrees,
                cutoff=c.cutoff, multiplicity=c.multiplicity, weaken=c.weaken,
                budget_seconds=args.budget_seconds,
            )
            for c in configs
        ]
    reports = run_campaign(configs, dry_run=args.dry_run)
    payload = [r.to_json() for r in reports]
    if args.output == "json":
        _emit_json(payload)
    else:
        for i, r in enumerate(reports):
            cfg = r.config
            label = f"{cfg.lemma} n={cfg.n}"
            if cfg.indices:
                label += f" indices={','.join(map(str, cfg.indices))}"
            if cfg.degrees:
                label += f" degrees={','.join(map(str, cfg.degrees))}"
            if cfg.weaken:
                label += " [negative control]"
            print(f"[{i}] {label:<58} {r.verdict:<20} {r.wall_time:7.2f}s")
            for note in r.notes:
                print(f"      note: {note}")
            if r.witness:
                print(f"      witness: {r.witness}")
    verdicts = {r.verdict for r in reports}
    if {"counterexample", "hypothesis-violated"} & verdicts:
        return EXIT_FINDING
    if "budget-exceeded" in verdicts:
        return EXIT_BUDGET
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedlie",
        description="Exact desk-scale engine for (Z/nZ)-graded Lie algebras.",
        epilog="exit codes: 0 verified/answered, 1 counterexample or hypothesis "
               "violation, 2 invalid input, 3 budget exceeded",
    )
    parser.add_argument("--version", action="version", version=f"gradedlie {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    default_budget = os.environ.get("GRADEDLIE_BUDGET_SECONDS")
    default_budget = float(default_budget) if default_budget else None

    def add_common(sp, budget=True):
        sp.add_argument("--output", choices=("json", "table"), default="table")
        if budget:
            sp.add_argument(
                "--budget-seconds", type=float, default=default_budget,
                help="wall-clock budget (default: GRADEDLIE_BUDGET_SECONDS)",
            )

    sp = sub.add_parser("deps", help="(-1)-dependence, D and Dtilde of an index sequence")
    sp.add_argument("--n", type=int, required=True, help="odd modulus >= 3")
    sp.add_argument("--seq", required=True, help="comma-separated residues, e.g. 1,2,4")
    add_common(sp, budget=False)
    sp.set_defaults(func=cmd_deps)

    sp = sub.add_parser("build", help="component dimension report for a presentation file")
    sp.add_argument("presentation", help="presentation JSON file")
    sp.add_argument("--cutoff", type=int, default=None, help="override the file's cutoff")
    sp.add_argument("--dry-run", action="store_true",
                    help="free dimensions only (Witt formula), no row reduction")
    add_common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("decompose", help="eigenspace decomposition of an algebra file")
    sp.add_argument("algebra", help="structure-constant algebra JSON file")
    add_common(sp, budget=False)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="run a lemma-check campaign file")
    sp.add_argument("campaign", help="campaign JSON file (list of check configs)")
    sp.add_argument("--dry-run", action="store_true",
                    help="validate hypotheses and estimate dimensions only")
    add_common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("constants", help="print the named numeric bounds")
    sp.add_argument("--f1", type=int, default=1,
                    help="solvability parameter f1 (input, never derived)")
    sp.add_argument("--digits", action="store_true",
                    help="also evaluate the digit count of the component bound")
    add_common(sp, budget=False)
    sp.set_defaults(func=cmd_constants)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
