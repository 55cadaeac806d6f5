"""``amst`` command line.

Machine-readable JSON goes to stdout and human-readable summaries to stderr,
so redirecting stdout captures a byte-reproducible report.  Exit status is
0 when everything checked out (or was vacuous), 1 on a violation and 2 on a
usage or input error.
"""

import argparse
import json
import os
import sys

from . import adapters, compactness, consequence, counterexample, cpl, harness, io, topology, ultra
from .core import finsat_table, galois_check, is_compact, is_normal
from .errors import AmstError, ArgumentError
from .generate import DEFAULT_SEED
from .report import VIOLATED

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _default_seed() -> int:
    raw = os.environ.get("AMST_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"AMST_SEED must be an integer, got {raw!r}") from None


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise _UsageError(f"{path} is not valid JSON: {exc}") from None


def _emit(doc) -> None:
    sys.stdout.write(io.dumps(doc) + "\n")


def _say(text: str) -> None:
    print(text, file=sys.stderr)


def _summarize(verdicts) -> None:
    for v in verdicts:
        counts = " ".join(f"{k}={n}" for k, n in sorted(v.counts.items()))
        _say(f"{v.status:9} {v.theorem:22} {counts}")
        if v.status == VIOLATED:
            _say(f"          witness: {json.dumps(v.witness, sort_keys=True, default=str)[:400]}")


def cmd_check(args) -> int:
    amst = io.amst_from_json(_load(args.file))
    normal = is_normal(amst)
    compact = is_compact(amst)
    verdicts = [galois_check(amst)]
    report = {"normal": {"ok": bool(normal), "witness": normal.witness}}
    report["compact"] = {"ok": bool(compact), "witness": compact.witness}
    report["L_satisfiable"] = bool(amst.mod_table[amst.all_sentences]) if amst.n_sentences <= 16 else None
    report["L_finitely_satisfiable"] = bool(finsat_table(amst)[amst.all_sentences])
    if normal:
        char = compactness.characterization_report(amst)
        report["characterization"] = char.to_dict()
        verdicts += [
            compactness.characterization_verdict(amst),
            compactness.lemma_checks(amst),
            topology.compactness_equivalence_check(amst),
            topology.closed_sets_check(amst),
            ultra.order_maxsat_check(amst),
        ]
    report["verdicts"] = [v.to_dict() for v in verdicts]
    _emit(report)
    _summarize(verdicts)
    return harness.exit_code(verdicts)


def cmd_theorems(args) -> int:
    config = harness.SuiteConfig(
        theorems=args.only.split(",") if args.only else None,
        seed=args.seed,
        count=args.count,
        max_sentences=args.max_l,
        max_models=args.max_m,
        mutants=tuple(args.inject_bug or ()),
    )
    verdicts = harness.run_suite(config)
    _emit({"seed": config.seed, "verdicts": [v.to_dict() for v in verdicts]})
    _summarize(verdicts)
    return harness.exit_code(verdicts)


def cmd_canon(args) -> int:
    ls = io.logic_from_json(_load(args.file))
    _emit(io.amst_to_json(consequence.canonical_normal_amst(ls)))
    return EXIT_OK


_CONVERTERS = {
    "info": (io.info_from_json, adapters.info_system_to_amst),
    "chu": (io.chu_from_json, adapters.chu_to_amst),
    "quiver": (io.quiver_from_json, adapters.quiver_to_amst),
    "logic": (io.logic_from_json, adapters.logical_structure_to_amst),
    "category": (io.category_from_json, adapters.category_to_amst),
}


def cmd_convert(args) -> int:
    read, convert = _CONVERTERS[args.source]
    _emit(io.amst_to_json(convert(read(_load(args.file)))))
    return EXIT_OK


def cmd_cpl(args) -> int:
    variables = [v.strip() for v in args.vars.split(",") if v.strip()]
    texts = [t.strip() for group in args.formulas for t in group.split(",") if t.strip()]
    if not variables or not texts:
        raise _UsageError("need at least one variable and one formula")
    formulas = [cpl.parse_formula(t) for t in texts]
    out = {"amst": io.amst_to_json(cpl.valuation_amst(variables, formulas))}
    code = EXIT_OK
    if args.check_ultravaluation:
        sweep = cpl.ultravaluation_sweep(variables, formulas, max_index=args.max_index)
        out["ultravaluation"] = {
            "max_index": args.max_index,
            "checked": sweep["checked"],
            "failure": sweep["failure"],
        }
        if sweep["failure"]:
            code = EXIT_VIOLATION
        _say(f"ultravaluation: {sweep['checked']} checks, " + ("failure" if sweep["failure"] else "all hold"))
    _emit(out)
    return code


def cmd_counterexample(args) -> int:
    report = counterexample.verify_counterexample(args.bound)
    _emit(report)
    _say(counterexample.report_text(report))
    return EXIT_OK if report["verified"] else EXIT_VIOLATION


def cmd_fuzz(args) -> int:
    verdicts = harness.fuzz(args.budget, seed=args.seed, mutants=tuple(args.inject_bug or ()))
    _emit({"budget": args.budget, "seed": args.seed, "verdicts": [v.to_dict() for v in verdicts]})
    _summarize(verdicts)
    return harness.exit_code(verdicts)


def _mutant(name: str) -> str:
    if name not in compactness.MUTANTS:
        raise argparse.ArgumentTypeError(f"choose from {', '.join(sorted(compactness.MUTANTS))}")
    return name


def build_parser(seed: int) -> argparse.ArgumentParser:
    parser = _Parser(prog="amst", description="Finite abstract model structure workbench.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="operators, normality and compactness of one amst")
    p.add_argument("file")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("theorems", help="run the theorem suite")
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--count", type=int, help="random instances per check")
    p.add_argument("--max-l", type=int, help="cap on sentences for random amsts")
    p.add_argument("--max-m", type=int, help="cap on models for random amsts")
    p.add_argument("--only", help="comma-separated theorem ids: " + ", ".join(harness.REGISTRY))
    p.add_argument("--inject-bug", type=_mutant, action="append", metavar="MUTANT")
    p.set_defaults(run=cmd_theorems)

    p = sub.add_parser("canon", help="canonical normal amst of a consequence relation")
    p.add_argument("file")
    p.set_defaults(run=cmd_canon)

    p = sub.add_parser("convert", help="amst of an information system, Chu space, quiver, logic or category")
    p.add_argument("--from", dest="source", choices=sorted(_CONVERTERS), required=True)
    p.add_argument("file")
    p.set_defaults(run=cmd_convert)

    p = sub.add_parser("cpl", help="valuation amst of propositional formulas")
    p.add_argument("--vars", required=True)
    p.add_argument("--formulas", action="append", required=True)
    p.add_argument("--check-ultravaluation", action="store_true")
    p.add_argument("--max-index", type=int, default=3)
    p.set_defaults(run=cmd_cpl)

    p = sub.add_parser("counterexample", help="verify the non-normal example over the naturals")
    p.add_argument("--bound", type=int, default=16)
    p.set_defaults(run=cmd_counterexample)

    p = sub.add_parser("fuzz", help="random amsts against every per-instance checker")
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--inject-bug", type=_mutant, action="append", metavar="MUTANT")
    p.set_defaults(run=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser(_default_seed()).parse_args(argv)
        return args.run(args)
    except _UsageError as exc:
        _say(f"amst: {exc}")
        return EXIT_USAGE
    except (ArgumentError, AmstError) as exc:
        _say(f"amst: {type(exc).__name__}: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
