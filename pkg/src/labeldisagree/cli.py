"""Command-line front end.

Subcommands ``verify``, ``classify``, ``decompose`` and ``minimize`` print a
JSON report.  Exit codes: 0 success, 1 usage or validation error, 2
violations found by ``verify``, 3 mismatch between the two methods of
``minimize --method both``.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import LabelVector, dominant_label
from .errors import DisagreementError
from .formats import parse_gspec, parse_instance
from .reduction import decompose_truncated
from .solver import minimize_bruteforce, minimize_cut
from .verifier import K_MAX, classify_case, join_meet, submodular_margin, verify_exhaustive, verify_sampled

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_MISMATCH = 0, 1, 2, 3
ENERGY_TOL = 1e-6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bits(s: str) -> LabelVector:
    try:
        return LabelVector.from_string(s)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _majority(x: LabelVector) -> str:
    return dominant_label(x)[0].name.lower()


def cmd_verify(args) -> tuple[dict, int]:
    if args.k < 1:
        raise UsageError(f"--k must be >= 1, got {args.k}")
    g = parse_gspec(args.g, max(args.k // 2, 1), validate=not args.allow_unvalidated)
    if args.sampled is not None:
        rep = verify_sampled(g, args.k, args.sampled, args.seed, max_violations=args.max_violations)
        mode = {"mode": "sampled", "n_pairs": args.sampled, "seed": args.seed}
    else:
        if args.k > K_MAX:
            raise UsageError(f"exhaustive mode supports k <= {K_MAX}; use --sampled")
        rep = verify_exhaustive(g, args.k, workers=args.workers, max_violations=args.max_violations)
        mode = {"mode": "exhaustive"}
    violations = []
    for v in rep.violations:
        case, kappa = classify_case(v.a, v.b)
        violations.append(
            {"a": str(v.a), "b": str(v.b), "margin": v.margin, "kappa": list(kappa.as_tuple()), "case": case.value}
        )
    doc = {
        "command": "verify",
        "g": args.g,
        "k": args.k,
        **mode,
        "pairs_checked": rep.pairs_checked,
        "min_margin": rep.min_margin,
        "n_violations": rep.n_violations,
        "violations": violations,
        "elapsed": rep.elapsed,
    }
    return doc, EXIT_VIOLATION if rep.n_violations else EXIT_OK


def cmd_classify(args) -> tuple[dict, int]:
    a, b = _bits(args.a), _bits(args.b)
    if len(a) != len(b):
        raise UsageError(f"--a and --b differ in length ({len(a)} vs {len(b)})")
    join, meet = join_meet(a, b)
    case, kappa = classify_case(a, b)
    g = parse_gspec(args.g, max(len(a) // 2, 1))
    doc = {
        "command": "classify",
        "a": str(a),
        "b": str(b),
        "kappa": list(kappa.as_tuple()),
        "join": str(join),
        "meet": str(meet),
        "dominant": {"a": _majority(a), "b": _majority(b), "join": _majority(join), "meet": _majority(meet)},
        "case": case.value,
        "g": args.g,
        "margin": submodular_margin(g, a, b),
    }
    return doc, EXIT_OK


def cmd_decompose(args) -> tuple[dict, int]:
    if args.k < 2:
        raise UsageError(f"--k must be >= 2, got {args.k}")
    t_eff = args.k // 2
    spec = parse_gspec(args.g, t_eff)
    dec = decompose_truncated(spec, t_eff)
    t = np.arange(t_eff + 1)
    residual = float(np.abs(spec.as_array()[: t_eff + 1] - dec.reconstruct(t)).max())
    doc = {
        "command": "decompose",
        "g": args.g,
        "k": args.k,
        "T_eff": t_eff,
        "constant": dec.constant,
        "pieces": [{"cap": p.cap, "lambda": p.lam} for p in dec.pieces],
        "residual": residual,
    }
    return doc, EXIT_OK


def _solution_doc(sol) -> dict:
    return {"assignment": str(sol.assignment), "energy": sol.energy, "stats": sol.stats}


def cmd_minimize(args) -> tuple[dict, int]:
    try:
        with open(args.input) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from exc
    inst = parse_instance(text)
    doc = {"command": "minimize", "input": args.input, "method": args.method, "nodes": inst.n}
    code = EXIT_OK
    if args.method in ("brute", "both"):
        doc["brute"] = _solution_doc(minimize_bruteforce(inst))
    if args.method in ("cut", "both"):
        doc["cut"] = _solution_doc(minimize_cut(inst))
    if args.method == "both":
        gap = abs(doc["brute"]["energy"] - doc["cut"]["energy"])
        doc["energy_gap"] = gap
        if gap > ENERGY_TOL:
            code = EXIT_MISMATCH
    return doc, code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", default=argparse.SUPPRESS, help="write the report here (default: stdout)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled modes")

    parser = _Parser(prog="labeldisagree", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="check the lattice inequality over label pairs")
    p.add_argument("--g", required=True, help="penalty, e.g. sqrt, power:0.5, trunclin:1,2, table:0,1,2")
    p.add_argument("--k", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="all 4^k pairs (default)")
    mode.add_argument("--sampled", type=int, metavar="N", help="N random pairs drawn from --seed")
    p.add_argument("--allow-unvalidated", action="store_true", help="accept non-concave tables")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-violations", type=int, default=1000, help="violations listed in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", parents=[common], help="kappa profile and proof case of a pair")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--g", default="sqrt")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", parents=[common], help="truncated-linear pieces of a penalty")
    p.add_argument("--g", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("minimize", parents=[common], help="minimize an instance document")
    p.add_argument("input")
    p.add_argument("--method", choices=("brute", "cut", "both"), default="cut")
    p.set_defaults(func=cmd_minimize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.output = getattr(args, "output", None)
    args.seed = getattr(args, "seed", 0)
    try:
        doc, code = args.func(args)
    except (UsageError, DisagreementError) as exc:
        print(f"labeldisagree {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(doc, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
