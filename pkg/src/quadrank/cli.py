"""Command line interface.

Exit codes: 0 success, 1 invalid parameters, 2 budget exhausted, 3 I/O error.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import arith, construct, definite, indefinite
from .errors import BudgetError, DomainError
from .search import Budgets, SearchBox, TOOL_VERSION, run_search
from .verify import DEFAULT_GROUP_CEILING, verify

POLICY_ALIASES = {
    "strict": construct.STRICT,
    "relaxed": construct.RELAXED_PRIME,
    "relaxed_prime": construct.RELAXED_PRIME,
    "corollary": construct.COROLLARY,
    "proof": construct.PROOF_BOUND,
    "proof_bound": construct.PROOF_BOUND,
    "any": construct.ANY,
}


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None


def _parse_nset(text: str) -> tuple[int, ...]:
    out = []
    for part in filter(None, text.split(",")):
        lo, hi = _parse_range(part)
        out.extend(range(lo, hi + 1))
    return tuple(out)


def _policy(text: str) -> str:
    if text not in POLICY_ALIASES:
        raise argparse.ArgumentTypeError(f"unknown policy {text!r}; choose from {sorted(POLICY_ALIASES)}")
    return POLICY_ALIASES[text]


def _add_params(p: argparse.ArgumentParser) -> None:
    for name in ("a", "b", "c", "n"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--real", action="store_true", help="use the real-quadratic construction")
    p.add_argument("--policy", type=_policy, default=None,
                   help="strict | relaxed | corollary | proof | any (default strict)")
    p.add_argument("--factor-budget", type=int, default=arith.DEFAULT_FACTOR_BUDGET)


def _build(args):
    mode = construct.REAL if args.real else construct.IMAGINARY
    return construct.build(mode, args.a, args.b, args.c, args.n), args.policy or construct.STRICT


def cmd_construct(args) -> int:
    cons, policy = _build(args)
    report = construct.check_hypotheses(cons, policy, args.factor_budget)
    _dump({"construction": cons.as_dict(), "hypothesis": report.as_dict()})
    return 0


def cmd_verify(args) -> int:
    cons, policy = _build(args)
    v = verify(cons, policy, args.factor_budget, full_group=args.full_group, group_ceiling=args.group_budget)
    out = {"construction": cons.as_dict()}
    out.update(v.as_dict())
    _dump(out)
    return 0


def cmd_classgroup(args) -> int:
    D = args.disc
    if D < 0:
        forms = definite.enumerate_reduced(D, args.group_budget)
        G = definite.class_group_structure(D, args.group_budget)
        out = {"disc": D, "h": len(forms), "invariants": G.to_list()}
        if args.forms:
            out["forms"] = [list(f) for f in forms]
    else:
        Gp = indefinite.NarrowClassGroup.build(D, args.group_budget)
        unit = indefinite.fundamental_unit(D)
        out = {
            "disc": D,
            "h_plus": Gp.h_plus,
            "invariants_narrow": Gp.structure().to_list(),
            "invariants_wide": indefinite.wide_class_structure(D, args.group_budget).to_list(),
            "unit_norm": unit.norm,
        }
        if args.forms:
            out["forms"] = [list(f) for f in Gp.reps]
    if args.json:
        _dump(out)
    else:
        for k, v in out.items():
            print(f"{k}: {v}")
    return 0


def cmd_unit(args) -> int:
    u = indefinite.fundamental_unit(args.delta)
    _dump({"t": u.t, "u": u.u, "norm": u.norm, "period": u.period})
    return 0


def cmd_factor(args) -> int:
    if args.N < 1:
        raise DomainError(f"factor needs a positive integer, got {args.N}")
    print(arith.factorize(args.N, args.factor_budget))
    return 0


def cmd_search(args) -> int:
    mode = construct.REAL if args.real else construct.IMAGINARY
    box = SearchBox(args.a, args.b, args.c, args.n, mode)
    budgets = Budgets(args.factor_budget, args.group_budget, args.full_group)
    ckpt = args.checkpoint or (args.resume if args.resume else None)
    summary = run_search(box, args.policy, args.out, budgets, checkpoint_path=ckpt, resume=bool(args.resume),
                         jobs=args.jobs, checkpoint_every=args.checkpoint_every, timings=args.timings)
    sys.stderr.write(json.dumps(summary.as_dict(), separators=(",", ":")) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadrank", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=TOOL_VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a discriminant and check hypotheses")
    _add_params(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="compute the verdict for one instance")
    _add_params(p)
    p.add_argument("--full-group", action="store_true")
    p.add_argument("--group-budget", type=int, default=DEFAULT_GROUP_CEILING)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classgroup", help="class group of a discriminant (sign picks definite/indefinite)")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--structure", action="store_true", help="accepted for compatibility; structure is always reported")
    p.add_argument("--forms", action="store_true", help="list reduced forms / cycle representatives")
    p.add_argument("--json", action="store_true")
    p.add_argument("--group-budget", type=int, default=DEFAULT_GROUP_CEILING)
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("unit", help="fundamental unit of a real quadratic order")
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_unit)

    p = sub.add_parser("factor", help="factor an integer")
    p.add_argument("N", type=int)
    p.add_argument("--factor-budget", type=int, default=arith.DEFAULT_FACTOR_BUDGET)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("search", help="sweep a parameter box into JSONL")
    p.add_argument("--a", type=_parse_range, required=True, help="LO..HI")
    p.add_argument("--b", type=_parse_range, required=True, help="LO..HI")
    p.add_argument("--c", type=_parse_range, required=True, help="LO..HI")
    p.add_argument("--n", type=_parse_nset, required=True, help="comma list, ranges allowed: 2,3,5..7")
    p.add_argument("--real", action="store_true")
    p.add_argument("--policy", type=_policy, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--resume", metavar="CKPT", help="resume from this checkpoint file")
    p.add_argument("--checkpoint", metavar="CKPT", help="write checkpoints here (defaults to --resume path)")
    p.add_argument("--checkpoint-every", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--factor-budget", type=int, default=arith.DEFAULT_FACTOR_BUDGET)
    p.add_argument("--group-budget", type=int, default=DEFAULT_GROUP_CEILING)
    p.add_argument("--full-group", action="store_true")
    p.add_argument("--timings", action="store_true", help="add timing_ms to records (breaks byte-determinism)")
    p.set_defaults(func=cmd_search)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; those are invalid parameters here
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
