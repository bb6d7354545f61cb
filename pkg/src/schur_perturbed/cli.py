"""Command line entry point: ``schur-perturbed <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .core import BudgetExceeded, TriplePolicy, format_set, read_set
from .decider import decide_with_budget
from .family import as_fraction, build_triple_family, find_gadget_in_perturbed, popular_steps
from .gadget import build_gadget, verify_gadget_ramsey
from .moments import chebyshev_zero_bound
from .perturb import SampleSpec, sample_np
from .scan import ScanConfig, emit_csv, emit_plot_script, format_csv, run_scan


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _out(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_verify_gadget(args) -> int:
    g = build_gadget(args.x, args.y, args.d, args.n)
    verdict = verify_gadget_ramsey(g, args.policy)
    _out(_dump({"gadget": g.to_json(), "policy": args.policy.value, **verdict.to_json()}), args.out)
    return 0


def cmd_decide(args) -> int:
    S = read_set(args.set_file)
    decision = decide_with_budget(S, args.policy, args.budget)
    _out(_dump({"n": S.n, "size": len(S), "policy": args.policy.value, **decision.to_json()}), args.out)
    return 0


def cmd_sample(args) -> int:
    spec = SampleSpec(args.n, float(Fraction(args.p)), args.seed, args.index)
    R = sample_np(spec)
    if args.json:
        text = _dump({"n": R.n, "p": args.p, "seed": args.seed, "index": args.index, "members": list(R.elements)})
    else:
        text = format_set(R)
    _out(text, args.out)
    return 0


def cmd_popular_steps(args) -> int:
    A = read_set(args.set_file)
    _out(_dump(popular_steps(A, args.epsilon).to_json()), args.out)
    return 0


def cmd_family(args) -> int:
    A = read_set(args.set_file)
    fam = build_triple_family(A, args.epsilon)
    if args.json:
        triples = []
        for t in fam.triples:
            ws = fam.witnesses(t)
            rec = {"triple": list(t), "witness_count": len(ws)}
            if args.emit_witnesses:
                rec["witnesses"] = [list(w) for w in ws]
            triples.append(rec)
        text = _dump({"n": A.n, "epsilon": str(fam.epsilon), "size": len(fam), "triples": triples})
    else:
        lines = ["a,b,c,witness_count" + (",witnesses" if args.emit_witnesses else "")]
        for t in fam.triples:
            ws = fam.witnesses(t)
            line = f"{t.a},{t.b},{t.c},{len(ws)}"
            if args.emit_witnesses:
                line += "," + ";".join(f"{x}:{y}:{d}" for x, y, d in ws)
            lines.append(line)
        text = "\n".join(lines) + "\n"
    _out(text, args.out)
    return 0


def cmd_find_gadget(args) -> int:
    A = read_set(args.a_file)
    U = read_set(args.u_file, n=A.n)
    try:
        g = find_gadget_in_perturbed(A, U, args.epsilon, args.budget)
    except BudgetExceeded as exc:
        record = {"status": "budget-exceeded", "work_done": exc.work_done, "gadget": None}
    else:
        record = {"status": "found" if g else "none", "gadget": g.to_json() if g else None}
    _out(_dump(record), args.out)
    return 0


def cmd_moments(args) -> int:
    A = read_set(args.set_file)
    fam = build_triple_family(A, args.epsilon)
    p = Fraction(args.p) if args.exact else float(Fraction(args.p))
    report = chebyshev_zero_bound(fam, p)
    _out(_dump({"epsilon": str(fam.epsilon), "exact": args.exact, **report.to_json()}), args.out)
    return 0


def cmd_scan(args) -> int:
    cfg = ScanConfig(
        n=args.n,
        c_grid=tuple(float(c) for c in args.c_grid.split(",")),
        samples=args.samples,
        base=args.base,
        base_file=args.base_file,
        epsilon=args.epsilon,
        master_seed=args.seed,
        policy=args.policy,
        gadget_budget=args.budget,
    )
    rows = run_scan(cfg)
    if args.json:
        _out(_dump({"config": _config_json(cfg), "rows": [r.to_json() for r in rows]}), args.out)
    elif args.out:
        emit_csv(rows, args.out)
    else:
        sys.stdout.write(format_csv(rows))
    if args.plot:
        emit_plot_script(rows, args.plot, csv_path=args.out or "scan.csv")
    return 0


def _config_json(cfg: ScanConfig) -> dict:
    return {
        "n": cfg.n,
        "c_grid": list(cfg.c_grid),
        "samples": cfg.samples,
        "base": cfg.base,
        "base_file": cfg.base_file,
        "epsilon": str(cfg.epsilon),
        "master_seed": cfg.master_seed,
        "policy": cfg.policy.value,
        "gadget_budget": cfg.gadget_budget,
    }


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # subcommands suppress their defaults so flags given before the subcommand survive
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--seed", type=int, default=default(0), help="master seed")
    parser.add_argument(
        "--policy", type=TriplePolicy.parse, default=default(TriplePolicy.SCHUR), help="schur or weak-schur"
    )
    parser.add_argument("--json", action="store_true", default=default(False), help="JSON output")
    parser.add_argument("--config", default=default(None), help="JSON file of option defaults")
    parser.add_argument("--out", default=default(None), help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, suppress=True)
    parser = argparse.ArgumentParser(
        prog="schur-perturbed",
        description="Schur triples in randomly perturbed dense sets of integers.",
    )
    _add_global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-gadget", parents=[common], help="exhaustively 2-color L(x,y,d)")
    for name in ("x", "y", "d", "n"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_verify_gadget)

    p = sub.add_parser("decide", parents=[common], help="decide 2-Schur-Ramsey-ness of a set")
    p.add_argument("--set-file", required=True)
    p.add_argument("--budget", type=int, default=10**6, help="search node budget")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("sample", parents=[common], help="draw [n]_p")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True, help="probability as a decimal or a/b string")
    p.add_argument("--index", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("popular-steps", parents=[common], help="steps with >= eps*n 4APs")
    p.add_argument("--set-file", required=True)
    p.add_argument("--epsilon", type=as_fraction, required=True)
    p.set_defaults(func=cmd_popular_steps)

    p = sub.add_parser("family", parents=[common], help="Schur-triple family from 4AP pairs (CSV)")
    p.add_argument("--set-file", required=True)
    p.add_argument("--epsilon", type=as_fraction, required=True)
    p.add_argument("--emit-witnesses", action="store_true")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("find-gadget", parents=[common], help="look for a gadget in A u R")
    p.add_argument("--a-file", required=True)
    p.add_argument("--u-file", required=True)
    p.add_argument("--epsilon", type=as_fraction, required=True)
    p.add_argument("--budget", type=int, default=None, help="candidate Schur parts to examine")
    p.set_defaults(func=cmd_find_gadget)

    p = sub.add_parser("moments", parents=[common], help="exact second-moment report")
    p.add_argument("--set-file", required=True)
    p.add_argument("--epsilon", type=as_fraction, required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--exact", action="store_true", help="rational arithmetic")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("scan", parents=[common], help="Monte Carlo threshold scan (CSV)")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--base", choices=("half-interval", "full", "file"), default="half-interval")
    p.add_argument("--base-file", default=None)
    p.add_argument("--epsilon", type=as_fraction, default=Fraction(1, 24))
    p.add_argument("--c-grid", default="0.25,0.5,1,2,4,8,16,32", help="comma separated c values")
    p.add_argument("--samples", type=int, default=200, help="samples per grid point")
    p.add_argument("--budget", type=int, default=None, help="per-sample gadget search budget")
    p.add_argument("--plot", default=None, help="also write a gnuplot script here")
    p.set_defaults(func=cmd_scan)
    return parser


_CONFIG_ALIASES = {"master_seed": "seed", "gadget_budget": "budget"}


def _apply_config(parser: argparse.ArgumentParser, argv) -> argparse.Namespace:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    config_path = pre.parse_known_args(argv)[0].config
    if not config_path:
        return parser.parse_args(argv)
    data = json.loads(Path(config_path).read_text())
    if not isinstance(data, dict):
        raise ValueError("--config must hold a JSON object")
    choices = parser._subparsers._group_actions[0].choices
    command = next((tok for tok in argv if tok in choices), None)
    if command is None:
        return parser.parse_args(argv)
    # config values act as defaults; explicit flags still win
    defaults = {}
    for key, value in data.items():
        key = key.replace("-", "_")
        defaults[_CONFIG_ALIASES.get(key, key)] = value
    if isinstance(defaults.get("c_grid"), list):
        defaults["c_grid"] = ",".join(str(c) for c in defaults["c_grid"])
    globals_ = {k: defaults.pop(k) for k in ("seed", "policy", "json", "out") if k in defaults}
    parser.set_defaults(**globals_)
    subparser = choices[command]
    subparser.set_defaults(**defaults)
    for action in subparser._actions:
        if action.dest in defaults:
            action.required = False
    args = parser.parse_args(argv)
    args.policy = TriplePolicy.parse(args.policy)
    if "epsilon" in defaults and not isinstance(args.epsilon, Fraction):
        args.epsilon = as_fraction(args.epsilon)
    return args


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
