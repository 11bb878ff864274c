"""Command-line front end.

Verbs: analyze (structure report), build (extended formulation), verify
(build + exhaustive certification), export (LP text only), demo (the three
showcase instances end to end). The exit status is 0 exactly when every
requested check passes. ``PBP_LOG`` controls log verbosity (DEBUG, INFO,
WARNING, ...).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from .acyclicity import (
    CapExceeded,
    alpha_elimination_order,
    beta_cycle_support_components,
    beta_elimination_order,
    enumerate_beta_cycles,
    gap,
)
from .core import (
    SignedHypergraph,
    rank,
    signed_hypergraph_from_json,
    underlying_hypergraph,
)
from .formulation import Strategy, StrategyInapplicable, rid_build
from .instances import ladder_cycle, mixed_sign_chain, two_cycle_components
from .oracle import verify_hull

log = logging.getLogger("pbpoly")


def _configure_logging() -> None:
    level = os.environ.get("PBP_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def _load(path: str) -> SignedHypergraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SystemExit(f"cannot read {path}: {exc}")
    try:
        return signed_hypergraph_from_json(text)
    except ValueError as exc:
        raise SystemExit(f"{path}: {exc}")


def _strategy(args: argparse.Namespace) -> Strategy:
    return Strategy(kind=args.strategy, gap_max=args.gap_max,
                    cycle_cap=args.cycle_cap)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_analyze(args: argparse.Namespace) -> int:
    H = _load(args.input)
    G = underlying_hypergraph(H)
    beta = beta_elimination_order(G)
    alpha = alpha_elimination_order(G)
    result = {
        "nodes": len(H.nodes),
        "edges": len(H.edges),
        "rank": rank(H),
        "beta_acyclic": beta.complete,
        "beta_order": list(beta.order),
        "alpha_acyclic": alpha.complete,
        "alpha_order": list(alpha.order),
    }
    try:
        cycles = enumerate_beta_cycles(G, args.cycle_cap)
        result["beta_cycles"] = len(cycles)
        components = beta_cycle_support_components(G, args.cycle_cap)
        result["cycle_components"] = [
            {"nodes": sorted(nodes), "edges": sorted(map(sorted, edges)),
             "gap": gap(edges).gap}
            for nodes, edges in components
        ]
    except CapExceeded as exc:
        result["beta_cycles"] = f"more than {exc.count}"
    _write(json.dumps(result, indent=2) + "\n", args.out)
    return 0


def _build_formulation(args: argparse.Namespace, H: SignedHypergraph):
    try:
        return rid_build(H, _strategy(args))
    except (StrategyInapplicable, CapExceeded) as exc:
        raise SystemExit(f"strategy inapplicable: {exc}")


def _cmd_build(args: argparse.Namespace) -> int:
    H = _load(args.input)
    EF = _build_formulation(args, H)
    log.info("built %s: %d variables, %d rows", EF.report.strategy,
             EF.report.n_vars, EF.report.n_rows)
    if args.format == "lp":
        _write(EF.to_lp_text(), args.out)
    else:
        _write(EF.to_json() + "\n", args.out)
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    H = _load(args.input)
    EF = _build_formulation(args, H)
    text = EF.to_json() if args.format == "json" else EF.to_lp_text()
    _write(text, args.out)
    return 0


def _report_lines(name: str, report) -> str:
    verdict = "PASS" if report.all_pass else "FAIL"
    lines = [f"{name}: {verdict} ({report.trials} objectives, "
             f"{report.lift_checked} lifts)"]
    if report.failure:
        lines.append(f"  failure: {report.failure}")
    return "\n".join(lines)


def _cmd_verify(args: argparse.Namespace) -> int:
    H = _load(args.input)
    EF = _build_formulation(args, H)
    report = verify_hull(H, EF, trials=args.trials, seed=args.seed)
    payload = {
        "strategy": EF.report.strategy,
        "n_vars": EF.report.n_vars,
        "n_rows": EF.report.n_rows,
        "bounds_ok": EF.report.bounds_ok,
        "trials": report.trials,
        "lift_checked": report.lift_checked,
        "all_pass": report.all_pass,
        "failure": report.failure,
    }
    _write(json.dumps(payload, indent=2, default=str) + "\n", args.out)
    return 0 if report.all_pass else 1


def _cmd_demo(args: argparse.Namespace) -> int:
    cases = [
        ("ladder cycle (n=3), gap_maximal",
         ladder_cycle(3).H, Strategy(kind="gap_maximal")),
        ("two cycle components (n=12), gap_cycles",
         two_cycle_components(12), Strategy(kind="gap_cycles")),
        ("mixed-sign chain (n=5), beta",
         mixed_sign_chain(5), Strategy(kind="beta")),
    ]
    ok = True
    for name, H, strategy in cases:
        EF = rid_build(H, strategy)
        report = verify_hull(H, EF, trials=args.trials, seed=args.seed)
        print(_report_lines(name, report))
        ok = ok and report.all_pass
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = argparse.ArgumentParser(
        prog="pbpoly",
        description="Exact extended formulations for pseudo-Boolean "
                    "polytopes of signed hypergraphs.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
        if needs_input:
            p.add_argument("input", help="instance JSON file")
        p.add_argument("--strategy", default="auto",
                       choices=list(Strategy.KINDS))
        p.add_argument("--trials", type=int, default=50)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cycle-cap", type=int, default=10_000)
        p.add_argument("--gap-max", type=int, default=12)
        p.add_argument("--out", default=None)
        p.add_argument("--format", default="json", choices=["lp", "json"])

    for verb, fn in [("analyze", _cmd_analyze), ("build", _cmd_build),
                     ("verify", _cmd_verify), ("export", _cmd_export)]:
        p = sub.add_parser(verb)
        common(p)
        p.set_defaults(fn=fn)
    p = sub.add_parser("demo")
    common(p, needs_input=False)
    p.set_defaults(fn=_cmd_demo)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
