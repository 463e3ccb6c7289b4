"""Command-line interface.

Subcommands: analyze, select, verify, simulate, export-dot.  Exit codes:
0 success, 1 negative verdict (analyze: not zero controllable; verify:
agreement below the threshold), 2 usage or input errors.  The primary stream
only ever receives complete documents; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .dotexport import export_dot
from .drivers import (
    DEFAULT_EXACT_CAP,
    build_b_pattern,
    enumerate_minimal_driver_sets,
    greedy_driver_set,
    minimal_driver_set,
    validate_driver_set,
)
from .fileio import PatternFormatError, parse_pattern_file
from .graph import build_graph, scc_decompose
from .numeric import DEFAULT_BASE_SEED, deadbeat_steer, monte_carlo_verify, sample_realization
from .patterns import PatternMatrix
from .reports import (
    b_pattern_to_dict,
    driver_set_to_dict,
    render_b_pattern,
    render_driver_set,
    render_stats,
    render_steering,
    render_zc_report,
    stats_to_dict,
    steering_to_dict,
    zc_report_to_dict,
)
from .structural import is_generically_zero_controllable

DEFAULT_MIN_AGREEMENT = 0.95


def _load_patterns(path: str) -> tuple[PatternMatrix, PatternMatrix | None]:
    text = Path(path).read_text(encoding="utf-8")
    return parse_pattern_file(text)


def _parse_drivers(raw: str) -> list[str]:
    names = []
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name = chunk if chunk.startswith("x") else f"x{chunk}"
        names.append(name)
    if not names:
        raise ValueError("empty driver list")
    return names


def _resolve_input_pattern(args, pattern_a, pattern_b):
    """File-provided input pattern, or one synthesized from --drivers."""
    if getattr(args, "drivers", None):
        if pattern_b is not None:
            raise ValueError(
                "the file already declares an input pattern; drop --drivers or the b-entries"
            )
        mode = "per_driver" if args.b_mode == "per-driver" else "shared"
        names = _parse_drivers(args.drivers)
        return build_b_pattern(pattern_a.n_rows, names, mode).pattern
    return pattern_b


def _emit(args, text_doc: str, json_doc: dict) -> None:
    if args.format == "json":
        print(json.dumps(json_doc, indent=2, sort_keys=True))
    else:
        print(text_doc)


def _cmd_analyze(args) -> int:
    pattern_a, pattern_b = _load_patterns(args.file)
    report = is_generically_zero_controllable(pattern_a, pattern_b)
    _emit(args, render_zc_report(report), {"command": "analyze", "report": zc_report_to_dict(report)})
    return 0 if report.verdict else 1


def _cmd_select(args) -> int:
    pattern_a, pattern_b = _load_patterns(args.file)
    if pattern_b is not None:
        print("note: driver selection works on the state pattern; input entries ignored",
              file=sys.stderr)
    mode = "per_driver" if args.b_mode == "per-driver" else "shared"

    if args.greedy:
        chosen = greedy_driver_set(pattern_a)
        enumeration = None
    elif args.enumerate:
        enumeration = enumerate_minimal_driver_sets(
            pattern_a, limit=args.limit, exact_cap=args.exact_cap
        )
        chosen = enumeration[0]
    else:
        chosen = minimal_driver_set(pattern_a, exact_cap=args.exact_cap)
        enumeration = None

    bp = build_b_pattern(pattern_a.n_rows, chosen.drivers, mode)
    sections = [render_driver_set(chosen)]
    if enumeration is not None:
        listing = ["all minimum driver sets" + (f" (limit {args.limit})" if len(enumeration) >= args.limit else "") + ":"]
        for ds in enumeration:
            listing.append("  {" + " ".join(ds.sorted_drivers()) + "}")
        sections.append("\n".join(listing))
    if chosen.drivers:
        sections.append(render_b_pattern(bp))
    doc = {
        "command": "select",
        "driver_set": driver_set_to_dict(chosen),
        "b_pattern": b_pattern_to_dict(bp),
    }
    if enumeration is not None:
        doc["enumeration"] = [driver_set_to_dict(ds) for ds in enumeration]
    _emit(args, "\n\n".join(sections), doc)
    return 0


def _cmd_verify(args) -> int:
    pattern_a, pattern_b = _load_patterns(args.file)
    pattern_b = _resolve_input_pattern(args, pattern_a, pattern_b)
    stats = monte_carlo_verify(
        pattern_a,
        pattern_b,
        trials=args.trials,
        base_seed=args.seed,
        tol=args.tol,
        check_controllability=args.check_controllability,
    )
    _emit(args, render_stats(stats), {"command": "verify", "stats": stats_to_dict(stats)})
    return 0 if stats.agreement_fraction >= args.min_agreement else 1


def _cmd_simulate(args) -> int:
    pattern_a, pattern_b = _load_patterns(args.file)
    pattern_b = _resolve_input_pattern(args, pattern_a, pattern_b)
    n = pattern_a.n_rows
    horizon = args.horizon if args.horizon is not None else n
    realization = sample_realization(pattern_a, pattern_b, args.seed)
    if args.x0 == "random":
        rng = np.random.default_rng(args.seed + 1)
        x0 = rng.standard_normal(n)
        norm = float(np.linalg.norm(x0))
        if norm > 0:
            x0 = x0 / norm
    else:
        values = [float(v) for v in args.x0.split(",")]
        if len(values) != n:
            raise ValueError(f"--x0 needs {n} comma-separated values, got {len(values)}")
        x0 = np.array(values)
    result = deadbeat_steer(realization, x0, horizon)
    doc = {
        "command": "simulate",
        "seed": args.seed,
        "steering": steering_to_dict(result),
    }
    _emit(args, render_steering(result), doc)
    return 0


def _cmd_export_dot(args) -> int:
    pattern_a, pattern_b = _load_patterns(args.file)
    report = None
    if getattr(args, "drivers", None):
        names = _parse_drivers(args.drivers)
        report = validate_driver_set(pattern_a, names)
        graph = build_graph(pattern_a)
    else:
        graph = build_graph(pattern_a, pattern_b)
        if pattern_b is not None:
            report = is_generically_zero_controllable(pattern_a, pattern_b)
    scc = scc_decompose(graph)
    print(export_dot(graph, scc, report), end="")
    return 0


def _add_format(parser) -> None:
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zerocontrol",
        description=(
            "Decide from the zero/nonzero structure alone whether a sparse "
            "discrete-time linear system can be steered to the zero state, "
            "select driver nodes that make it so, and cross-check verdicts "
            "numerically."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="generic zero-controllability verdict")
    p.add_argument("file", help="pattern file")
    _add_format(p)
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("select", help="driver-node selection")
    p.add_argument("file", help="pattern file (state pattern only is used)")
    p.add_argument("--enumerate", action="store_true", help="list all minimum driver sets")
    p.add_argument("--limit", type=int, default=100, help="cap on enumerated sets")
    p.add_argument("--greedy", action="store_true", help="use the greedy heuristic only")
    p.add_argument(
        "--b-mode",
        choices=("shared", "per-driver"),
        default="per-driver",
        help="shape of the induced input pattern",
    )
    p.add_argument(
        "--exact-cap",
        type=int,
        default=DEFAULT_EXACT_CAP,
        help="max candidate components for the exact search",
    )
    _add_format(p)
    p.set_defaults(handler=_cmd_select)

    p = sub.add_parser("verify", help="Monte Carlo check of the structural verdict")
    p.add_argument("file", help="pattern file")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_BASE_SEED)
    p.add_argument("--tol", type=float, default=1e-8, help="eigenvalue nonzero threshold scale")
    p.add_argument(
        "--drivers", help="comma-separated driver states (e.g. x4,x8) to synthesize inputs"
    )
    p.add_argument(
        "--b-mode", choices=("shared", "per-driver"), default="per-driver",
        help="input shape used with --drivers",
    )
    p.add_argument(
        "--min-agreement",
        type=float,
        default=DEFAULT_MIN_AGREEMENT,
        help="agreement fraction below which the exit code is 1",
    )
    p.add_argument(
        "--check-controllability",
        action="store_true",
        help="also compare plain controllability verdicts",
    )
    _add_format(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("simulate", help="deadbeat steering on a sampled realization")
    p.add_argument("file", help="pattern file")
    p.add_argument("--x0", default="random", help="'random' or comma-separated start state")
    p.add_argument("--horizon", type=int, default=None, help="steering horizon (default n)")
    p.add_argument("--seed", type=int, default=DEFAULT_BASE_SEED)
    p.add_argument(
        "--drivers", help="comma-separated driver states to synthesize inputs"
    )
    p.add_argument(
        "--b-mode", choices=("shared", "per-driver"), default="per-driver",
        help="input shape used with --drivers",
    )
    _add_format(p)
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("export-dot", help="Graphviz rendering of the system graph")
    p.add_argument("file", help="pattern file")
    p.add_argument(
        "--drivers", help="mark these states as drivers and color reachability from them"
    )
    p.set_defaults(handler=_cmd_export_dot)

    return parser


def run_cli(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.handler(args)
    except (OSError, PatternFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
