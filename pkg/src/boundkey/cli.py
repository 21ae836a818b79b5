"""Command-line front end: figure sweeps, state analysis, optimization.

Exit codes: 0 success, 1 invalid arguments, 2 numerical failure. All
output is deterministic for a fixed command line and seed; every CSV
starts with a provenance comment echoing the resolved arguments.
"""

import argparse
import json
import os
import sys

from .filtering import FilteredOutError, LocalFilter, apply_filter
from .keyrate import (
    belldiag_blocks,
    belldiag_condition,
    decompose_blocks,
    kdw_of_state,
    pbit_sufficient_condition,
)
from .linalg import JacobiConvergenceError
from .optimize import (
    MODE_FULL,
    MODE_STRUCTURED,
    OptimizationProblem,
    SweepRecord,
    optimize,
    sweep,
)
from .states import FAMILY_DOMAINS, make_family, ppt_report, validate_state

CSV_HEADER = "p,kdw_before,kdw_after,success_prob,effective_rate,a,b,c,d,r,s,t,u"

FIGURE_FAMILIES = {1: "Family1", 2: "Family2", 3: "Family3"}
FIGURE_STEPS = 101

_OPT_MODES = {"structured": MODE_STRUCTURED, "full": MODE_FULL}


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the CLI contract reserves 2 for
    # numerical failures, so remap argument problems to exit code 1
    def error(self, message):
        raise _ArgumentError(message)


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _family_domain(family: int):
    return FAMILY_DOMAINS[FIGURE_FAMILIES[family]]


def _grid(p_min: float, p_max: float, steps: int):
    if steps < 2:
        raise ValueError(f"--steps must be at least 2, got {steps}")
    if p_max < p_min:
        raise ValueError(f"--p-max {p_max} is below --p-min {p_min}")
    width = p_max - p_min
    return [p_min + width * k / (steps - 1) for k in range(steps)]


def _provenance(command: str, pairs) -> str:
    rendered = " ".join(
        f"--{key} {_fmt(v) if isinstance(v, float) else v}" for key, v in pairs
    )
    return f"# provenance: boundkey {command} {rendered}"


def _sweep_records(args):
    lo, hi = _family_domain(args.family)
    p_min = lo if args.p_min is None else args.p_min
    p_max = hi if args.p_max is None else args.p_max
    grid = _grid(p_min, p_max, args.steps)
    if args.filter_mode == "optimal":
        return grid, sweep(args.family, grid, _OPT_MODES[args.opt_mode], args.seed)
    if args.filter_mode == "fixed":
        if args.filter is None:
            raise ValueError("--filter-mode fixed requires --filter '[a,b,c,d,r,s,t,u]'")
        fixed = LocalFilter.from_params(json.loads(args.filter))
    else:
        fixed = None
    records = []
    for p in sorted(grid):
        state = make_family(args.family, p)
        before = kdw_of_state(state).kdw
        if fixed is None:
            # mode "none": the after/filter columns repeat the identity values
            records.append(SweepRecord(p, before, before, 1.0, before, LocalFilter.identity()))
            continue
        filtered = apply_filter(state, fixed)
        after = kdw_of_state(filtered.state).kdw
        records.append(
            SweepRecord(p, before, after, filtered.success_probability,
                        after * filtered.success_probability, fixed)
        )
    return grid, records


def _write_csv(path: str, provenance: str, records):
    lines = [provenance, CSV_HEADER]
    for rec in records:
        fields = [rec.p, rec.kdw_before, rec.kdw_after, rec.success_prob, rec.effective_rate]
        fields.extend(rec.filter.as_tuple())
        lines.append(",".join(_fmt(v) for v in fields))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_sweep(args) -> int:
    grid, records = _sweep_records(args)
    pairs = [
        ("family", args.family),
        ("p-min", float(grid[0])),
        ("p-max", float(grid[-1])),
        ("steps", args.steps),
        ("filter-mode", args.filter_mode),
        ("opt-mode", args.opt_mode),
        ("seed", args.seed),
    ]
    if args.filter is not None:
        pairs.append(("filter", args.filter))
    _write_csv(args.out, _provenance("sweep", pairs), records)
    return 0


def cmd_figures(args) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    figures = [args.fig] if args.fig is not None else [1, 2, 3]
    for fig in figures:
        lo, hi = _family_domain(fig)
        grid = _grid(lo, hi, FIGURE_STEPS)
        records = sweep(fig, grid, _OPT_MODES[args.opt_mode], args.seed)
        pairs = [
            ("fig", fig),
            ("p-min", float(lo)),
            ("p-max", float(hi)),
            ("steps", FIGURE_STEPS),
            ("filter-mode", "optimal"),
            ("opt-mode", args.opt_mode),
            ("seed", args.seed),
        ]
        _write_csv(
            os.path.join(args.out_dir, f"fig{fig}.csv"),
            _provenance("figures", pairs),
            records,
        )
    return 0


def cmd_analyze(args) -> int:
    state = make_family(args.family, args.p)
    validation = validate_state(state)
    ppt = ppt_report(state)
    report = kdw_of_state(state)
    blocks = decompose_blocks(state)
    pbit = pbit_sufficient_condition(blocks)
    belldiag = belldiag_condition(*belldiag_blocks(state))
    doc = {
        "family": state.family,
        "p": state.p,
        "ordering": state.ordering,
        "validation": {
            "trace_residual": validation.trace_residual,
            "min_eigenvalue": validation.min_eigenvalue,
            "hermiticity_residual": validation.hermiticity_residual,
            "ok": validation.ok,
        },
        "ppt": {
            "transposed": ["B", "B'"],
            "R1": {"min_pt_eigenvalue": ppt.min_eig_r1, "ppt": ppt.ppt_r1},
            "R2": {"min_pt_eigenvalue": ppt.min_eig_r2, "ppt": ppt.ppt_r2},
        },
        "key_rate": report.to_json(),
        "pbit_condition": pbit.to_json(),
        "belldiag_condition": belldiag.to_json(),
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def cmd_optimize(args) -> int:
    state = make_family(args.family, args.p)
    problem = OptimizationProblem(state, mode=_OPT_MODES[args.mode])
    result = optimize(problem, seed=args.seed)
    doc = {"family": state.family, "p": state.p, "seed": args.seed}
    doc.update(result.to_json())
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="boundkey",
        description=(
            "Bound-entangled state families, diagonal local filtration, and "
            "one-way distillable key rates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="write a CSV of key rates over a parameter grid")
    sw.add_argument("--family", type=int, choices=(1, 2, 3), required=True)
    sw.add_argument("--p-min", type=float, default=None,
                    help="grid start (default: family domain lower end)")
    sw.add_argument("--p-max", type=float, default=None,
                    help="grid end (default: family domain upper end)")
    sw.add_argument("--steps", type=int, default=50, help="grid size (default 50)")
    sw.add_argument("--filter-mode", choices=("none", "optimal", "fixed"),
                    default="optimal", help="filtering applied per grid point (default optimal)")
    sw.add_argument("--filter", default=None,
                    help="JSON array [a,b,c,d,r,s,t,u] for --filter-mode fixed")
    sw.add_argument("--opt-mode", choices=tuple(_OPT_MODES), default="structured",
                    help="optimizer used by --filter-mode optimal (default structured)")
    sw.add_argument("--seed", type=int, default=0, help="optimizer seed (default 0)")
    sw.add_argument("--out", required=True, help="output CSV path")
    sw.set_defaults(func=cmd_sweep)

    an = sub.add_parser("analyze", help="print a JSON report for one state")
    an.add_argument("--family", type=int, choices=(1, 2, 3), required=True)
    an.add_argument("--p", type=float, required=True)
    an.set_defaults(func=cmd_analyze)

    op = sub.add_parser("optimize", help="optimize the filter for one state")
    op.add_argument("--family", type=int, choices=(1, 2, 3), required=True)
    op.add_argument("--p", type=float, required=True)
    op.add_argument("--mode", choices=tuple(_OPT_MODES), default="structured",
                    help="search mode (default structured)")
    op.add_argument("--seed", type=int, default=0, help="optimizer seed (default 0)")
    op.set_defaults(func=cmd_optimize)

    fg = sub.add_parser("figures", help="write figure-reproduction CSVs")
    fg.add_argument("--fig", type=int, choices=(1, 2, 3), default=None,
                    help="figure number (default: all three)")
    fg.add_argument("--opt-mode", choices=tuple(_OPT_MODES), default="structured",
                    help="optimizer mode (default structured)")
    fg.add_argument("--seed", type=int, default=0, help="optimizer seed (default 0)")
    fg.add_argument("--out-dir", required=True, help="output directory")
    fg.set_defaults(func=cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (JacobiConvergenceError, FilteredOutError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
