"""Command line entry point.

Subcommands:
  run       solve scenarios and write per-scenario CSV output
  parity    cross-scenario appliance parity years
  validate  recompute the bundled headline scenarios against the reference tables
  sweep     re-solve one scenario across a list of carbon budgets

Exit codes: 0 success, 1 configuration or input error, 2 infeasible or
non-convergent optimization. Output is byte-identical across repeat runs
and independent of --parallel.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_appliances
from .emissions import cumulative
from .errors import Infeasible, InfeasibleDispatch, NetzeroError, NoConvergence
from .pipeline import TABLE1_SCENARIOS, parity_results, run_many, run_scenario
from .report import (
    scenario_output_files,
    validate,
    write_parity_csv,
    write_table1_csv,
)
from .scenario import parse_policy_mode
from .svgplot import plot_coal_path, plot_intensity_electrification, plot_parity

_CONFIG_EXIT = 1
_INFEASIBLE_EXIT = 2


def _add_common(p: argparse.ArgumentParser, scenarios: bool = True) -> None:
    if scenarios:
        p.add_argument(
            "--scenario",
            action="append",
            dest="scenarios",
            metavar="NAME_OR_PATH",
            help="bundled scenario name or path to a scenario TOML; repeatable "
            f"(default: {' '.join(TABLE1_SCENARIOS)})",
        )
    p.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    p.add_argument(
        "--data", type=Path, default=None, metavar="DIR",
        help="alternate data directory (overrides NETZERO_DATA_DIR)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netzero", description="Coal phase-out energy system model."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="solve scenarios and write CSV output")
    _add_common(run_p)
    run_p.add_argument(
        "--mode", default=None, metavar="MODE",
        help="policy mode override, netzero:YYYY or budget:GT",
    )
    run_p.add_argument("--annual", action="store_true", help="interpolate CSV rows to every year")
    run_p.add_argument("--plots", action="store_true", help="also write SVG charts")
    run_p.add_argument("--parallel", action="store_true", help="solve scenarios concurrently")

    par_p = sub.add_parser("parity", help="appliance parity years across scenarios")
    _add_common(par_p)
    par_p.add_argument("--parallel", action="store_true", help="solve scenarios concurrently")

    val_p = sub.add_parser("validate", help="compare recomputed output with reference tables")
    _add_common(val_p, scenarios=False)
    val_p.add_argument("--parallel", action="store_true", help="solve scenarios concurrently")

    sweep_p = sub.add_parser("sweep", help="re-solve one scenario across carbon budgets")
    _add_common(sweep_p, scenarios=False)
    sweep_p.add_argument(
        "--scenario", default="medium", metavar="NAME_OR_PATH",
        help="scenario to sweep (default: medium)",
    )
    sweep_p.add_argument(
        "--budgets", default="140,167,200,250", metavar="GT,GT,...",
        help="comma-separated cumulative CO2 budgets in Gt",
    )
    return parser


def _scenario_list(args) -> list[str]:
    return list(args.scenarios) if args.scenarios else list(TABLE1_SCENARIOS)


def _cmd_run(args) -> int:
    mode = parse_policy_mode(args.mode) if args.mode else None
    runs = run_many(_scenario_list(args), mode=mode, data_root=args.data,
                    parallel=args.parallel)
    parity = parity_results(runs, data_root=args.data)
    for name in sorted(runs):
        run = runs[name]
        files = scenario_output_files(run, args.out, parity, annual=args.annual)
        if args.plots:
            folder = args.out / name
            (folder / "coal_path.svg").write_text(plot_coal_path(run), encoding="utf-8")
            (folder / "intensity_electrification.svg").write_text(
                plot_intensity_electrification(run), encoding="utf-8"
            )
            files += [folder / "coal_path.svg", folder / "intensity_electrification.svg"]
        print(f"{name}: wrote {len(files)} files to {args.out / name}")
    if mode is None and all(s in runs for s in TABLE1_SCENARIOS):
        write_table1_csv(runs, args.out / "table1.csv")
        print(f"table1: wrote {args.out / 'table1.csv'}")
    if args.plots:
        for app in load_appliances(args.data):
            target = args.out / f"parity_{app.name}.svg"
            target.write_text(plot_parity(runs, app), encoding="utf-8")
            print(f"plot: wrote {target}")
    return 0


def _cmd_parity(args) -> int:
    runs = run_many(_scenario_list(args), data_root=args.data, parallel=args.parallel)
    parity = parity_results(runs, data_root=args.data)
    target = args.out / "parity.csv"
    write_parity_csv(parity, target)
    print(f"wrote {target}")
    for r in parity:
        for name in sorted(r.parity_years):
            print(f"{r.appliance:>18s}  {name:<10s} {_parity_word(r.parity_years[name])}")
    return 0


def _parity_word(year) -> str:
    from .parity import AlreadyReached, Never

    if isinstance(year, AlreadyReached):
        return f"reached by {year.start_year}"
    if isinstance(year, Never):
        return "never within horizon"
    return str(year)


def _cmd_validate(args) -> int:
    runs = run_many(list(TABLE1_SCENARIOS), data_root=args.data, parallel=args.parallel)
    report = validate(runs, data_root=args.data)
    within = sum(1 for c in report.comparisons if c.within)
    excepted = sum(1 for c in report.comparisons if c.excepted)
    print(f"{len(report.comparisons)} cells compared, {within} within tolerance, "
          f"{excepted} known exceptions")
    for c in report.failures():
        print(f"FAIL {c.table} {c.scenario} {c.year} {c.field}: "
              f"expected {c.expected} got {c.actual}")
    if report.passed:
        print("validation passed")
        return 0
    print("validation failed", file=sys.stderr)
    return 1


def _cmd_sweep(args) -> int:
    try:
        budgets = [float(tok) for tok in args.budgets.split(",") if tok.strip()]
    except ValueError:
        print(f"error: bad budget list {args.budgets!r}", file=sys.stderr)
        return _CONFIG_EXIT
    if not budgets:
        print("error: no budgets supplied", file=sys.stderr)
        return _CONFIG_EXIT

    rows = []
    for b in budgets:
        mode = parse_policy_mode(f"budget:{b:g}")
        run = run_scenario(args.scenario, mode=mode, data_root=args.data)
        plan = run.plan
        last = plan.co2_price.last_year
        cdr_total = cumulative(plan.cdr, plan.cdr.first_year, plan.cdr.last_year)
        rows.append((b, plan.objective, plan.co2_price.value_at(last), cdr_total))

    args.out.mkdir(parents=True, exist_ok=True)
    target = args.out / "sweep.csv"
    header = "budget_gt,objective_bn_usd,co2_price_final_usd_t,cdr_cum_gt"
    lines = [header] + [
        f"{b:g},{obj:.2f},{price:.2f},{cdr:.3f}" for b, obj, price, cdr in rows
    ]
    target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {target}")
    for b, obj, price, cdr in rows:
        print(f"budget {b:g} Gt: cost {obj:.1f} $B, final CO2 price {price:.1f} $/t, "
              f"CDR {cdr:.2f} Gt")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "parity": _cmd_parity,
    "validate": _cmd_validate,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (Infeasible, InfeasibleDispatch, NoConvergence) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _INFEASIBLE_EXIT
    except NetzeroError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _CONFIG_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _CONFIG_EXIT


if __name__ == "__main__":
    sys.exit(main())
