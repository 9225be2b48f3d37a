"""Acceptance battery for the calibrated model.

Every test checks one headline property end to end and always prints a
single PASS/FAIL line to the terminal, so running this module reads as a
checklist. Tolerances are part of the contract and are asserted exactly
as stated in each line.
"""

import time

import pytest

from test_expansion import TOYS, cost_model, coal_free_scenario, exhaustive_best, params, tech

from netzero.config import load_reference_table1, load_reference_table_s1
from netzero.emissions import budget_share, cumulative
from netzero.expansion import plan_expansion
from netzero.parity import AlreadyReached
from netzero.pipeline import (
    annual_economy_rate,
    cumulative_summary,
    parity_results,
    run_many,
)
from netzero.power import generation_from_capacity
from netzero.report import validate
from netzero.timegrid import NodeSeries

HEADLINE = ("fast", "medium", "slow", "plateau30")


def check(capsys, name: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n{name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


def as_year(value) -> int:
    return value.start_year if isinstance(value, AlreadyReached) else int(value)


def test_criterion_1_reference_tables_and_runtime(capsys):
    t0 = time.perf_counter()
    runs = run_many(list(HEADLINE))
    elapsed = time.perf_counter() - t0
    report = validate(runs)
    n_bad = len(report.failures())
    ok = report.passed and elapsed < 10.0
    check(
        capsys, "criterion 1: published coal-path cells, <10s",
        ok, f"{n_bad} cells out of tolerance, {elapsed:.2f}s for four scenarios",
    )


def test_criterion_2_capacity_identity(capsys):
    t1 = load_reference_table1()
    s1 = load_reference_table_s1()
    worst, n = 0.0, 0
    for scen in ("fast", "slow", "plateau30"):
        for year, row in s1[scen].items():
            if year not in t1[scen]:
                continue
            cf = (row.capacity_factor_pct or 0.0) / 100.0
            gen = generation_from_capacity(row.capacity_gw, cf)
            ref = t1[scen][year].generation_twh
            if ref == 0.0:
                assert gen == 0.0
                continue
            worst = max(worst, abs(gen - ref) / ref)
            n += 1
    ok = worst <= 0.035 and n >= 10
    check(
        capsys, "criterion 2: capacity x cf identity vs published generation",
        ok, f"worst relative error {100 * worst:.2f}% over {n} cells",
    )


def test_criterion_3_cumulative_gaps(capsys, runs4):
    def coal_cum(run):
        gt = run.plan.generation.generation["coal"].map(lambda twh: twh * 0.9 / 1000.0)
        return cumulative(gt, 2023, 2060)

    fast = coal_cum(runs4["fast"])
    gap = coal_cum(runs4["slow"]) - fast
    s150 = budget_share(83.0, 150.0)
    s950 = budget_share(83.0, 950.0)
    ok = (
        30.0 <= fast <= 40.0
        and 38.0 <= gap <= 48.0
        and round(s150, 1) == 55.3
        and round(s950, 1) == 8.7
    )
    check(
        capsys, "criterion 3: cumulative coal CO2 and budget shares",
        ok, f"fast {fast:.1f} Gt, slow-fast gap {gap:.1f} Gt, 83 Gt = "
            f"{s150:.1f}% of 150 / {s950:.1f}% of 950",
    )


def test_criterion_4_electrification_convergence(capsys, runs4):
    r2021 = [annual_economy_rate(r, 2021) for r in runs4.values()]
    r2030 = [annual_economy_rate(r, 2030) for r in runs4.values()]
    r2060 = [annual_economy_rate(r, 2060) for r in runs4.values()]
    ok = (
        all(58.0 <= v <= 64.0 for v in r2060)
        and max(r2060) - min(r2060) <= 2.0
        and all(26.0 <= v <= 28.0 for v in r2021)
        and max(r2030) - min(r2030) <= 2.0
    )
    check(
        capsys, "criterion 4: economy electrification anchors",
        ok, f"2021 {min(r2021):.1f}-{max(r2021):.1f}%, 2030 spread "
            f"{max(r2030) - min(r2030):.2f}pp, 2060 {min(r2060):.1f}-{max(r2060):.1f}%",
    )


def test_criterion_5_parity_windows(capsys, runs4):
    res = {r.appliance: r.parity_years for r in parity_results(runs4)}
    bev = res["bev_ldv"]
    boiler = {s: as_year(v) for s, v in res["resistive_boiler_heat"].items()}
    h2 = {s: as_year(v) for s, v in res["h2_dri_eaf_steel"].items()}
    pump = {s: as_year(v) for s, v in res["heat_pump_heat"].items()}
    shifts = [late["slow"] - late["fast"] for late in (boiler, h2)]
    ok = (
        all(isinstance(v, AlreadyReached) and v.start_year in (2023, 2024)
            for v in bev.values())
        and all(2028 <= y <= 2034 for y in boiler.values())
        and all(2029 <= y <= 2034 for y in h2.values())
        and all(pump[s] <= boiler[s] for s in runs4)
        and all(4 <= d <= 6 for d in shifts)
    )
    check(
        capsys, "criterion 5: appliance parity windows",
        ok, f"BEV at start, boiler {sorted(boiler.values())}, "
            f"H2-DRI {sorted(h2.values())}, fast-to-slow shifts {shifts}",
    )


def test_criterion_6a_toy_optimizer_oracle(capsys):
    worst = 0.0
    for spec_rows, demand_pts in TOYS:
        years = tuple(y for y, _ in demand_pts)
        tech_params = [
            params(tech(tid, vc, capex, cf), initial=initial, seed=seed)
            for tid, vc, capex, cf, initial, seed in spec_rows
        ]
        costs = cost_model(tech_params)
        demand = NodeSeries(demand_pts)
        plan = plan_expansion(coal_free_scenario(years), demand, costs)
        grid_best = exhaustive_best(demand, costs, years)
        assert plan.objective <= grid_best + 1e-6
        worst = max(worst, (grid_best - plan.objective) / grid_best)
    ok = worst <= 0.01
    check(
        capsys, "criterion 6a: planner matches exhaustive search on toys",
        ok, f"worst objective gap {100 * worst:.3f}% over {len(TOYS)} toys",
    )


def test_criterion_6b_price_orderings(capsys, runs4):
    fast = runs4["fast"].plan.electricity_price
    slow = runs4["slow"].plan.electricity_price
    ok = (
        fast.value_at(2030) > slow.value_at(2030)
        and fast.value_at(2055) < slow.value_at(2055)
    )
    check(
        capsys, "criterion 6b: scarcity-then-learning price crossover",
        ok, f"2030 fast {fast.value_at(2030):.1f} vs slow {slow.value_at(2030):.1f}, "
            f"2055 fast {fast.value_at(2055):.1f} vs slow {slow.value_at(2055):.1f} $/MWh",
    )


def test_criterion_6c_budget_mode_orderings(capsys, budget_runs):
    fast, slow = budget_runs["fast"], budget_runs["slow"]
    p_fast = fast.plan.co2_price.value_at(2060)
    p_slow = slow.plan.co2_price.value_at(2060)
    cdr_fast = cumulative(fast.plan.cdr, 2030, 2060)
    cdr_slow = cumulative(slow.plan.cdr, 2030, 2060)
    ok = p_slow > p_fast and cdr_slow > cdr_fast
    check(
        capsys, "criterion 6c: 167 Gt budget penalizes the slow exit",
        ok, f"2060 CO2 price slow {p_slow:.0f} vs fast {p_fast:.0f} $/t, "
            f"post-2030 removals slow {cdr_slow:.1f} vs fast {cdr_fast:.1f} Gt",
    )


def test_criterion_7_temperature_spread(capsys, runs4):
    dts = [cumulative_summary(r, 2050).delta_t_c for r in runs4.values()]
    spread = max(dts) - min(dts)
    ok = 0.005 <= spread <= 0.03
    check(
        capsys, "criterion 7: 2050 warming spread across scenarios",
        ok, f"{spread:.4f} degC between extremes",
    )


def test_criterion_8_ledger_properties(capsys, runs4):
    fast = runs4["fast"]
    economy = fast.ledger.economy_series()
    whole = cumulative(economy, 2023, 2060)
    parts = cumulative(economy, 2023, 2040) + cumulative(economy, 2040, 2060)
    additivity = abs(whole - parts) / whole

    riemann = 0.0
    for y in range(2023, 2060):
        for m in range(12):
            riemann += fast.ledger.power.interp(y + (m + 0.5) / 12.0) / 12.0
    oracle_err = abs(cumulative(fast.ledger.power, 2023, 2060) - riemann) / riemann

    attribution = 0.0
    for run in runs4.values():
        for year in run.ledger.power.years:
            total = sum(run.ledger.indirect[s].value_at(year) for s in run.ledger.sectors)
            ref = run.ledger.power.value_at(year)
            if ref > 1e-9:
                attribution = max(attribution, abs(total - ref) / ref)

    def non_power(run):
        series = NodeSeries(
            (y, sum(run.ledger.direct[s].value_at(y) for s in run.ledger.sectors))
            for y in run.ledger.power.years
        )
        return cumulative(series, 2023, 2060)

    np_tot = [non_power(r) for r in runs4.values()]
    np_spread = 100.0 * (max(np_tot) - min(np_tot)) / (sum(np_tot) / len(np_tot))

    ok = (
        additivity <= 1e-9
        and oracle_err <= 0.005
        and attribution <= 0.005
        and np_spread < 5.0
    )
    check(
        capsys, "criterion 8: ledger integration and attribution",
        ok, f"additivity {additivity:.1e}, monthly oracle {100 * oracle_err:.2f}%, "
            f"attribution {100 * attribution:.2f}%, non-power spread {np_spread:.2f}%",
    )
