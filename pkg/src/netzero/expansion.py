"""Intertemporal least-cost capacity expansion with learning-by-doing.

The planner minimizes discounted system cost (capex on additions, variable
cost on generation, CDR backstop cost) subject to demand balance,
per-technology build-ramp limits, resource bounds, and either a net-zero
target year or a fixed cumulative carbon budget.

The scenario's coal trajectory is prescribed, not optimized: coal capacity
and generation enter the LP as constants, with coal additions and
retirements left as variables tied to the capacity path through a stock
identity and bounded by the per-period early-retirement allowance. The
optimizer chooses everything else (non-coal builds, dispatch, CDR).

Learning is handled by sequential linear programming: solve the LP with
fixed per-period capex, recompute capex from the resulting cumulative
capacities through the experience curve, and repeat to a fixed point.

Stock accounting for non-coal technologies is by vintage: additions retire
after the technology lifetime and the initial fleet ages out linearly.

Units: capacity GW, generation TWh/yr, emissions Gt/yr, money in billion
dollars inside the LP; prices are reported as $/MWh and $/tCO2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, Infeasible, NoConvergence, NotSolved, ValidationError
from .power import PowerMix, Technology
from .scenario import FixedBudget, NetZeroYear, ScenarioSpec
from .simplex import LinearProgram, LPSolution, solve
from .timegrid import NodeSeries

CONVERGENCE_TOL = 1e-4
MAX_SLP_ITERATIONS = 50
_HOURS_K = 8.76  # GW -> TWh/yr at capacity factor 1.0


@dataclass(frozen=True)
class TechParams:
    """Technology coefficients consumed by the planner."""

    tech: Technology
    learning_rate: float
    base_capacity_gw: float  # learning anchor (cumulative capacity at base year)
    initial_gw: float  # installed at the first grid year
    lifetime_yr: float
    ramp_seed_gw: float  # additions always allowed per period
    max_gw: float | None = None  # resource bound on installed capacity

    def __post_init__(self) -> None:
        if not 0 <= self.learning_rate < 0.5:
            raise ValidationError("learning_rate", f"{self.learning_rate} outside [0, 0.5)")
        if self.base_capacity_gw <= 0:
            raise ValidationError("base_capacity_gw", "learning anchor must be positive")
        if self.initial_gw < 0 or self.lifetime_yr <= 0 or self.ramp_seed_gw < 0:
            raise ValidationError(self.tech.id, "negative stock parameter")


@dataclass(frozen=True)
class CostModel:
    techs: dict[str, TechParams]
    discount_rate: float
    build_ramp_limit: float  # max fractional increase in additions per period
    cdr_cost: float  # $/tCO2
    cdr_ramp_gt_per_period: float
    non_power_gt: NodeSeries | None = None  # exogenous non-power emissions

    def __post_init__(self) -> None:
        if self.discount_rate < 0:
            raise ValidationError("discount_rate", "must be nonnegative")
        if self.build_ramp_limit < 0 or self.cdr_cost < 0 or self.cdr_ramp_gt_per_period < 0:
            raise ValidationError("cost_model", "negative global parameter")

    def ordered_ids(self) -> list[str]:
        return sorted(self.techs)


@dataclass(frozen=True)
class ExpansionPlan:
    capacity: dict[str, NodeSeries]  # GW
    additions: dict[str, NodeSeries]  # GW per period
    retirements: dict[str, NodeSeries]  # GW per period
    generation: PowerMix
    electricity_price: NodeSeries  # $/MWh
    co2_price: NodeSeries  # $/tCO2
    cdr: NodeSeries  # Gt/yr removed
    objective: float  # discounted system cost, $B
    converged: bool
    capex: dict[str, NodeSeries]  # learning-adjusted $/kW per period
    iterations: int


def learning_update(
    capex0: float, cumulative_capacity: float, base_capacity: float, learning_rate: float
) -> float:
    """Experience-curve capex: capex0 * (cumulative/base)^(-b), b = -log2(1-lr)."""
    if base_capacity <= 0 or cumulative_capacity <= 0:
        raise DomainError("capacities must be positive")
    if cumulative_capacity < base_capacity * (1 - 1e-12):
        raise DomainError("cumulative capacity below the learning anchor")
    b = -math.log2(1.0 - learning_rate)
    return capex0 * (cumulative_capacity / base_capacity) ** (-b)


def _trapezoid_weights(years: tuple[int, ...]) -> list[float]:
    n = len(years)
    if n == 1:
        return [1.0]
    w = []
    for t in range(n):
        left = years[t] - years[t - 1] if t > 0 else 0
        right = years[t + 1] - years[t] if t < n - 1 else 0
        w.append((left + right) / 2.0)
    return w


def _series_at(series: NodeSeries | None, year: int) -> float:
    if series is None:
        return 0.0
    if series.has_year(year):
        return series.value_at(year)
    if series.first_year <= year <= series.last_year:
        return series.interp(year)
    return 0.0


class _Layout:
    """Flat variable indexing: non-coal additions and generation blocks,
    coal additions/retirements, CDR."""

    def __init__(self, ids: list[str], nt: int, has_coal: bool):
        self.ids = ids  # non-coal, sorted
        self.nt = nt
        self.n_tech = len(ids)
        self.has_coal = has_coal
        self.a0 = 0
        self.g0 = self.n_tech * nt
        self.ac0 = 2 * self.n_tech * nt
        self.rc0 = self.ac0 + (nt if has_coal else 0)
        self.d0 = self.rc0 + (nt if has_coal else 0)
        self.n = self.d0 + nt

    def a(self, i: int, t: int) -> int:
        return self.a0 + i * self.nt + t

    def g(self, i: int, t: int) -> int:
        return self.g0 + i * self.nt + t

    def ac(self, t: int) -> int:
        return self.ac0 + t

    def rc(self, t: int) -> int:
        return self.rc0 + t

    def d(self, t: int) -> int:
        return self.d0 + t


@dataclass
class SolvedExpansionLP:
    """LP + solution + metadata; the object the price accessors read from."""

    lp: LinearProgram
    solution: LPSolution
    layout: _Layout
    years: tuple[int, ...]
    discount: list[float]
    weights: list[float]
    row_index: dict[str, int]
    mode: object  # NetZeroYear | FixedBudget
    coal_gen: list[float]
    coal_cap: list[float]
    fixed_cost: float  # discounted cost of prescribed coal dispatch, $B


def _init_remaining(p: TechParams, year: int, start_year: int) -> float:
    frac = 1.0 - (year - start_year) / p.lifetime_yr
    return p.initial_gw * max(0.0, frac)


def _alive(year_built: int, year: int, lifetime: float) -> bool:
    return (year - year_built) < lifetime


def _build_lp(
    scenario: ScenarioSpec,
    demand: NodeSeries,
    costs: CostModel,
    capex_paths: dict[str, list[float]],
    mode,
) -> SolvedExpansionLP:
    years = demand.years
    nt = len(years)
    start = years[0]
    has_coal = "coal" in costs.techs
    ids = [tid for tid in costs.ordered_ids() if tid != "coal"]
    lay = _Layout(ids, nt, has_coal)
    weights = _trapezoid_weights(years)
    r = costs.discount_rate
    discount = [(1.0 + r) ** -(y - start) for y in years]

    coal_gen = [0.0] * nt
    coal_cap = [0.0] * nt
    if has_coal:
        implied = scenario.implied_generation()
        coal_gen = [_series_at(implied, y) for y in years]
        coal_cap = [_series_at(scenario.coal_capacity, y) for y in years]

    rows_a: list[np.ndarray] = []
    senses: list[str] = []
    rhs: list[float] = []
    labels: list[str] = []

    def add_row(label: str, sense: str, b: float) -> np.ndarray:
        row = np.zeros(lay.n)
        rows_a.append(row)
        senses.append(sense)
        rhs.append(b)
        labels.append(label)
        return row

    for t, year in enumerate(years):
        residual = demand.value_at(year) - coal_gen[t]
        if residual < 0:
            raise Infeasible(
                f"prescribed coal generation exceeds demand at {year}",
                (f"demand:{year}",),
            )
        row = add_row(f"demand:{year}", ">=", residual)
        for i in range(lay.n_tech):
            row[lay.g(i, t)] = 1.0

    for i, tid in enumerate(ids):
        p = costs.techs[tid]
        pot = p.tech.max_cf * _HOURS_K
        for t, year in enumerate(years):
            row = add_row(f"gencap:{tid}:{year}", "<=", _init_remaining(p, year, start) * pot)
            row[lay.g(i, t)] = 1.0
            for tau in range(t + 1):
                if _alive(years[tau], year, p.lifetime_yr):
                    row[lay.a(i, tau)] = -pot

    if has_coal:
        p = costs.techs["coal"]
        retire_frac = (years[1] - years[0]) / p.lifetime_yr if nt > 1 else 0.0
        for t, year in enumerate(years):
            prev_cap = p.initial_gw if t == 0 else coal_cap[t - 1]
            row = add_row(f"stockc:{year}", "==", coal_cap[t] - prev_cap)
            row[lay.ac(t)] = 1.0
            row[lay.rc(t)] = -1.0
            row = add_row(
                f"retirec:{year}", "<=",
                retire_frac * prev_cap + _early_limit(scenario, year),
            )
            row[lay.rc(t)] = 1.0
            row = add_row(f"rampc:{year}", "<=", p.ramp_seed_gw)
            row[lay.ac(t)] = 1.0
            if t > 0:
                row[lay.ac(t - 1)] = -(1.0 + costs.build_ramp_limit)

    ramp = costs.build_ramp_limit
    for i, tid in enumerate(ids):
        p = costs.techs[tid]
        for t, year in enumerate(years):
            row = add_row(f"ramp:{tid}:{year}", "<=", p.ramp_seed_gw)
            row[lay.a(i, t)] = 1.0
            if t > 0:
                row[lay.a(i, t - 1)] = -(1.0 + ramp)
        if p.max_gw is not None:
            for t, year in enumerate(years):
                row = add_row(
                    f"rescap:{tid}:{year}", "<=",
                    p.max_gw - _init_remaining(p, year, start),
                )
                for tau in range(t + 1):
                    if _alive(years[tau], year, p.lifetime_yr):
                        row[lay.a(i, tau)] = 1.0

    for t, year in enumerate(years):
        row = add_row(f"cdrramp:{year}", "<=", costs.cdr_ramp_gt_per_period)
        row[lay.d(t)] = 1.0
        if t > 0:
            row[lay.d(t - 1)] = -1.0

    ef_coal = costs.techs["coal"].tech.emission_factor if has_coal else 0.0
    if isinstance(mode, FixedBudget):
        fixed = sum(
            w * (_series_at(costs.non_power_gt, y) + ef_coal * g / 1000.0)
            for w, y, g in zip(weights, years, coal_gen)
        )
        row = add_row("budget", "<=", mode.budget_gt - fixed)
        for t in range(nt):
            for i, tid in enumerate(ids):
                ef = costs.techs[tid].tech.emission_factor
                if ef:
                    row[lay.g(i, t)] = weights[t] * ef / 1000.0
            row[lay.d(t)] = -weights[t]
    elif isinstance(mode, NetZeroYear) and mode.year in years:
        t = years.index(mode.year)
        fixed = _series_at(costs.non_power_gt, mode.year) + ef_coal * coal_gen[t] / 1000.0
        row = add_row(f"netzero:{mode.year}", "<=", -fixed)
        for i, tid in enumerate(ids):
            ef = costs.techs[tid].tech.emission_factor
            if ef:
                row[lay.g(i, t)] = ef / 1000.0
        row[lay.d(t)] = -1.0

    c = np.zeros(lay.n)
    for i, tid in enumerate(ids):
        p = costs.techs[tid]
        for t in range(nt):
            c[lay.a(i, t)] = discount[t] * capex_paths[tid][t] / 1000.0
            c[lay.g(i, t)] = discount[t] * weights[t] * p.tech.variable_cost / 1000.0
    fixed_cost = 0.0
    if has_coal:
        p = costs.techs["coal"]
        for t in range(nt):
            c[lay.ac(t)] = discount[t] * capex_paths["coal"][t] / 1000.0
            fixed_cost += discount[t] * weights[t] * p.tech.variable_cost * coal_gen[t] / 1000.0
    for t in range(nt):
        c[lay.d(t)] = discount[t] * weights[t] * costs.cdr_cost

    lp = LinearProgram(
        c=c, a=np.vstack(rows_a), senses=senses, b=np.array(rhs), row_labels=labels
    )
    sol = solve(lp)
    return SolvedExpansionLP(
        lp=lp,
        solution=sol,
        layout=lay,
        years=years,
        discount=discount,
        weights=weights,
        row_index={lab: k for k, lab in enumerate(labels)},
        mode=mode,
        coal_gen=coal_gen,
        coal_cap=coal_cap,
        fixed_cost=fixed_cost,
    )


def _early_limit(scenario: ScenarioSpec, year: int) -> float:
    return _series_at(scenario.early_retirement_limit, year)


def electricity_price(solved: SolvedExpansionLP) -> NodeSeries:
    """Demand-balance shadow values converted to $/MWh."""
    if solved.solution.status != "optimal" or solved.solution.duals is None:
        raise NotSolved("LP not solved to optimality; no prices available")
    pts = []
    for t, year in enumerate(solved.years):
        dual = solved.solution.duals[solved.row_index[f"demand:{year}"]]
        per_mwh = dual / (solved.discount[t] * solved.weights[t]) * 1000.0
        pts.append((year, per_mwh))
    return NodeSeries(pts)


def co2_price(solved: SolvedExpansionLP) -> NodeSeries:
    """Budget shadow value as a $/tCO2 trajectory rising at the discount rate."""
    if solved.solution.status != "optimal" or solved.solution.duals is None:
        raise NotSolved("LP not solved to optimality; no prices available")
    if "budget" not in solved.row_index:
        return NodeSeries((y, 0.0) for y in solved.years)
    mu = -solved.solution.duals[solved.row_index["budget"]]  # $B/Gt == $/t, present value
    mu = max(0.0, mu)  # argument order matters: max(-0.0, 0.0) is -0.0
    return NodeSeries((y, mu / solved.discount[t]) for t, y in enumerate(solved.years))


def _extract_plan(
    costs: CostModel,
    solved: SolvedExpansionLP,
    capex_paths: dict[str, list[float]],
    converged: bool,
    iterations: int,
) -> ExpansionPlan:
    lay = solved.layout
    years = solved.years
    start = years[0]
    x = solved.solution.x

    def clip(v: float) -> float:
        return v if abs(v) > 1e-9 else 0.0

    capacity: dict[str, NodeSeries] = {}
    additions: dict[str, NodeSeries] = {}
    retirements: dict[str, NodeSeries] = {}
    generation: dict[str, NodeSeries] = {}

    for i, tid in enumerate(lay.ids):
        p = costs.techs[tid]
        adds = [clip(x[lay.a(i, t)]) for t in range(lay.nt)]
        caps, rets = [], []
        prev = p.initial_gw
        for t, year in enumerate(years):
            k = _init_remaining(p, year, start) + sum(
                adds[tau] for tau in range(t + 1) if _alive(years[tau], year, p.lifetime_yr)
            )
            rets.append(clip(prev + adds[t] - k))
            caps.append(clip(k))
            prev = k
        capacity[tid] = NodeSeries(zip(years, caps))
        additions[tid] = NodeSeries(zip(years, adds))
        retirements[tid] = NodeSeries(zip(years, rets))
        generation[tid] = NodeSeries(zip(years, (clip(x[lay.g(i, t)]) for t in range(lay.nt))))

    if lay.has_coal:
        capacity["coal"] = NodeSeries(zip(years, solved.coal_cap))
        additions["coal"] = NodeSeries(zip(years, (clip(x[lay.ac(t)]) for t in range(lay.nt))))
        retirements["coal"] = NodeSeries(zip(years, (clip(x[lay.rc(t)]) for t in range(lay.nt))))
        generation["coal"] = NodeSeries(zip(years, solved.coal_gen))

    mix = PowerMix(generation=generation)
    cdr = NodeSeries((y, clip(x[lay.d(t)])) for t, y in enumerate(years))
    return ExpansionPlan(
        capacity=capacity,
        additions=additions,
        retirements=retirements,
        generation=mix,
        electricity_price=electricity_price(solved),
        co2_price=co2_price(solved),
        cdr=cdr,
        objective=float(solved.solution.objective) + solved.fixed_cost,
        converged=converged,
        capex={tid: NodeSeries(zip(years, path)) for tid, path in capex_paths.items()},
        iterations=iterations,
    )


def plan_expansion(
    scenario: ScenarioSpec,
    demand: NodeSeries,
    costs: CostModel,
    mode=None,
) -> ExpansionPlan:
    """Sequential-LP expansion plan; mode defaults to the scenario's policy mode."""
    if mode is None:
        mode = scenario.policy_mode
    years = demand.years
    if any(v < 0 for v in demand.values):
        raise DomainError("demand must be nonnegative")
    cap = scenario.coal_capacity
    if "coal" in costs.techs and (cap.first_year > years[0] or cap.last_year < years[-1]):
        raise ValidationError("coal_capacity", "scenario does not cover the demand horizon")

    all_ids = costs.ordered_ids()
    nt = len(years)
    capex_paths = {tid: [costs.techs[tid].tech.capex] * nt for tid in all_ids}

    best: ExpansionPlan | None = None
    for iteration in range(1, MAX_SLP_ITERATIONS + 1):
        solved = _build_lp(scenario, demand, costs, capex_paths, mode)
        sol = solved.solution
        if sol.status == "infeasible":
            raise Infeasible(
                f"expansion infeasible for scenario {scenario.name!r}", sol.violated
            )
        if sol.status == "unbounded":
            raise Infeasible(f"expansion LP unbounded for scenario {scenario.name!r}")

        lay = solved.layout
        new_paths: dict[str, list[float]] = {}
        delta = 0.0
        for tid in all_ids:
            p = costs.techs[tid]
            capex0 = p.tech.capex

            def added(t: int, tid=tid, lay=lay, x=sol.x) -> float:
                if tid == "coal":
                    return max(0.0, x[lay.ac(t)])
                return max(0.0, x[lay.a(lay.ids.index(tid), t)])

            cum = p.base_capacity_gw
            path = [capex0]
            for t in range(1, nt):
                cum += added(t - 1)
                path.append(learning_update(capex0, cum, p.base_capacity_gw, p.learning_rate))
            new_paths[tid] = path
            for old, new in zip(capex_paths[tid], path):
                delta = max(delta, abs(new - old) / max(old, 1e-12))

        converged = delta < CONVERGENCE_TOL
        best = _extract_plan(costs, solved, new_paths, converged, iteration)
        if converged:
            return best
        capex_paths = new_paths

    raise NoConvergence(
        f"sequential LP hit {MAX_SLP_ITERATIONS} iterations for {scenario.name!r}",
        plan=best,
    )


def solve_fixed_budget(
    scenario: ScenarioSpec, budget_gt: float, demand: NodeSeries, costs: CostModel
) -> ExpansionPlan:
    """plan_expansion under a cumulative net-CO2 budget over the demand horizon."""
    if budget_gt <= 0:
        raise DomainError("budget must be positive")
    return plan_expansion(scenario, demand, costs, mode=FixedBudget(budget_gt))
