"""End-to-end scenario runs.

A run takes a coal-path scenario through capacity expansion, couples the
resulting wholesale electricity price into the end-use electrification
walk, allocates generation to sectors, and books everything in an
emission ledger. Cross-scenario products (parity years, cumulative
summaries) take a mapping of completed runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .config import (
    EndUseConfig,
    LedgerParams,
    load_appliances,
    load_cost_model,
    load_demand,
    load_enduse,
    load_ledger_params,
    scenario_path,
)
from .emissions import (
    BudgetContext,
    EmissionLedger,
    annual_emissions,
    budget_share,
    cumulative,
    temperature_delta,
)
from .enduse import (
    SectorState,
    VehicleFleet,
    economy_rate,
    evolve_sector,
    sector_electricity_ej,
    vehicle_stock_step,
)
from .errors import ValidationError
from .expansion import CostModel, ExpansionPlan, plan_expansion
from .parity import ApplianceSpec, ParityResult, parity_threshold, parity_year
from .scenario import PolicyMode, ScenarioSpec, load_scenario, validate_spec
from .timegrid import NodeSeries, interpolate_annual

ACCOUNTING_START = 2023
TABLE1_SCENARIOS = ("fast", "medium", "slow", "plateau30")


@dataclass(frozen=True)
class ScenarioRun:
    """Everything produced for one scenario under one policy mode."""

    spec: ScenarioSpec
    mode: PolicyMode
    demand: NodeSeries  # TWh/yr
    plan: ExpansionPlan
    retail_price: NodeSeries  # $/MWh
    sectors: tuple[SectorState, ...]  # shares at grid nodes
    sector_electricity_twh: dict[str, NodeSeries]
    ledger: EmissionLedger
    fleet: tuple[tuple[int, VehicleFleet], ...]

    @property
    def name(self) -> str:
        return self.spec.name


def _resolve_spec(source, data_root: Path | None) -> ScenarioSpec:
    if isinstance(source, ScenarioSpec):
        return source
    path = Path(source)
    if not path.exists() and not str(source).endswith(".toml"):
        path = scenario_path(str(source), data_root)
    return load_scenario(path)


def annualize_state(state: SectorState) -> SectorState:
    """Same sector with shares and final energy on an annual grid."""
    return SectorState(
        sector=state.sector,
        final_energy=NodeSeries(interpolate_annual(state.final_energy)),
        electric_share=NodeSeries(interpolate_annual(state.electric_share)),
        inertia=state.inertia,
        price_sensitivity=state.price_sensitivity,
        policy_floor=state.policy_floor,
    )


def _allocate_electricity(
    total: NodeSeries, sectors: tuple[SectorState, ...]
) -> dict[str, NodeSeries]:
    """Split total generation across sectors pro rata to their final
    electricity demand, so indirect attribution sums to the power total."""
    points: dict[str, list[tuple[int, float]]] = {s.sector: [] for s in sectors}
    for year in total.years:
        ejs = {s.sector: sector_electricity_ej(s, year) for s in sectors}
        whole = sum(ejs.values())
        if whole <= 0:
            raise ValidationError("allocation", f"no sector electricity demand at {year}")
        for name, ej in ejs.items():
            points[name].append((year, total.value_at(year) * ej / whole))
    return {name: NodeSeries(pts) for name, pts in points.items()}


def _walk_fleet(cfg: EndUseConfig, years: tuple[int, ...]) -> tuple[tuple[int, VehicleFleet], ...]:
    share0 = cfg.fleet.bev_sales_share.interp(years[0])
    fleet = vehicle_stock_step(cfg.fleet.fleet, share0, 0.0)
    out = [(years[0], fleet)]
    for prev, year in zip(years, years[1:]):
        share = cfg.fleet.bev_sales_share.interp(year)
        fleet = vehicle_stock_step(fleet, share, year - prev)
        out.append((year, fleet))
    return tuple(out)


def run_scenario(
    source,
    mode: PolicyMode | None = None,
    data_root: Path | None = None,
    costs: CostModel | None = None,
    enduse_cfg: EndUseConfig | None = None,
    ledger_params: LedgerParams | None = None,
) -> ScenarioRun:
    """Solve one scenario end to end.

    `source` may be a ScenarioSpec, a path to a scenario file, or the name
    of a bundled scenario. `mode` overrides the scenario's policy mode.
    """
    spec = _resolve_spec(source, data_root)
    violations = validate_spec(spec)
    if violations:
        detail = "; ".join(f"{v.field}: {v.message}" for v in violations)
        raise ValidationError(spec.name, detail)

    demand = load_demand(spec.demand_ref, data_root)
    costs = costs or load_cost_model(data_root)
    enduse_cfg = enduse_cfg or load_enduse(data_root)
    ledger_params = ledger_params or load_ledger_params(data_root)

    plan = plan_expansion(spec, demand, costs, mode=mode)
    effective_mode = mode if mode is not None else spec.policy_mode

    retail = plan.electricity_price.map(
        lambda w: enduse_cfg.retail_margin + enduse_cfg.price_passthrough * w
    )
    sectors = tuple(
        evolve_sector(
            params,
            plan.electricity_price,
            enduse_cfg.retail_margin,
            enduse_cfg.price_passthrough,
        )
        for params in enduse_cfg.sectors
    )

    elec_twh = _allocate_electricity(plan.generation.total, sectors)
    foss_ej = {
        s.sector: NodeSeries(
            (y, (1.0 - s.electric_share.value_at(y)) * s.final_energy.value_at(y))
            for y in plan.generation.total.years
        )
        for s in sectors
    }
    factors = {p.sector: p.fossil_factor_mt_ej for p in enduse_cfg.sectors}
    ledger = annual_emissions(
        mix=plan.generation,
        techs={tid: tp.tech for tid, tp in costs.techs.items()},
        sector_electricity_twh=elec_twh,
        sector_fossil_ej=foss_ej,
        fuel_factors_mt_ej=factors,
        overhead_gt=ledger_params.fuel_production_overhead_gt,
        cdr=plan.cdr,
    )

    return ScenarioRun(
        spec=spec,
        mode=effective_mode,
        demand=demand,
        plan=plan,
        retail_price=retail,
        sectors=sectors,
        sector_electricity_twh=elec_twh,
        ledger=ledger,
        fleet=_walk_fleet(enduse_cfg, plan.generation.total.years),
    )


def run_many(
    sources,
    mode: PolicyMode | None = None,
    data_root: Path | None = None,
    parallel: bool = False,
) -> dict[str, ScenarioRun]:
    """Run several scenarios, optionally on a thread pool.

    Scenario runs share no mutable state, so results are identical either
    way; ordering of the returned mapping follows the input order.
    """
    sources = list(sources)
    costs = load_cost_model(data_root)
    enduse_cfg = load_enduse(data_root)
    ledger_params = load_ledger_params(data_root)

    def one(src) -> ScenarioRun:
        return run_scenario(
            src,
            mode=mode,
            data_root=data_root,
            costs=costs,
            enduse_cfg=enduse_cfg,
            ledger_params=ledger_params,
        )

    if parallel and len(sources) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=min(4, len(sources))) as pool:
            runs = list(pool.map(one, sources))
    else:
        runs = [one(src) for src in sources]
    return {run.name: run for run in runs}


def annual_economy_rate(run: ScenarioRun, year: int) -> float:
    """Electrification rate at any calendar year via annual interpolation."""
    return economy_rate(tuple(annualize_state(s) for s in run.sectors), year)


def grid_trajectory(
    run: ScenarioRun, start: int = ACCOUNTING_START
) -> tuple[tuple[int, float], ...]:
    """Annual grid intensity from `start`, the parity module's input."""
    pts = interpolate_annual(run.ledger.grid_intensity)
    return tuple((y, v) for y, v in pts if y >= start)


@dataclass(frozen=True)
class CumulativeSummary:
    scenario: str
    horizon: int
    power_gt: float
    economy_gt: float
    share_15_pct: float
    share_2_pct: float
    delta_t_c: float


def cumulative_summary(
    run: ScenarioRun,
    horizon: int,
    budgets: BudgetContext = BudgetContext(),
    tcre: float | None = None,
) -> CumulativeSummary:
    start = budgets.accounting_start
    power = cumulative(run.ledger.power, start, horizon)
    economy = cumulative(run.ledger.economy_series(), start, horizon)
    kwargs = {} if tcre is None else {"tcre": tcre}
    return CumulativeSummary(
        scenario=run.name,
        horizon=horizon,
        power_gt=power,
        economy_gt=economy,
        share_15_pct=budget_share(power, budgets.global_15_67),
        share_2_pct=budget_share(power, budgets.global_2_67),
        delta_t_c=temperature_delta(economy, **kwargs),
    )


def parity_results(
    runs: dict[str, ScenarioRun],
    apps: tuple[ApplianceSpec, ...] | None = None,
    data_root: Path | None = None,
) -> tuple[ParityResult, ...]:
    """Parity year of every appliance under every run's grid trajectory."""
    apps = apps if apps is not None else load_appliances(data_root)
    out = []
    for app in apps:
        years = dict(
            parity_year(app, grid_trajectory(run), name) for name, run in runs.items()
        )
        out.append(
            ParityResult(appliance=app.name, threshold=parity_threshold(app), parity_years=years)
        )
    return tuple(out)
