"""Power-sector arithmetic: generation, shares, decline rates, residual dispatch.

Generation follows the fixed-hours convention 1 GW at cf 1.0 = 8.76 TWh/yr.
Capital cost is carried on Technology for the optimizer's benefit; everything
here prices dispatch by variable cost only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, EmptySeries, InfeasibleDispatch, ValidationError
from .timegrid import HOURS_PER_YEAR, NodeSeries

TECHNOLOGY_IDS = ("coal", "coal_ccs", "gas", "nuclear", "hydro", "wind", "solar", "biomass")


@dataclass(frozen=True)
class Technology:
    """One supply technology with its physical and cost coefficients."""

    id: str
    emission_factor: float  # tCO2 per MWh generated
    dispatchable: bool
    max_cf: float
    variable_cost: float  # $/MWh
    capex: float  # $/kW at base year

    def __post_init__(self) -> None:
        if self.emission_factor < 0:
            raise ValidationError("emission_factor", f"negative for {self.id}")
        if not 0 < self.max_cf <= 1:
            raise ValidationError("max_cf", f"{self.max_cf} outside (0, 1] for {self.id}")
        if self.variable_cost < 0 or self.capex < 0:
            raise ValidationError("cost", f"negative cost for {self.id}")

    def potential_twh(self, capacity_gw: float) -> float:
        return generation_from_capacity(capacity_gw, self.max_cf)


@dataclass(frozen=True)
class PowerMix:
    """Per-technology generation series plus their total."""

    generation: dict[str, NodeSeries]
    total: NodeSeries = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.total is None:
            years = next(iter(self.generation.values())).years
            totals = [(y, sum(s.value_at(y) for s in self.generation.values())) for y in years]
            object.__setattr__(self, "total", NodeSeries(totals))
        for tech, series in self.generation.items():
            if any(v < -1e-9 for v in series.values):
                raise ValidationError("generation", f"negative generation for {tech}")
        for year in self.total.years:
            s = sum(g.value_at(year) for g in self.generation.values())
            t = self.total.value_at(year)
            if abs(s - t) > 1e-3 * max(1.0, abs(t)):
                raise ValidationError("total", f"mix total mismatch at {year}: {s} vs {t}")

    def tech_share_pct(self, tech: str, year: int) -> float:
        return coal_share(self.generation[tech].value_at(year), self.total.value_at(year))


def generation_from_capacity(capacity_gw: float, cf: float, hours: int = HOURS_PER_YEAR) -> float:
    """TWh/yr produced by capacity_gw running at capacity factor cf."""
    if capacity_gw < 0:
        raise DomainError(f"capacity {capacity_gw} GW must be nonnegative")
    if not 0 <= cf <= 1:
        raise DomainError(f"capacity factor {cf} outside [0, 1]")
    return capacity_gw * cf * hours / 1000.0


def generation_series(
    capacity: NodeSeries,
    cf: NodeSeries,
    override: NodeSeries | None = None,
) -> NodeSeries:
    """Implied generation path capacity*cf*8.76, override cells taking precedence."""
    points = []
    for year in capacity.years:
        if override is not None and override.has_year(year):
            points.append((year, override.value_at(year)))
        else:
            points.append((year, generation_from_capacity(capacity.value_at(year), cf.value_at(year))))
    return NodeSeries(points)


def coal_share(coal_gen: float, total_gen: float) -> float:
    """Share of total generation, in percent."""
    if total_gen <= 0:
        raise DomainError(f"total generation {total_gen} must be positive")
    if coal_gen < 0 or coal_gen > total_gen * (1 + 1e-9):
        raise DomainError(f"coal generation {coal_gen} outside [0, total={total_gen}]")
    return 100.0 * coal_gen / total_gen


def share_decline_rate(shares: NodeSeries) -> NodeSeries:
    """Backward difference (s_t - s_prev) / step in pp/yr; first node has no rate."""
    if len(shares) < 2:
        raise EmptySeries("decline rate needs at least 2 share nodes")
    years = shares.years
    vals = shares.values
    rates = []
    for i in range(1, len(years)):
        step = years[i] - years[i - 1]
        rates.append((years[i], (vals[i] - vals[i - 1]) / step))
    return NodeSeries(rates)


def dispatch_residual(
    demand_twh: float,
    coal_gen_twh: float,
    techs: list[tuple[Technology, float]],
) -> dict[str, float]:
    """Fill demand net of coal by ascending variable cost, ties broken by id.

    Each technology is capped at capacity * max_cf * 8.76.  The returned
    allocations sum to the residual exactly; a shortfall raises
    InfeasibleDispatch carrying the missing TWh.
    """
    if demand_twh < 0 or coal_gen_twh < 0:
        raise DomainError("demand and coal generation must be nonnegative")
    residual = demand_twh - coal_gen_twh
    allocations = {tech.id: 0.0 for tech, _ in techs}
    if residual <= 0:
        return allocations
    order = sorted(techs, key=lambda tc: (tc[0].variable_cost, tc[0].id))
    remaining = residual
    for tech, capacity_gw in order:
        cap = tech.potential_twh(capacity_gw)
        take = min(cap, remaining)
        allocations[tech.id] = take
        remaining -= take
        if remaining <= 1e-12 * max(1.0, demand_twh):
            remaining = 0.0
            break
    if remaining > 0:
        raise InfeasibleDispatch(remaining)
    return allocations
