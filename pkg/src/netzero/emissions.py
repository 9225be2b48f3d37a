"""Annual and cumulative CO2 accounting, budget shares, TCRE warming.

Direct emissions burn fossil fuel inside an end-use sector; indirect
emissions attribute the power sector's CO2 to sectors in proportion to
their electricity consumption, so the per-sector indirect entries add up
to the power-sector total by construction. A constant fuel-production
overhead rides on top of the economy total and is excluded from the
direct/indirect percentage split.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, MissingYear, RangeError, ValidationError
from .power import PowerMix, Technology
from .timegrid import NodeSeries, interpolate_annual

DEFAULT_TCRE = 0.45  # degC per 1000 GtCO2
DEFAULT_OVERHEAD_GT = 1.5  # fuel-production emissions, Gt/yr


@dataclass(frozen=True)
class BudgetContext:
    """Remaining global carbon budgets (from accounting_start) in Gt."""

    global_15_67: float = 150.0  # 1.5C at 67% likelihood
    global_15_50: float = 250.0  # 1.5C at 50%
    global_2_67: float = 950.0  # 2C at 67%
    accounting_start: int = 2023

    def __post_init__(self) -> None:
        if min(self.global_15_67, self.global_15_50, self.global_2_67) <= 0:
            raise ValidationError("budget", "budget constants must be positive")


@dataclass(frozen=True)
class EmissionLedger:
    sectors: tuple[str, ...]
    direct: dict[str, NodeSeries]  # Gt/yr per sector
    indirect: dict[str, NodeSeries]  # Gt/yr per sector
    power: NodeSeries  # Gt/yr
    grid_intensity: NodeSeries  # gCO2/kWh
    fuel_production_overhead: float = DEFAULT_OVERHEAD_GT
    cdr: NodeSeries | None = None  # Gt/yr removed (entered as positive removals)

    def __post_init__(self) -> None:
        for name in self.sectors:
            if name not in self.direct or name not in self.indirect:
                raise ValidationError("sectors", f"ledger missing channel for {name!r}")
        for series in (*self.direct.values(), *self.indirect.values(), self.power):
            if any(v < -1e-12 for v in series.values):
                raise ValidationError("emissions", "negative emission entry")
        if self.fuel_production_overhead < 0:
            raise ValidationError("fuel_production_overhead", "must be nonnegative")
        for year in self.power.years:
            total = sum(self.indirect[s].value_at(year) for s in self.sectors)
            ref = self.power.value_at(year)
            if abs(total - ref) > 0.005 * max(abs(ref), 1e-9) + 1e-12:
                raise ValidationError(
                    "indirect", f"attribution differs from power total at {year}"
                )

    def economy(self, year: int) -> float:
        """Net economy-wide emissions: sectors + power + overhead - CDR, Gt/yr."""
        direct = sum(self.direct[s].value_at(year) for s in self.sectors)
        removed = self.cdr.value_at(year) if self.cdr and self.cdr.has_year(year) else 0.0
        return direct + self.power.value_at(year) + self.fuel_production_overhead - removed

    def economy_series(self) -> NodeSeries:
        return NodeSeries((y, self.economy(y)) for y in self.power.years)


def annual_emissions(
    mix: PowerMix,
    techs: dict[str, Technology],
    sector_electricity_twh: dict[str, NodeSeries],
    sector_fossil_ej: dict[str, NodeSeries],
    fuel_factors_mt_ej: dict[str, float],
    overhead_gt: float = DEFAULT_OVERHEAD_GT,
    cdr: NodeSeries | None = None,
) -> EmissionLedger:
    """Factor-times-activity accounting for power and end-use sectors."""
    for name, f in fuel_factors_mt_ej.items():
        if f < 0:
            raise DomainError(f"negative fuel factor for {name!r}")
    years = mix.total.years
    power_pts = []
    intensity_pts = []
    for year in years:
        mt = 0.0
        for tid, series in mix.generation.items():
            tech = techs.get(tid)
            if tech is None:
                raise DomainError(f"no technology parameters for {tid!r}")
            mt += series.value_at(year) * tech.emission_factor  # TWh * t/MWh = Mt
        total_twh = mix.total.value_at(year)
        power_pts.append((year, mt / 1000.0))
        intensity_pts.append((year, mt / total_twh * 1000.0 if total_twh > 0 else 0.0))
    power = NodeSeries(power_pts)
    intensity = NodeSeries(intensity_pts)

    sectors = tuple(sorted(sector_electricity_twh))
    direct: dict[str, NodeSeries] = {}
    indirect: dict[str, NodeSeries] = {}
    for name in sectors:
        elec = sector_electricity_twh[name]
        foss = sector_fossil_ej[name]
        factor = fuel_factors_mt_ej[name]
        ind_pts = []
        dir_pts = []
        for year in years:
            g_per_kwh = intensity.value_at(year)
            # TWh * g/kWh = 1e-6 Gt
            ind_pts.append((year, elec.value_at(year) * g_per_kwh * 1e-6))
            dir_pts.append((year, foss.value_at(year) * factor / 1000.0))
        indirect[name] = NodeSeries(ind_pts)
        direct[name] = NodeSeries(dir_pts)

    return EmissionLedger(
        sectors=sectors,
        direct=direct,
        indirect=indirect,
        power=power,
        grid_intensity=intensity,
        fuel_production_overhead=overhead_gt,
        cdr=cdr,
    )


def cumulative(series: NodeSeries, from_year: int, to_year: int) -> float:
    """Trapezoidal integral of the annually-interpolated series, Gt."""
    if from_year >= to_year:
        raise RangeError(f"empty window [{from_year}, {to_year}]")
    if from_year < series.first_year or to_year > series.last_year:
        raise RangeError(
            f"window [{from_year}, {to_year}] outside series span "
            f"[{series.first_year}, {series.last_year}]"
        )
    annual = {y: v for y, v in interpolate_annual(series)}
    total = 0.0
    for year in range(from_year, to_year):
        total += 0.5 * (annual[year] + annual[year + 1])
    return total


def budget_share(cum_gt: float, budget_gt: float) -> float:
    if budget_gt <= 0:
        raise DomainError("budget must be positive")
    if cum_gt < 0:
        raise DomainError("cumulative emissions must be nonnegative")
    return 100.0 * cum_gt / budget_gt


def direct_indirect_split(ledger: EmissionLedger, year: int) -> tuple[float, float, float]:
    """(direct Gt/yr, indirect Gt/yr, electrified percent), overhead excluded."""
    if not ledger.power.has_year(year):
        raise MissingYear(f"ledger does not cover {year}")
    direct = sum(ledger.direct[s].value_at(year) for s in ledger.sectors)
    indirect = sum(ledger.indirect[s].value_at(year) for s in ledger.sectors)
    total = direct + indirect
    pct = 100.0 * indirect / total if total > 0 else 0.0
    return direct, indirect, pct


def temperature_delta(cum_gt: float, tcre: float = DEFAULT_TCRE) -> float:
    """Transient warming from cumulative emissions, degC."""
    return tcre * cum_gt / 1000.0
