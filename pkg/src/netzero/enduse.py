"""Sectoral final energy and price-responsive electrification diffusion.

Fuel choice is a two-carrier logit on prices per unit of useful energy;
shares move toward the logit target under a per-period inertia bound and
an optional policy floor (transport). A light-duty-vehicle stock model
tracks the BEV fleet implied by sales shares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError, MissingYear
from .timegrid import NodeSeries

SECTOR_NAMES = ("buildings", "industry", "transport")


@dataclass(frozen=True)
class SectorState:
    """One end-use sector: exogenous final energy plus an evolving electric share."""

    sector: str
    final_energy: NodeSeries  # EJ/yr
    electric_share: NodeSeries  # fraction of final energy
    inertia: float  # max share change per period
    price_sensitivity: float  # logit lambda, per $/MWh-useful
    policy_floor: NodeSeries | None = None

    def __post_init__(self) -> None:
        if self.sector not in SECTOR_NAMES:
            raise DomainError(f"unknown sector {self.sector!r}")
        if any(v <= 0 for v in self.final_energy.values):
            raise DomainError("final energy must be positive")
        if any(not 0 <= v <= 1 for v in self.electric_share.values):
            raise DomainError("electric share outside [0, 1]")
        if self.inertia < 0 or self.price_sensitivity < 0:
            raise DomainError("inertia and price sensitivity must be nonnegative")


@dataclass(frozen=True)
class VehicleFleet:
    stock: float  # million vehicles
    bev_stock: float  # million
    annual_sales: float  # million/yr
    bev_sales_share: float
    survival_rate: float  # per year

    def __post_init__(self) -> None:
        if self.stock < 0 or self.bev_stock < 0 or self.annual_sales < 0:
            raise DomainError("fleet quantities must be nonnegative")
        if self.bev_stock > self.stock * (1 + 1e-9):
            raise DomainError("BEV stock exceeds total stock")
        if not 0 <= self.bev_sales_share <= 1 or not 0 <= self.survival_rate <= 1:
            raise DomainError("shares must lie in [0, 1]")


def logit_shares(prices: tuple[float, ...], sensitivity: float) -> tuple[float, ...]:
    """share_i = exp(-lambda p_i) / sum_j exp(-lambda p_j)."""
    if not prices:
        raise DomainError("no prices")
    if any(p <= 0 for p in prices):
        raise DomainError("prices must be positive")
    if sensitivity < 0:
        raise DomainError("sensitivity must be nonnegative")
    # subtract min price before exponentiating; shares are translation-invariant
    pmin = min(prices)
    weights = [math.exp(-sensitivity * (p - pmin)) for p in prices]
    total = sum(weights)
    return tuple(w / total for w in weights)


def step_electrification(
    prev_share: float,
    target_share: float,
    inertia: float,
    policy_floor: float | None = None,
) -> float:
    """Move toward the logit target, bounded by inertia, then apply the floor."""
    if not 0 <= target_share <= 1:
        raise DomainError("target share outside [0, 1]")
    nxt = min(max(target_share, prev_share - inertia), prev_share + inertia)
    if policy_floor is not None:
        nxt = max(nxt, policy_floor)
    return min(max(nxt, 0.0), 1.0)


def economy_rate(states: tuple[SectorState, ...], year: int) -> float:
    """Energy-weighted electric share across sectors, percent."""
    num = 0.0
    den = 0.0
    for st in states:
        if not (st.electric_share.has_year(year) and st.final_energy.has_year(year)):
            raise MissingYear(f"sector {st.sector} does not cover {year}")
        fe = st.final_energy.value_at(year)
        num += st.electric_share.value_at(year) * fe
        den += fe
    return 100.0 * num / den


def vehicle_stock_step(fleet: VehicleFleet, bev_sales_share: float, year_span: float) -> VehicleFleet:
    """Advance the fleet: survival decay plus sales inflow over year_span years."""
    if not 0 <= bev_sales_share <= 1:
        raise DomainError("sales share outside [0, 1]")
    if year_span < 0:
        raise DomainError("negative year span")
    surv = fleet.survival_rate ** year_span
    stock = fleet.stock * surv + fleet.annual_sales * year_span
    bev = fleet.bev_stock * surv + bev_sales_share * fleet.annual_sales * year_span
    return replace(
        fleet,
        stock=stock,
        bev_stock=min(bev, stock),
        bev_sales_share=bev_sales_share,
    )


@dataclass(frozen=True)
class SectorParams:
    """Calibration inputs from which a SectorState evolution is produced."""

    sector: str
    final_energy: NodeSeries  # EJ/yr
    share_start: float  # electric share at the first grid year
    price_sensitivity: float
    inertia: float  # per period
    elec_efficiency: NodeSeries  # useful energy per final electricity, dimensionless
    fossil_efficiency: float  # useful energy per final fossil fuel
    fossil_price: NodeSeries  # $/MWh-final of fossil fuel
    fossil_factor_mt_ej: float  # direct CO2 per final fossil energy
    policy_floor: NodeSeries | None = None


def evolve_sector(
    params: SectorParams,
    wholesale_price: NodeSeries,
    margin: float,
    passthrough: float,
) -> SectorState:
    """Walk the electric share across the price series' years.

    The first year is anchored at share_start; each later node moves toward
    the logit target computed from useful-energy prices (retail electricity
    vs. fossil fuel, each divided by its conversion efficiency).
    """
    years = wholesale_price.years
    shares: list[tuple[int, float]] = []
    prev = params.share_start
    floor = params.policy_floor
    for t, year in enumerate(years):
        if t == 0:
            val = params.share_start
            if floor is not None and floor.first_year <= year <= floor.last_year:
                val = max(val, floor.interp(year))
            shares.append((year, val))
            prev = val
            continue
        retail = margin + passthrough * wholesale_price.value_at(year)
        p_elec = retail / params.elec_efficiency.interp(year)
        p_foss = params.fossil_price.interp(year) / params.fossil_efficiency
        target = logit_shares((p_elec, p_foss), params.price_sensitivity)[0]
        fl = None
        if floor is not None and floor.first_year <= year <= floor.last_year:
            fl = floor.interp(year)
        val = step_electrification(prev, target, params.inertia, fl)
        shares.append((year, val))
        prev = val
    return SectorState(
        sector=params.sector,
        final_energy=params.final_energy,
        electric_share=NodeSeries(shares),
        inertia=params.inertia,
        price_sensitivity=params.price_sensitivity,
        policy_floor=floor,
    )


def sector_electricity_ej(state: SectorState, year: int) -> float:
    """Final electricity demand of the sector, EJ/yr."""
    if not state.electric_share.has_year(year):
        raise MissingYear(f"sector {state.sector} does not cover {year}")
    fe = (
        state.final_energy.value_at(year)
        if state.final_energy.has_year(year)
        else state.final_energy.interp(year)
    )
    return state.electric_share.value_at(year) * fe


def sector_fossil_ej(state: SectorState, year: int) -> float:
    """Final fossil energy of the sector, EJ/yr."""
    if not state.electric_share.has_year(year):
        raise MissingYear(f"sector {state.sector} does not cover {year}")
    fe = (
        state.final_energy.value_at(year)
        if state.final_energy.has_year(year)
        else state.final_energy.interp(year)
    )
    return (1.0 - state.electric_share.value_at(year)) * fe
