"""Emission-intensity parity of electrified applications vs. fossil incumbents.

Each application's per-service-unit emissions are linear in grid intensity:
electric_embodied + consumption * intensity. The incumbent is a flat line
(fossil_intensity + fossil_embodied), so parity happens at a threshold grid
intensity; the parity year is the first year a scenario's grid-intensity
trajectory drops to that threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, EmptyTrajectory, ValidationError


@dataclass(frozen=True)
class ApplianceSpec:
    name: str
    service_unit: str  # km, MJ-heat, t-steel
    electric_consumption: float  # kWh per service unit
    electric_embodied: float  # gCO2 per service unit
    fossil_intensity: float  # gCO2 per service unit, operational
    fossil_embodied: float  # gCO2 per service unit
    efficiency_note: str = ""

    def __post_init__(self) -> None:
        if self.electric_consumption <= 0:
            raise ValidationError("electric_consumption", "must be positive")
        for fname in ("electric_embodied", "fossil_intensity", "fossil_embodied"):
            if getattr(self, fname) < 0:
                raise ValidationError(fname, "must be nonnegative")


class Never:
    """Parity is never reached (sentinel; all instances equal)."""

    def __eq__(self, other) -> bool:
        return isinstance(other, Never)

    def __hash__(self) -> int:
        return hash("Never")

    def __repr__(self) -> str:
        return "Never"


@dataclass(frozen=True)
class AlreadyReached:
    """Parity held at the start of the trajectory."""

    start_year: int

    def __repr__(self) -> str:
        return f"AlreadyReached({self.start_year})"


ParityYear = int | Never | AlreadyReached


@dataclass(frozen=True)
class ParityResult:
    appliance: str
    threshold: float | Never  # gCO2/kWh
    parity_years: dict[str, ParityYear] = field(default_factory=dict)  # per scenario


def service_intensity_electric(app: ApplianceSpec, grid: float) -> float:
    """gCO2 per service unit on a grid of the given intensity."""
    if grid < 0:
        raise DomainError("grid intensity must be nonnegative")
    return app.electric_embodied + app.electric_consumption * grid


def service_intensity_fossil(app: ApplianceSpec) -> float:
    return app.fossil_intensity + app.fossil_embodied


def parity_threshold(app: ApplianceSpec) -> float | Never:
    """Grid intensity at which the two intensity lines cross."""
    numerator = app.fossil_intensity + app.fossil_embodied - app.electric_embodied
    if numerator <= 0:
        return Never()
    return numerator / app.electric_consumption


def hydrogen_route_consumption(
    direct_need_kwh: float, electrolysis_eff: float, conversion_eff: float
) -> float:
    """Electricity per service unit when the service runs on electrolytic hydrogen."""
    if direct_need_kwh <= 0:
        raise DomainError("direct energy need must be positive")
    if not 0 < electrolysis_eff <= 1 or not 0 < conversion_eff <= 1:
        raise DomainError("efficiencies must lie in (0, 1]")
    return direct_need_kwh / (electrolysis_eff * conversion_eff)


def parity_year(
    app: ApplianceSpec,
    grid_trajectory: tuple[tuple[int, float], ...],
    scenario: str,
) -> tuple[str, ParityYear]:
    """First year the trajectory reaches the threshold (first crossing)."""
    if not grid_trajectory:
        raise EmptyTrajectory(f"no grid trajectory for scenario {scenario!r}")
    threshold = parity_threshold(app)
    if isinstance(threshold, Never):
        return scenario, Never()
    first_year, first_value = grid_trajectory[0]
    if first_value <= threshold:
        return scenario, AlreadyReached(first_year)
    for year, value in grid_trajectory:
        if value <= threshold:
            return scenario, year
    return scenario, Never()
