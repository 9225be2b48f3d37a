"""Scenario configuration: policy modes, the ScenarioSpec model, TOML I/O, validation.

A scenario file pins the coal fleet trajectory (capacity and capacity-factor
caps on the 5-year grid), optional generation overrides for cells where the
published generation is authoritative, per-period early-retirement allowances,
a phase-out year, and the policy mode (net-zero target year or a fixed
cumulative carbon budget in Gt).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Union

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ParseError, ValidationError
from .power import generation_series
from .timegrid import DEFAULT_GRID, NodeSeries, TimeGrid

# Scenarios are allowed to grow before this year; afterwards implied coal
# generation must decline (small numeric blips tolerated).
DECLINE_CHECK_START = 2025
DECLINE_TOLERANCE = 0.03
PHASE_OUT_RESIDUAL_FRACTION = 0.01


@dataclass(frozen=True)
class NetZeroYear:
    year: int = 2060


@dataclass(frozen=True)
class FixedBudget:
    budget_gt: float

    def __post_init__(self) -> None:
        if self.budget_gt <= 0:
            raise ValidationError("policy_mode", f"budget must be positive, got {self.budget_gt}")


PolicyMode = Union[NetZeroYear, FixedBudget]


def parse_policy_mode(text: str) -> PolicyMode:
    """Parse 'netzero:2060' or 'budget:167'."""
    kind, _, arg = text.partition(":")
    if kind == "netzero":
        try:
            return NetZeroYear(int(arg)) if arg else NetZeroYear()
        except ValueError:
            raise ParseError(f"bad netzero year in policy_mode {text!r}") from None
    if kind == "budget":
        try:
            return FixedBudget(float(arg))
        except ValueError:
            raise ParseError(f"bad budget value in policy_mode {text!r}") from None
    raise ParseError(f"unknown policy_mode {text!r}, expected 'netzero:YYYY' or 'budget:N'")


def format_policy_mode(mode: PolicyMode) -> str:
    if isinstance(mode, NetZeroYear):
        return f"netzero:{mode.year}"
    return f"budget:{mode.budget_gt:g}"


class Violation(NamedTuple):
    field: str
    message: str


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    coal_capacity: NodeSeries  # GW
    coal_cf_cap: NodeSeries  # fraction
    coal_generation_override: NodeSeries | None  # TWh/yr
    early_retirement_limit: NodeSeries | None  # GW per period
    phase_out_year: int | None
    policy_mode: PolicyMode
    demand_ref: str

    def implied_generation(self) -> NodeSeries:
        """Coal generation path: capacity*cf*8.76 with override precedence."""
        return generation_series(self.coal_capacity, self.coal_cf_cap, self.coal_generation_override)


def validate_spec(spec: ScenarioSpec, grid: TimeGrid = DEFAULT_GRID) -> tuple[Violation, ...]:
    """Collect invariant violations; empty tuple means the spec is valid."""
    out: list[Violation] = []

    def series_checks(name: str, series: NodeSeries | None) -> None:
        if series is None:
            return
        for y in series.off_grid_years(grid):
            out.append(Violation(name, f"year {y} is not a grid node"))
        for y in series.missing_interior(grid):
            out.append(Violation(name, f"missing interior node {y}"))

    series_checks("coal.capacity_gw", spec.coal_capacity)
    series_checks("coal.capacity_factor", spec.coal_cf_cap)
    series_checks("coal.generation_twh", spec.coal_generation_override)
    series_checks("coal.early_retirement_gw", spec.early_retirement_limit)

    for y, v in spec.coal_capacity.items():
        if v < 0:
            out.append(Violation("coal.capacity_gw", f"negative capacity {v} at {y}"))
    for y, v in spec.coal_cf_cap.items():
        if not 0 <= v <= 1:
            out.append(Violation("coal.capacity_factor", f"cf {v} at {y} outside [0, 1]"))
    if spec.early_retirement_limit is not None:
        for y, v in spec.early_retirement_limit.items():
            if v < 0:
                out.append(Violation("coal.early_retirement_gw", f"negative limit {v} at {y}"))

    missing_cf = [y for y in spec.coal_capacity.years if not spec.coal_cf_cap.has_year(y)]
    if missing_cf:
        out.append(Violation("coal.capacity_factor", f"no cf for capacity years {missing_cf}"))
    if spec.coal_generation_override is not None:
        stray = [
            y for y in spec.coal_generation_override.years if not spec.coal_capacity.has_year(y)
        ]
        if stray:
            out.append(Violation("coal.generation_twh", f"override years {stray} lack capacity nodes"))

    if isinstance(spec.policy_mode, FixedBudget) and spec.policy_mode.budget_gt <= 0:
        out.append(Violation("policy_mode", "budget must be positive"))

    # Generation-level checks need a computable path.
    uncomputable = missing_cf or any(
        (v.field == "coal.capacity_factor" and "outside" in v.message)
        or (v.field == "coal.capacity_gw" and "negative" in v.message)
        for v in out
    )
    if uncomputable:
        return tuple(out)
    gen = spec.implied_generation()
    ref_gen = gen.values[0]

    if spec.phase_out_year is not None:
        if not grid.is_node(spec.phase_out_year):
            out.append(Violation("phase_out_year", f"{spec.phase_out_year} is not a grid node"))
        else:
            limit = PHASE_OUT_RESIDUAL_FRACTION * ref_gen
            for y, v in gen.items():
                if y > spec.phase_out_year and v > limit:
                    out.append(
                        Violation(
                            "phase_out_year",
                            f"generation after phase-out: {v:.0f} TWh at {y} exceeds "
                            f"{PHASE_OUT_RESIDUAL_FRACTION:.0%} of first-year generation",
                        )
                    )

    prev = None
    for y, v in gen.items():
        if y >= DECLINE_CHECK_START:
            if prev is not None and v > prev * (1 + DECLINE_TOLERANCE):
                out.append(
                    Violation(
                        "coal.capacity_gw",
                        f"generation rises from {prev:.0f} to {v:.0f} TWh at {y} "
                        f"(decline expected from {DECLINE_CHECK_START})",
                    )
                )
            prev = v
    return tuple(out)


def _year_table(table: dict, field: str) -> NodeSeries:
    pairs = []
    for key, value in table.items():
        try:
            year = int(key)
        except ValueError:
            raise ParseError(f"{field}: year key {key!r} is not an integer") from None
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ParseError(f"{field}: value for {key} must be a number, got {value!r}")
        pairs.append((year, float(value)))
    if not pairs:
        raise ParseError(f"{field}: table is empty")
    pairs.sort()
    try:
        return NodeSeries(pairs)
    except ValidationError as exc:
        raise ParseError(f"{field}: {exc}") from None


_SCENARIO_KEYS = {"name", "phase_out_year", "policy_mode", "demand_ref"}
_COAL_KEYS = {"capacity_gw", "capacity_factor", "generation_twh", "early_retirement_gw"}


def load_scenario(path: str | Path, grid: TimeGrid = DEFAULT_GRID) -> ScenarioSpec:
    """Parse and validate one scenario TOML file."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except FileNotFoundError:
        raise ParseError(f"scenario file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None

    unknown = set(raw) - {"scenario", "coal"}
    if unknown:
        raise ParseError(f"{path}: unknown top-level keys {sorted(unknown)}")
    if "scenario" not in raw or "coal" not in raw:
        raise ParseError(f"{path}: requires [scenario] and [coal.*] tables")

    meta = raw["scenario"]
    unknown = set(meta) - _SCENARIO_KEYS
    if unknown:
        raise ParseError(f"{path}: unknown [scenario] keys {sorted(unknown)}")
    if "name" not in meta or "policy_mode" not in meta:
        raise ParseError(f"{path}: [scenario] needs 'name' and 'policy_mode'")

    coal = raw["coal"]
    unknown = set(coal) - _COAL_KEYS
    if unknown:
        raise ParseError(f"{path}: unknown [coal] keys {sorted(unknown)}")
    for required in ("capacity_gw", "capacity_factor"):
        if required not in coal:
            raise ParseError(f"{path}: [coal.{required}] table is required")

    phase_out = meta.get("phase_out_year")
    if phase_out is not None and not isinstance(phase_out, int):
        raise ParseError(f"{path}: phase_out_year must be an integer year")

    spec = ScenarioSpec(
        name=str(meta["name"]),
        coal_capacity=_year_table(coal["capacity_gw"], "coal.capacity_gw"),
        coal_cf_cap=_year_table(coal["capacity_factor"], "coal.capacity_factor"),
        coal_generation_override=(
            _year_table(coal["generation_twh"], "coal.generation_twh")
            if "generation_twh" in coal
            else None
        ),
        early_retirement_limit=(
            _year_table(coal["early_retirement_gw"], "coal.early_retirement_gw")
            if "early_retirement_gw" in coal
            else None
        ),
        phase_out_year=phase_out,
        policy_mode=parse_policy_mode(str(meta["policy_mode"])),
        demand_ref=str(meta.get("demand_ref", meta["name"])),
    )
    violations = validate_spec(spec, grid)
    if violations:
        first = violations[0]
        detail = "; ".join(f"{v.field}: {v.message}" for v in violations)
        raise ValidationError(first.field, detail)
    return spec


def _format_year_table(header: str, series: NodeSeries) -> list[str]:
    lines = [f"[{header}]"]
    for y, v in series.items():
        lines.append(f"{y} = {v!r}")
    lines.append("")
    return lines


def emit_scenario(spec: ScenarioSpec) -> str:
    """Serialize a spec to TOML; load_scenario(emit_scenario(s)) == s."""
    lines = ["[scenario]", f'name = "{spec.name}"']
    if spec.phase_out_year is not None:
        lines.append(f"phase_out_year = {spec.phase_out_year}")
    lines.append(f'policy_mode = "{format_policy_mode(spec.policy_mode)}"')
    lines.append(f'demand_ref = "{spec.demand_ref}"')
    lines.append("")
    lines += _format_year_table("coal.capacity_gw", spec.coal_capacity)
    lines += _format_year_table("coal.capacity_factor", spec.coal_cf_cap)
    if spec.coal_generation_override is not None:
        lines += _format_year_table("coal.generation_twh", spec.coal_generation_override)
    if spec.early_retirement_limit is not None:
        lines += _format_year_table("coal.early_retirement_gw", spec.early_retirement_limit)
    return "\n".join(lines)
