"""Bundled data loading: technologies, cost model, demand, sectors, appliances.

All loaders resolve files against :func:`data_dir`, which honours the
NETZERO_DATA_DIR environment variable so a caller can swap the entire data
root without touching the package.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import tomli

from .enduse import SectorParams, VehicleFleet
from .errors import MissingScenario, ParseError
from .expansion import CostModel, TechParams
from .parity import ApplianceSpec
from .power import Technology
from .timegrid import NodeSeries

ENV_DATA_DIR = "NETZERO_DATA_DIR"


def data_dir() -> Path:
    override = os.environ.get(ENV_DATA_DIR)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def _read_toml(path: Path) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomli.load(fh)
    except FileNotFoundError:
        raise ParseError(f"data file not found: {path}") from None
    except tomli.TOMLDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _year_series(table: dict, context: str) -> NodeSeries:
    pairs = []
    for key, value in table.items():
        try:
            year = int(key)
        except ValueError:
            raise ParseError(f"{context}: non-year key {key!r}") from None
        pairs.append((year, float(value)))
    if not pairs:
        raise ParseError(f"{context}: empty year table")
    return NodeSeries(sorted(pairs))


def load_technologies(root: Path | None = None) -> dict[str, Technology]:
    root = root or data_dir()
    raw = _read_toml(root / "technologies.toml")
    techs: dict[str, Technology] = {}
    for tid, row in raw.items():
        try:
            techs[tid] = Technology(
                id=tid,
                emission_factor=float(row["emission_factor"]),
                dispatchable=bool(row["dispatchable"]),
                max_cf=float(row["max_cf"]),
                variable_cost=float(row["variable_cost"]),
                capex=float(row["capex"]),
            )
        except KeyError as exc:
            raise ParseError(f"technologies.toml [{tid}]: missing {exc}") from None
    return techs


@dataclass(frozen=True)
class LedgerParams:
    fuel_production_overhead_gt: float
    tcre: float


def load_cost_model(root: Path | None = None) -> CostModel:
    root = root or data_dir()
    techs = load_technologies(root)
    raw = _read_toml(root / "costs.toml")
    g = raw.get("global", {})
    params: dict[str, TechParams] = {}
    for tid, row in raw.get("tech", {}).items():
        if tid not in techs:
            raise ParseError(f"costs.toml [tech.{tid}]: unknown technology")
        try:
            params[tid] = TechParams(
                tech=techs[tid],
                learning_rate=float(row["learning_rate"]),
                base_capacity_gw=float(row["base_capacity_gw"]),
                initial_gw=float(row["initial_gw"]),
                lifetime_yr=float(row["lifetime_yr"]),
                ramp_seed_gw=float(row["ramp_seed_gw"]),
                max_gw=float(row["max_gw"]) if "max_gw" in row else None,
            )
        except KeyError as exc:
            raise ParseError(f"costs.toml [tech.{tid}]: missing {exc}") from None
    missing = set(techs) - set(params)
    if missing:
        raise ParseError(f"costs.toml: no stock parameters for {sorted(missing)}")
    non_power = None
    if "budget" in raw and "non_power_gt" in raw["budget"]:
        non_power = _year_series(raw["budget"]["non_power_gt"], "costs.toml non_power_gt")
    return CostModel(
        techs=params,
        discount_rate=float(g.get("discount_rate", 0.05)),
        build_ramp_limit=float(g.get("build_ramp_limit", 0.5)),
        cdr_cost=float(g.get("cdr_cost", 250.0)),
        cdr_ramp_gt_per_period=float(g.get("cdr_ramp_gt_per_period", 0.6)),
        non_power_gt=non_power,
    )


def load_ledger_params(root: Path | None = None) -> LedgerParams:
    raw = _read_toml((root or data_dir()) / "costs.toml")
    row = raw.get("ledger", {})
    return LedgerParams(
        fuel_production_overhead_gt=float(row.get("fuel_production_overhead_gt", 1.5)),
        tcre=float(row.get("tcre_c_per_1000gt", 0.45)),
    )


def load_demand(ref: str, root: Path | None = None) -> NodeSeries:
    """Electricity demand path in TWh/yr for a named reference."""
    raw = _read_toml((root or data_dir()) / "demand.toml").get("demand", {})
    if ref not in raw:
        raise MissingScenario(f"no demand path named {ref!r} in demand.toml")
    return _year_series(raw[ref], f"demand.toml [{ref}]")


@dataclass(frozen=True)
class FleetConfig:
    fleet: VehicleFleet
    bev_sales_share: NodeSeries


@dataclass(frozen=True)
class EndUseConfig:
    sectors: tuple[SectorParams, ...]
    retail_margin: float  # $/MWh added to the wholesale price
    price_passthrough: float  # wholesale fraction reaching retail
    fleet: FleetConfig


def load_enduse(root: Path | None = None) -> EndUseConfig:
    raw = _read_toml((root or data_dir()) / "enduse.toml")
    elec = raw.get("electricity", {})
    sectors = []
    for name, row in sorted(raw.get("sectors", {}).items()):
        try:
            floor = None
            if "policy_floor" in row:
                floor = _year_series(row["policy_floor"], f"enduse.toml {name} policy_floor")
            sectors.append(
                SectorParams(
                    sector=name,
                    final_energy=_year_series(row["final_energy_ej"], f"{name} final_energy"),
                    share_start=float(row["share_start"]),
                    price_sensitivity=float(row["price_sensitivity"]),
                    inertia=float(row["inertia"]),
                    elec_efficiency=_year_series(row["elec_efficiency"], f"{name} elec_efficiency"),
                    fossil_efficiency=float(row["fossil_efficiency"]),
                    fossil_price=_year_series(row["fossil_price"], f"{name} fossil_price"),
                    fossil_factor_mt_ej=float(row["fossil_factor_mt_ej"]),
                    policy_floor=floor,
                )
            )
        except KeyError as exc:
            raise ParseError(f"enduse.toml [sectors.{name}]: missing {exc}") from None
    fl = raw.get("fleet", {})
    try:
        fleet = FleetConfig(
            fleet=VehicleFleet(
                stock=float(fl["stock_million"]),
                bev_stock=float(fl["bev_stock_million"]),
                annual_sales=float(fl["annual_sales_million"]),
                bev_sales_share=0.0,
                survival_rate=float(fl["survival_rate"]),
            ),
            bev_sales_share=_year_series(fl["bev_sales_share"], "fleet bev_sales_share"),
        )
    except KeyError as exc:
        raise ParseError(f"enduse.toml [fleet]: missing {exc}") from None
    return EndUseConfig(
        sectors=tuple(sectors),
        retail_margin=float(elec.get("retail_margin", 0.0)),
        price_passthrough=float(elec.get("price_passthrough", 1.0)),
        fleet=fleet,
    )


def load_appliances(root: Path | None = None) -> tuple[ApplianceSpec, ...]:
    raw = _read_toml((root or data_dir()) / "appliances.toml")
    out = []
    for name, row in raw.get("appliance", {}).items():
        try:
            out.append(
                ApplianceSpec(
                    name=name,
                    service_unit=str(row["service_unit"]),
                    electric_consumption=float(row["electric_kwh_per_unit"]),
                    electric_embodied=float(row["electric_embodied_g"]),
                    fossil_intensity=float(row["fossil_operational_g"]),
                    fossil_embodied=float(row["fossil_embodied_g"]),
                    efficiency_note=str(row.get("note", "")),
                )
            )
        except KeyError as exc:
            raise ParseError(f"appliances.toml [{name}]: missing {exc}") from None
    return tuple(out)


def scenario_path(name: str, root: Path | None = None) -> Path:
    path = (root or data_dir()) / "scenarios" / f"{name}.toml"
    if not path.exists():
        raise MissingScenario(f"no bundled scenario {name!r} at {path}")
    return path


def bundled_scenarios(root: Path | None = None) -> list[str]:
    folder = (root or data_dir()) / "scenarios"
    return sorted(p.stem for p in folder.glob("*.toml"))


class Table1Row(NamedTuple):
    generation_twh: float
    share_pct: float
    decline_pp_per_yr: float | None


def load_reference_table1(root: Path | None = None) -> dict[str, dict[int, Table1Row]]:
    """Published coal path table: scenario -> year -> (TWh, share, rate)."""
    path = (root or data_dir()) / "reference" / "table1.csv"
    out: dict[str, dict[int, Table1Row]] = {}
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            for rec in csv.DictReader(fh):
                rate = rec["decline_pp_per_yr"]
                out.setdefault(rec["scenario"], {})[int(rec["year"])] = Table1Row(
                    generation_twh=float(rec["generation_twh"]),
                    share_pct=float(rec["share_pct"]),
                    decline_pp_per_yr=float(rate) if rate else None,
                )
    except FileNotFoundError:
        raise ParseError(f"reference table not found: {path}") from None
    return out


class TableS1Row(NamedTuple):
    capacity_gw: float
    capacity_factor_pct: float | None


def load_reference_table_s1(root: Path | None = None) -> dict[str, dict[int, TableS1Row]]:
    path = (root or data_dir()) / "reference" / "table_s1.csv"
    out: dict[str, dict[int, TableS1Row]] = {}
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            for rec in csv.DictReader(fh):
                cf = rec["capacity_factor_pct"]
                out.setdefault(rec["scenario"], {})[int(rec["year"])] = TableS1Row(
                    capacity_gw=float(rec["capacity_gw"]),
                    capacity_factor_pct=float(cf) if cf else None,
                )
    except FileNotFoundError:
        raise ParseError(f"reference table not found: {path}") from None
    return out
