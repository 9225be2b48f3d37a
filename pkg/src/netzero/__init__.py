"""Deterministic coal phase-out model for the Chinese power and end-use system.

Scenario TOML in, CSV/SVG out. The heavy lifting lives in `expansion`
(sequential-LP capacity planning), `enduse` (sector electrification),
`emissions` (carbon ledger), and `parity` (appliance break-even years);
`pipeline.run_scenario` wires them together.
"""

from .config import (
    load_appliances,
    load_cost_model,
    load_demand,
    load_enduse,
    load_ledger_params,
    load_technologies,
)
from .emissions import budget_share, cumulative, temperature_delta
from .errors import Infeasible, NetzeroError, ParseError, ValidationError
from .expansion import plan_expansion, solve_fixed_budget
from .parity import parity_threshold, parity_year
from .pipeline import (
    ScenarioRun,
    cumulative_summary,
    grid_trajectory,
    parity_results,
    run_many,
    run_scenario,
)
from .report import validate, write_table1_csv
from .scenario import load_scenario, parse_policy_mode, validate_spec

__version__ = "0.1.0"

__all__ = [
    "Infeasible",
    "NetzeroError",
    "ParseError",
    "ScenarioRun",
    "ValidationError",
    "budget_share",
    "cumulative",
    "cumulative_summary",
    "grid_trajectory",
    "load_appliances",
    "load_cost_model",
    "load_demand",
    "load_enduse",
    "load_ledger_params",
    "load_scenario",
    "load_technologies",
    "parity_results",
    "parity_threshold",
    "parity_year",
    "parse_policy_mode",
    "plan_expansion",
    "run_many",
    "run_scenario",
    "solve_fixed_budget",
    "temperature_delta",
    "validate",
    "validate_spec",
    "write_table1_csv",
]
