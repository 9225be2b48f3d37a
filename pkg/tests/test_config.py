import shutil

import pytest

from netzero import config
from netzero.errors import MissingScenario, ParseError
from netzero.scenario import NetZeroYear


def test_technologies_complete():
    techs = config.load_technologies()
    assert set(techs) == {
        "coal", "coal_ccs", "gas", "nuclear", "hydro", "wind", "solar", "biomass"
    }
    coal = techs["coal"]
    assert coal.emission_factor == 0.9
    assert coal.dispatchable
    assert techs["wind"].emission_factor == 0.0
    assert not techs["solar"].dispatchable


def test_cost_model_merges_both_files():
    costs = config.load_cost_model()
    assert costs.discount_rate == 0.05
    solar = costs.techs["solar"]
    assert solar.learning_rate == 0.20
    assert solar.tech.capex == 780.0
    assert costs.techs["coal"].lifetime_yr == 40
    assert costs.non_power_gt is not None
    assert costs.non_power_gt.value_at(2020) == pytest.approx(6.3)
    assert costs.non_power_gt.value_at(2060) == pytest.approx(0.15)


def test_ledger_params():
    params = config.load_ledger_params()
    assert params.fuel_production_overhead_gt == pytest.approx(1.5)
    assert params.tcre == pytest.approx(0.45)


def test_demand_paths():
    fast = config.load_demand("fast")
    assert fast.value_at(2020) == pytest.approx(8883.1)
    assert fast.last_year == 2060
    with pytest.raises(MissingScenario):
        config.load_demand("warp")


def test_enduse_config_structure():
    cfg = config.load_enduse()
    names = [s.sector for s in cfg.sectors]
    assert names == sorted(names)
    assert set(names) == {"buildings", "industry", "transport"}
    assert cfg.retail_margin == pytest.approx(46.0)
    assert cfg.price_passthrough == pytest.approx(0.08)
    transport = next(s for s in cfg.sectors if s.sector == "transport")
    assert transport.policy_floor is not None
    assert cfg.fleet.fleet.stock == pytest.approx(240.0)
    assert cfg.fleet.bev_sales_share.value_at(2060) == 1.0


def test_appliances_parse():
    apps = {a.name: a for a in config.load_appliances()}
    assert len(apps) == 5
    bev = apps["bev_ldv"]
    assert bev.service_unit == "km"
    assert bev.electric_consumption == pytest.approx(0.26)
    assert apps["h2_dri_eaf_steel"].efficiency_note != ""


def test_bundled_scenario_paths():
    names = config.bundled_scenarios()
    assert "fast" in names
    path = config.scenario_path("fast")
    assert path.exists()
    with pytest.raises(MissingScenario):
        config.scenario_path("nope")


def test_reference_table1_rows():
    table = config.load_reference_table1()
    assert set(table) == {"fast", "medium", "slow", "plateau30"}
    fast = table["fast"]
    assert fast[2020].generation_twh == pytest.approx(5430.0)
    assert fast[2020].decline_pp_per_yr is None
    assert fast[2030].share_pct == pytest.approx(21.4)
    assert fast[2030].decline_pp_per_yr == pytest.approx(-5.4)


def test_reference_table_s1_rows():
    table = config.load_reference_table_s1()
    assert "baseline" in table and "fast" in table
    fast = table["fast"]
    assert fast[2020].capacity_gw == pytest.approx(1070.0)
    assert fast[2040].capacity_gw == 0.0
    assert fast[2040].capacity_factor_pct is None


def test_env_var_data_dir(tmp_path, monkeypatch):
    alt = tmp_path / "data"
    shutil.copytree(config.data_dir(), alt)
    tech = alt / "technologies.toml"
    tech.write_text(tech.read_text().replace("emission_factor = 0.90", "emission_factor = 0.55"))
    monkeypatch.setenv(config.ENV_DATA_DIR, str(alt))
    assert config.load_technologies()["coal"].emission_factor == 0.55


def test_missing_file_is_parse_error(tmp_path, monkeypatch):
    monkeypatch.setenv(config.ENV_DATA_DIR, str(tmp_path))
    with pytest.raises(ParseError):
        config.load_technologies()


def test_bad_toml_is_parse_error(tmp_path, monkeypatch):
    alt = tmp_path / "data"
    alt.mkdir()
    (alt / "technologies.toml").write_text("not [valid\n")
    monkeypatch.setenv(config.ENV_DATA_DIR, str(alt))
    with pytest.raises(ParseError):
        config.load_technologies()
