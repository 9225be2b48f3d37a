import pytest

from netzero.config import load_appliances
from netzero.errors import DomainError, EmptyTrajectory, ValidationError
from netzero.parity import (
    AlreadyReached,
    ApplianceSpec,
    Never,
    hydrogen_route_consumption,
    parity_threshold,
    parity_year,
    service_intensity_electric,
    service_intensity_fossil,
)


def app(consumption=0.18, embodied=50.0, fossil=170.0, fossil_emb=30.0):
    return ApplianceSpec(
        name="x", service_unit="km",
        electric_consumption=consumption, electric_embodied=embodied,
        fossil_intensity=fossil, fossil_embodied=fossil_emb,
    )


def test_service_intensity_hand_values():
    a = app()
    # 50 g embodied plus 0.18 kWh/km on a 600 g/kWh grid
    assert service_intensity_electric(a, 600.0) == pytest.approx(158.0)
    assert service_intensity_fossil(a) == pytest.approx(200.0)
    with pytest.raises(DomainError):
        service_intensity_electric(a, -1.0)


def test_threshold_crossing_point():
    a = app()
    th = parity_threshold(a)
    assert th == pytest.approx((170.0 + 30.0 - 50.0) / 0.18)
    # at the threshold the two intensity lines meet
    assert service_intensity_electric(a, th) == pytest.approx(service_intensity_fossil(a))


def test_threshold_never_when_embodied_dominates():
    a = app(embodied=500.0, fossil=170.0, fossil_emb=30.0)
    assert parity_threshold(a) == Never()


def test_hydrogen_route_consumption():
    # 2100 kWh direct need through 62% electrolysis and 60% conversion
    assert hydrogen_route_consumption(2100.0, 0.62, 0.60) == pytest.approx(5645.16129, rel=1e-6)
    with pytest.raises(DomainError):
        hydrogen_route_consumption(0.0, 0.62, 0.60)
    with pytest.raises(DomainError):
        hydrogen_route_consumption(100.0, 1.2, 0.5)


def test_parity_year_first_crossing():
    a = app()  # threshold ~833 g/kWh
    traj = ((2023, 900.0), (2024, 870.0), (2025, 820.0), (2026, 700.0))
    name, year = parity_year(a, traj, "s")
    assert name == "s"
    assert year == 2025


def test_parity_year_already_and_never():
    a = app()
    below = ((2023, 100.0), (2024, 90.0))
    assert parity_year(a, below, "s")[1] == AlreadyReached(2023)
    above = ((2023, 1500.0), (2060, 1200.0))
    assert parity_year(a, above, "s")[1] == Never()
    with pytest.raises(EmptyTrajectory):
        parity_year(a, (), "s")


def test_never_sentinel_equality():
    assert Never() == Never()
    assert Never() != AlreadyReached(2023)
    assert len({Never(), Never()}) == 1


def test_spec_field_validation():
    with pytest.raises(ValidationError):
        app(consumption=0.0)
    with pytest.raises(ValidationError):
        app(embodied=-1.0)


def test_bundled_appliance_thresholds():
    thresholds = {a.name: parity_threshold(a) for a in load_appliances()}
    assert thresholds["bev_ldv"] == pytest.approx(520.0, abs=0.5)
    assert thresholds["resistive_boiler_heat"] == pytest.approx(250.0, abs=0.5)
    assert thresholds["heat_pump_heat"] == pytest.approx(814.5, abs=0.5)
    assert thresholds["h2_dri_eaf_steel"] == pytest.approx(247.1, abs=0.5)
    assert thresholds["eaf_scrap_steel"] == pytest.approx(3480.8, abs=0.5)
    # the heat pump tolerates a dirtier grid than the resistive boiler
    assert thresholds["heat_pump_heat"] > thresholds["resistive_boiler_heat"]
