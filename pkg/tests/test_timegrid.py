import pytest

from netzero.errors import DomainError, EmptySeries, MissingYear, ValidationError
from netzero.timegrid import DEFAULT_GRID, NodeSeries, TimeGrid, interpolate_annual


def test_default_grid_nodes():
    assert DEFAULT_GRID.years == tuple(range(2020, 2061, 5))
    assert DEFAULT_GRID.node_count == 9
    assert DEFAULT_GRID.index(2035) == 3
    assert DEFAULT_GRID.is_node(2040)
    assert not DEFAULT_GRID.is_node(2041)


def test_grid_rejects_bad_span():
    with pytest.raises(DomainError):
        TimeGrid(start_year=2030, end_year=2020)
    with pytest.raises(DomainError):
        TimeGrid(start_year=2020, end_year=2033, step=5)


def test_grid_index_off_node():
    with pytest.raises(MissingYear):
        DEFAULT_GRID.index(2022)


def test_series_basic_access():
    s = NodeSeries([(2020, 1.0), (2030, 3.0)])
    assert s.years == (2020, 2030)
    assert s.value_at(2030) == 3.0
    assert s.first_year == 2020 and s.last_year == 2030
    assert len(s) == 2
    assert s.to_dict() == {2020: 1.0, 2030: 3.0}


def test_series_requires_increasing_years():
    with pytest.raises(ValidationError):
        NodeSeries([(2030, 1.0), (2020, 2.0)])
    with pytest.raises(ValidationError):
        NodeSeries([(2020, 1.0), (2020, 2.0)])
    with pytest.raises(EmptySeries):
        NodeSeries([])


def test_from_dict_sorts():
    s = NodeSeries.from_dict({2030: 3.0, 2020: 1.0})
    assert s.years == (2020, 2030)


def test_value_at_is_exact():
    s = NodeSeries([(2020, 1.0), (2030, 3.0)])
    with pytest.raises(MissingYear):
        s.value_at(2025)


def test_interp_linear_and_domain():
    s = NodeSeries([(2020, 1.0), (2030, 3.0), (2040, 3.0)])
    assert s.interp(2025) == pytest.approx(2.0)
    assert s.interp(2020) == 1.0
    assert s.interp(2040) == 3.0
    assert s.interp(2032.5) == pytest.approx(3.0)
    with pytest.raises(DomainError):
        s.interp(2019)
    with pytest.raises(DomainError):
        s.interp(2041)


def test_map_combine_restrict():
    a = NodeSeries([(2020, 1.0), (2025, 2.0), (2030, 4.0)])
    b = NodeSeries([(2025, 10.0), (2030, 20.0), (2035, 30.0)])
    assert a.map(lambda v: 2 * v).values == (2.0, 4.0, 8.0)
    c = a.combine(b, lambda x, y: x + y)
    assert c.years == (2025, 2030)
    assert c.values == (12.0, 24.0)
    r = a.restrict(2024, 2030)
    assert r.years == (2025, 2030)
    with pytest.raises(EmptySeries):
        a.restrict(1990, 1995)
    with pytest.raises(EmptySeries):
        a.combine(NodeSeries([(1999, 0.0)]), lambda x, y: x)


def test_grid_alignment_helpers():
    s = NodeSeries([(2020, 1.0), (2022, 2.0), (2030, 3.0)])
    assert s.off_grid_years() == (2022,)
    assert s.missing_interior() == (2025,)


def test_interpolate_annual_endpoints_and_midpoints():
    s = NodeSeries([(2020, 0.0), (2030, 10.0)])
    annual = dict(interpolate_annual(s))
    assert len(annual) == 11
    assert annual[2020] == 0.0
    assert annual[2027] == pytest.approx(7.0)
    assert annual[2030] == 10.0


def test_annual_interpolation_matches_fine_riemann():
    # trapezoid on the annual grid must agree with a monthly Riemann sum
    # to well under half a percent for a piecewise-linear integrand
    s = NodeSeries([(2020, 4.0), (2025, 7.0), (2030, 1.0), (2040, 0.5)])
    annual = dict(interpolate_annual(s))
    trap = sum(0.5 * (annual[y] + annual[y + 1]) for y in range(2020, 2040))
    months = 12
    riemann = 0.0
    for y in range(2020, 2040):
        for m in range(months):
            riemann += s.interp(y + (m + 0.5) / months) / months
    assert trap == pytest.approx(riemann, rel=0.005)
