import random

import pytest

from netzero.errors import DomainError, EmptySeries, InfeasibleDispatch, ValidationError
from netzero.power import (
    PowerMix,
    Technology,
    coal_share,
    dispatch_residual,
    generation_from_capacity,
    generation_series,
    share_decline_rate,
)
from netzero.timegrid import NodeSeries


def tech(tid, vc, max_cf=0.5, ef=0.0, dispatchable=True):
    return Technology(
        id=tid, emission_factor=ef, dispatchable=dispatchable,
        max_cf=max_cf, variable_cost=vc, capex=1000.0,
    )


def test_generation_identity():
    # 100 GW at cf 0.5: 100 * 0.5 * 8760 / 1000 = 438 TWh
    assert generation_from_capacity(100.0, 0.5) == pytest.approx(438.0)
    assert generation_from_capacity(0.0, 0.9) == 0.0
    with pytest.raises(DomainError):
        generation_from_capacity(-1.0, 0.5)
    with pytest.raises(DomainError):
        generation_from_capacity(1.0, 1.5)


def test_generation_series_override_precedence():
    cap = NodeSeries([(2020, 1000.0), (2025, 800.0)])
    cf = NodeSeries([(2020, 0.5), (2025, 0.5)])
    override = NodeSeries([(2025, 1234.0)])
    implied = generation_series(cap, cf, override)
    assert implied.value_at(2020) == pytest.approx(4380.0)
    assert implied.value_at(2025) == 1234.0


def test_coal_share_bounds():
    assert coal_share(50.0, 200.0) == 25.0
    with pytest.raises(DomainError):
        coal_share(10.0, 0.0)
    with pytest.raises(DomainError):
        coal_share(300.0, 200.0)


def test_share_decline_rate_backward_difference():
    shares = NodeSeries([(2020, 61.2), (2025, 48.3), (2030, 21.4)])
    rate = share_decline_rate(shares)
    assert rate.years == (2025, 2030)
    assert rate.value_at(2025) == pytest.approx((48.3 - 61.2) / 5)
    assert rate.value_at(2030) == pytest.approx((21.4 - 48.3) / 5)
    with pytest.raises(EmptySeries):
        share_decline_rate(NodeSeries([(2020, 61.2)]))


def test_mix_total_consistency_enforced():
    gen = {"coal": NodeSeries([(2020, 100.0)]), "wind": NodeSeries([(2020, 50.0)])}
    mix = PowerMix(generation=gen)
    assert mix.total.value_at(2020) == 150.0
    assert mix.tech_share_pct("wind", 2020) == pytest.approx(100 * 50 / 150)
    with pytest.raises(ValidationError):
        PowerMix(generation=gen, total=NodeSeries([(2020, 999.0)]))
    with pytest.raises(ValidationError):
        PowerMix(generation={"coal": NodeSeries([(2020, -5.0)])})


def test_dispatch_merit_order():
    techs = [(tech("gas", 58.0), 100.0), (tech("nuclear", 30.0), 100.0)]
    # each has 438 TWh potential; cheapest (nuclear) fills first
    out = dispatch_residual(500.0, 0.0, techs)
    assert out["nuclear"] == pytest.approx(438.0)
    assert out["gas"] == pytest.approx(62.0)


def test_dispatch_ties_break_by_id():
    techs = [(tech("b_tech", 30.0), 10.0), (tech("a_tech", 30.0), 10.0)]
    out = dispatch_residual(43.8, 0.0, techs)
    assert out["a_tech"] == pytest.approx(43.8)
    assert out["b_tech"] == 0.0


def test_dispatch_coal_first_and_shortfall():
    techs = [(tech("gas", 58.0), 10.0)]
    assert dispatch_residual(100.0, 100.0, techs) == {"gas": 0.0}
    with pytest.raises(InfeasibleDispatch) as err:
        dispatch_residual(100.0, 0.0, techs)
    assert err.value.shortfall_twh == pytest.approx(100.0 - 43.8)


def brute_force_dispatch(demand, coal, techs, grain=2000):
    """Fill the residual by trying every merit order; the cheapest feasible
    assignment is unique here because costs are distinct, so greedy must match."""
    residual = max(0.0, demand - coal)
    best = None
    import itertools

    for perm in itertools.permutations(techs):
        left = residual
        alloc = {t.id: 0.0 for t, _ in techs}
        cost = 0.0
        for t, cap_gw in perm:
            take = min(t.potential_twh(cap_gw), left)
            alloc[t.id] = take
            cost += take * t.variable_cost
            left -= take
        if left > 1e-9:
            continue
        if best is None or cost < best[0] - 1e-9:
            best = (cost, alloc)
    return best


def test_dispatch_matches_exhaustive_assignment():
    rng = random.Random(42)
    for _ in range(40):
        n = rng.randint(1, 4)
        techs = []
        used = set()
        for i in range(n):
            vc = rng.choice([5, 7, 28, 30, 40, 58, 90])
            while vc in used:
                vc += 1
            used.add(vc)
            techs.append((tech(f"t{i}", float(vc), max_cf=rng.uniform(0.2, 0.9)),
                          rng.uniform(5.0, 300.0)))
        potential = sum(t.potential_twh(c) for t, c in techs)
        demand = rng.uniform(0.0, potential)
        coal = rng.uniform(0.0, demand)
        got = dispatch_residual(demand, coal, techs)
        want = brute_force_dispatch(demand, coal, techs)
        assert want is not None
        for tid, v in want[1].items():
            assert got[tid] == pytest.approx(v, abs=1e-6)
        assert sum(got.values()) == pytest.approx(max(0.0, demand - coal), abs=1e-6)
