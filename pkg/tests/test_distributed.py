import math
import random
from dataclasses import replace

import numpy as np
import pytest

from tempograph import (
    AmdahlPoint,
    ComputingElement,
    DistributedScenario,
    InvalidInputError,
    TimePoint,
    alpha_from_efficiency,
    amdahl_efficiency,
    efficiency_surface,
    point_from_measurement,
    simulate_distributed,
)

from _oracles import amdahl_total_time

REL = 1e-12


def element(eid, x, y, t_p):
    return ComputingElement(eid, TimePoint(x, y), t_p)


def colocated(works, t_init=0.0, **overheads):
    return DistributedScenario(
        orchestrator=element("orch", 0, 0, t_init),
        fellows=tuple(element(f"f{i}", 0, 0, w) for i, w in enumerate(works)),
        **overheads,
    )


class TestScenarioValidation:
    def test_needs_a_fellow(self):
        with pytest.raises(InvalidInputError):
            DistributedScenario(orchestrator=element("orch", 0, 0, 1.0), fellows=())

    def test_unique_ids(self):
        with pytest.raises(InvalidInputError):
            DistributedScenario(
                orchestrator=element("orch", 0, 0, 1.0),
                fellows=(element("orch", 1, 0, 1.0),),
            )

    def test_negative_overheads(self):
        for field in ("dispatch_time", "collect_time", "closing_time"):
            with pytest.raises(InvalidInputError):
                colocated([1.0], **{field: -0.5})


class TestSimulateDistributed:
    def test_pure_fork_join(self):
        result = simulate_distributed(colocated([3.0, 3.0], t_init=1.0,
                                                closing_time=1.0))
        assert result.total_time == 5.0
        assert result.dispatch_end == 1.0
        assert result.closing_start == 4.0

    def test_slowest_branch_decides(self):
        result = simulate_distributed(colocated([1.0, 5.0, 2.0]))
        assert result.total_time == 5.0
        assert result.critical_fellow == "f1"
        ends = [f.reception_end for f in result.fellows]
        assert max(ends) == 5.0

    def test_staggered_starts_at_two_distances(self):
        delta, work = 0.2, 1.0
        scenario = DistributedScenario(
            orchestrator=element("orch", 0, 0, 1.0),
            fellows=(element("near", -0.5, 0, work), element("far", 1.0, 0, work)),
            dispatch_time=delta,
        )
        result = simulate_distributed(scenario)
        near, far = result.fellows
        assert near.command_sent == pytest.approx(1.0 + delta, rel=REL)
        assert far.command_sent == pytest.approx(1.0 + 2 * delta, rel=REL)
        assert far.started - near.started == pytest.approx(delta + 0.5, rel=REL)
        assert far.result_arrived - near.result_arrived == pytest.approx(
            delta + 1.0, rel=REL)
        assert result.critical_fellow == "far"

    def test_fellow_lifecycle_ordering(self):
        rng = random.Random(51)
        for _ in range(30):
            scenario = DistributedScenario(
                orchestrator=element("orch", 0, 0, rng.uniform(0, 2)),
                fellows=tuple(
                    element(f"f{i}", rng.uniform(-2, 2), rng.uniform(-2, 2),
                            rng.uniform(0, 3))
                    for i in range(rng.randint(1, 5))),
                dispatch_time=rng.uniform(0, 0.5),
                collect_time=rng.uniform(0, 0.5),
                closing_time=rng.uniform(0, 0.5),
            )
            result = simulate_distributed(scenario)
            for timing in result.fellows:
                instants = (timing.command_sent, timing.started, timing.finished,
                            timing.result_arrived, timing.reception_start,
                            timing.reception_end)
                assert all(a <= b for a, b in zip(instants, instants[1:]))
                assert timing.reception_start >= result.dispatch_end
            receptions = sorted((f.reception_start, f.reception_end)
                                for f in result.fellows)
            for (_, end), (start, _) in zip(receptions, receptions[1:]):
                assert start >= end
            last_end = max(f.reception_end for f in result.fellows)
            assert result.closing_start == last_end
            assert result.total_time == last_end + scenario.closing_time
            critical = next(f for f in result.fellows
                            if f.fellow_id == result.critical_fellow)
            assert critical.reception_end == last_end

    def test_total_monotone_in_fields(self):
        base = DistributedScenario(
            orchestrator=element("orch", 0, 0, 1.0),
            fellows=(element("f0", 0.5, 0, 2.0), element("f1", -0.5, 0, 1.0)),
            dispatch_time=0.1, collect_time=0.1, closing_time=0.1,
        )
        reference = simulate_distributed(base).total_time
        grown = [
            replace(base, dispatch_time=0.3),
            replace(base, collect_time=0.3),
            replace(base, closing_time=0.3),
            replace(base, orchestrator=element("orch", 0, 0, 1.5)),
            replace(base, fellows=(element("f0", 0.5, 0, 2.5), base.fellows[1])),
            replace(base, fellows=(element("f0", 1.5, 0, 2.0), base.fellows[1])),
        ]
        for scenario in grown:
            assert simulate_distributed(scenario).total_time >= reference

    def test_critical_fellow_scale_invariant(self):
        base = DistributedScenario(
            orchestrator=element("orch", 0, 0, 0.7),
            fellows=(element("f0", 0.4, 0.1, 2.0), element("f1", -0.9, 0, 1.8),
                     element("f2", 0, 1.1, 0.3)),
            dispatch_time=0.05, collect_time=0.2, closing_time=0.4,
        )
        critical = simulate_distributed(base).critical_fellow
        for k in (3.0, 0.25, 17.0):
            scaled = DistributedScenario(
                orchestrator=element("orch", 0, 0, 0.7 * k),
                fellows=tuple(element(f.id, f.position.x * k, f.position.y * k,
                                      f.processing_time * k)
                              for f in base.fellows),
                dispatch_time=0.05 * k, collect_time=0.2 * k, closing_time=0.4 * k,
            )
            assert simulate_distributed(scaled).critical_fellow == critical

    def test_reproduces_amdahl_ratio(self):
        work = 8.0
        for alpha in (0.25, 0.5, 0.9):
            serial = simulate_distributed(
                colocated([alpha * work], t_init=(1 - alpha) * work)).total_time
            for n in (2, 3, 4, 8):
                parallel = simulate_distributed(
                    colocated([alpha * work / n] * n,
                              t_init=(1 - alpha) * work)).total_time
                assert parallel / serial == pytest.approx(
                    (1 - alpha) + alpha / n, rel=1e-9)
                assert parallel == pytest.approx(
                    amdahl_total_time(alpha, work, n), rel=1e-9)


class TestAmdahlEfficiency:
    def test_perfectly_parallel(self):
        for n in (1, 2, 10, 1e6):
            assert amdahl_efficiency(1.0, n) == 1.0

    def test_single_unit(self):
        for alpha in (0.0, 0.3, 0.999, 1.0):
            assert amdahl_efficiency(alpha, 1) == 1.0

    def test_large_machine_small_fraction_left(self):
        value = amdahl_efficiency(0.999, 1e6)
        assert value == pytest.approx(9.9901e-4, abs=1e-8)

    def test_domain(self):
        for alpha, n in ((-0.1, 2), (1.1, 2), (0.5, 0.5), (math.nan, 2), (0.5, math.inf)):
            with pytest.raises(InvalidInputError):
                amdahl_efficiency(alpha, n)

    def test_monotone(self):
        values = [amdahl_efficiency(0.9, n) for n in (1, 2, 4, 8, 64)]
        assert values == sorted(values, reverse=True)
        values = [amdahl_efficiency(a, 16) for a in (0.0, 0.5, 0.9, 0.99, 1.0)]
        assert values == sorted(values)


class TestAlphaFromEfficiency:
    def test_perfect_efficiency(self):
        assert alpha_from_efficiency(1.0, 100) == 1.0

    def test_fully_sequential(self):
        assert alpha_from_efficiency(0.5, 2) == 0.0

    def test_roundtrip_alpha(self):
        for n in (2, 3, 10, 1000):
            for alpha in (0.0, 0.1, 0.5, 0.9, 0.999, 1.0):
                e = amdahl_efficiency(alpha, n)
                assert alpha_from_efficiency(e, n) == pytest.approx(alpha, abs=1e-12)

    def test_roundtrip_efficiency(self):
        rng = random.Random(52)
        for _ in range(200):
            n = rng.randint(2, 10_000)
            e = rng.uniform(1.0 / n, 1.0)
            back = amdahl_efficiency(alpha_from_efficiency(e, n), n)
            assert back == pytest.approx(e, rel=1e-12)

    def test_clamps_out_of_band(self):
        assert alpha_from_efficiency(0.05, 10) == 0.0

    def test_domain(self):
        with pytest.raises(InvalidInputError):
            alpha_from_efficiency(0.5, 1)
        with pytest.raises(InvalidInputError):
            alpha_from_efficiency(0.0, 4)
        with pytest.raises(InvalidInputError):
            alpha_from_efficiency(1.2, 4)


class TestEfficiencySurface:
    def test_matches_scalar_bitwise(self):
        alphas = [0.0, 0.25, 0.9, 0.999, 1.0]
        ns = [1.0, 2.0, 7.0, 1024.0]
        surface = efficiency_surface(alphas, ns)
        assert surface.shape == (5, 4)
        for i, alpha in enumerate(alphas):
            for j, n in enumerate(ns):
                assert surface[i, j] == amdahl_efficiency(alpha, n)

    def test_unit_rows(self):
        assert np.all(efficiency_surface([1.0], [1, 5, 500]) == 1.0)
        assert np.all(efficiency_surface([0.0, 0.5, 1.0], [1.0]) == 1.0)

    def test_monotone_along_axes(self):
        surface = efficiency_surface(np.linspace(0, 1, 11), [1, 2, 4, 8, 16])
        assert np.all(np.diff(surface, axis=0) >= 0)      # better with alpha
        assert np.all(np.diff(surface, axis=1) <= 0)      # worse with n
        interior = surface[:-1]                           # alpha < 1 rows
        assert np.all(np.diff(interior, axis=1) < 0)

    def test_bad_grids(self):
        for alphas, ns in (([], [2]), ([0.5], []), ([1.5], [2]),
                           ([0.5], [0.5]), ([math.nan], [2])):
            with pytest.raises(InvalidInputError):
                efficiency_surface(alphas, ns)


class TestAmdahlPoint:
    def test_consistent_triple(self):
        point = AmdahlPoint(n=10, alpha=0.9, efficiency=amdahl_efficiency(0.9, 10))
        assert point.alpha == 0.9

    def test_inconsistent_triple_rejected(self):
        with pytest.raises(InvalidInputError):
            AmdahlPoint(n=10, alpha=0.9, efficiency=0.9)

    def test_from_measurement(self):
        e = amdahl_efficiency(0.999, 1e6)
        point = point_from_measurement(e, 1e6)
        assert point.alpha == pytest.approx(0.999, rel=1e-9)
        assert point.efficiency == e

    def test_out_of_band_measurement_rejected(self):
        with pytest.raises(InvalidInputError) as excinfo:
            point_from_measurement(0.05, 10)
        assert "band" in str(excinfo.value)
