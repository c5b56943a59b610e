import numpy as np
import pytest

from robustcurve import (
    CurveSpec,
    ParameterError,
    Scenario,
    attack_curve,
    clamp_filter,
    complete_graph,
    label_vector,
    removal_order,
    robustness,
    star_graph,
)


class TestRobustness:
    def test_mean(self):
        assert robustness([1.0, 0.5, 0.5]) == pytest.approx(2 / 3, abs=1e-15)

    def test_clique_closed_form(self):
        g = complete_graph(10)
        curve = attack_curve(g, removal_order(g, Scenario.RNF, 0), CurveSpec(10))
        assert robustness(curve) == pytest.approx(0.55, abs=1e-15)

    def test_star_closed_form(self):
        g = star_graph(10)
        curve = attack_curve(g, removal_order(g, Scenario.HDAA), CurveSpec(10))
        assert robustness(curve) == pytest.approx(0.19, abs=1e-15)

    def test_empty_rejected(self):
        with pytest.raises(ParameterError):
            robustness([])

    def test_bounded_by_curve(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            curve = rng.random(rng.integers(1, 40))
            r = robustness(curve)
            assert curve.min() <= r <= curve.max()


class TestLabelVector:
    def test_append(self):
        v = label_vector([1.0, 0.5, 0.5])
        assert np.allclose(v, [1.0, 0.5, 0.5, 2 / 3])

    def test_dimension(self):
        assert len(label_vector(np.ones(1000))) == 1001

    def test_all_ones(self):
        assert label_vector(np.ones(5))[-1] == 1.0

    def test_round_trip(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            curve = rng.random(17)
            v = label_vector(curve)
            assert robustness(v[:-1]) == v[-1]


class TestClampFilter:
    def test_clamps(self):
        assert np.array_equal(clamp_filter([1.2, -0.1, 0.5]), [1.0, 0.0, 0.5])

    def test_identity_inside(self):
        assert np.array_equal(clamp_filter([0.3, 0.7]), [0.3, 0.7])

    def test_idempotent(self):
        rng = np.random.default_rng(2)
        v = rng.normal(0.5, 1.0, size=100)
        once = clamp_filter(v)
        assert np.array_equal(clamp_filter(once), once)
        assert once.min() >= 0.0 and once.max() <= 1.0

    def test_no_monotonicity_enforced(self):
        v = [0.2, 0.9, 0.1]
        assert np.array_equal(clamp_filter(v), v)
