import numpy as np
import pytest

from robustcurve import (
    CurveSpec,
    ParameterError,
    Scenario,
    bench,
    clamp_filter,
    error_report,
    export_plot_data,
    gen_er,
    mean_abs_diff,
    mean_std,
)


class TestMeanStd:
    def test_identical_curves(self):
        assert mean_std([[0.5, 0.5], [0.5, 0.5]]) == 0.0

    def test_two_constant_curves(self):
        assert mean_std([[0, 0], [1, 1]]) == 0.5  # population std at each index

    def test_reorder_invariant(self):
        rng = np.random.default_rng(0)
        curves = rng.random((10, 20))
        assert mean_std(curves) == pytest.approx(mean_std(curves[::-1]), abs=1e-15)

    def test_limit_excludes_tail(self):
        curves = [[0.0, 0.0, 5.0], [1.0, 1.0, -5.0]]
        assert mean_std(curves, limit=2) == 0.5

    def test_needs_two(self):
        with pytest.raises(ParameterError):
            mean_std([[1.0, 2.0]])


class TestMeanAbsDiff:
    def test_zero_on_equal(self):
        x = np.random.default_rng(1).random((5, 10))
        assert mean_abs_diff(x, x) == 0.0

    def test_constant_offset(self):
        x = np.random.default_rng(2).random((5, 10))
        assert mean_abs_diff(x + 0.01, x) == pytest.approx(0.01, abs=1e-12)

    def test_symmetric(self):
        rng = np.random.default_rng(3)
        a, b = rng.random((4, 7)), rng.random((4, 7))
        assert mean_abs_diff(a, b) == pytest.approx(mean_abs_diff(b, a), abs=1e-15)

    def test_shape_mismatch(self):
        with pytest.raises(ParameterError):
            mean_abs_diff([[1.0]], [[1.0, 2.0]])

    def test_clamping_never_hurts(self):
        # vs a simulation inside the [0,1] box, moving predictions into the
        # box cannot increase the mean absolute difference
        rng = np.random.default_rng(4)
        for _ in range(30):
            sim = rng.random((6, 12))
            pred = rng.normal(0.5, 1.0, size=(6, 12))
            assert mean_abs_diff(clamp_filter(pred), sim) <= mean_abs_diff(pred, sim) + 1e-15


class TestErrorReport:
    def test_fields_and_values(self):
        steps = 4
        sim = [np.array([1.0, 0.8, 0.4, 0.2, 0.6]), np.array([1.0, 0.6, 0.4, 0.0, 0.5])]
        pred = [s + 0.01 for s in sim]
        rep = error_report(pred, sim, steps, "rnf", model="er", avg_k=4.0)
        assert rep["n_networks"] == 2
        assert rep["e_pair"] == pytest.approx(0.01, abs=1e-9)
        assert rep["e_sim"] > 0 and rep["e_pred"] > 0
        assert rep["r_direct_mae"] == pytest.approx(0.01, abs=1e-9)
        assert len(rep["r_direct_abs_err"]) == 2
        assert rep["scenario"] == "rnf" and rep["model"] == "er" and rep["avg_k"] == 4.0

    def test_curve_derived_robustness(self):
        steps = 2
        sim = [np.array([1.0, 0.0, 0.5])]* 2
        pred = [np.array([0.8, 0.0, 0.9])] * 2
        rep = error_report(pred, sim, steps, "ref")
        assert rep["r_curve_mae"] == pytest.approx(abs(0.4 - 0.5), abs=1e-12)
        assert rep["r_direct_mae"] == pytest.approx(abs(0.9 - 0.5), abs=1e-12)


class TestPlotData:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(5)
        mean, std = rng.random(1000), rng.random(1000) * 0.1
        path = str(tmp_path / "plot.csv")
        export_plot_data(mean, std, path)
        lines = open(path).read().splitlines()
        assert lines[0] == "p,mean,std"
        assert len(lines) == 1001
        back = np.array([[float(x) for x in line.split(",")] for line in lines[1:]])
        assert np.allclose(back[:, 1], mean, rtol=1e-8)
        assert np.allclose(back[:, 2], std, rtol=1e-8)

    def test_zero_std(self, tmp_path):
        path = str(tmp_path / "plot.csv")
        export_plot_data([0.5, 0.5], [0.0, 0.0], path)
        rows = open(path).read().splitlines()[1:]
        assert all(row.endswith(",0") for row in rows)

    def test_length_mismatch(self, tmp_path):
        with pytest.raises(ParameterError):
            export_plot_data([1.0], [0.1, 0.2], str(tmp_path / "x.csv"))


class TestBench:
    def test_rows_and_speedup(self):
        g = gen_er(100, 4, 0)
        rows = bench(g, Scenario.HEDAA, CurveSpec(100), repeats=1)
        names = {r["engine"] for r in rows}
        assert names == {"naive", "incremental"}
        for r in rows:
            assert r["seconds"] > 0
            assert r["speedup_vs_naive"] > 0

    def test_extra_engine(self):
        g = gen_er(50, 4, 0)
        rows = bench(g, Scenario.RNF, CurveSpec(10), engines=("incremental",),
                     repeats=1, seed=1, extra_engines={"noop": lambda: None})
        assert {r["engine"] for r in rows} == {"incremental", "noop"}
        assert all(r["speedup_vs_naive"] is None for r in rows)

    def test_unknown_engine(self):
        with pytest.raises(ParameterError):
            bench(gen_er(20, 2, 0), Scenario.RNF, CurveSpec(5), engines=("fast",), seed=0)
