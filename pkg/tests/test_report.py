import os

import numpy as np

from robustcurve.report import plot_band, plot_comparison, plot_curve, plot_robustness_scatter


def test_figures_render_to_files(tmp_path):
    rng = np.random.default_rng(0)
    curve = np.clip(1.0 - np.linspace(0, 1, 50) + rng.normal(0, 0.02, 50), 0, 1)
    std = np.full(50, 0.05)

    paths = {
        "curve": str(tmp_path / "curve.png"),
        "band": str(tmp_path / "band.png"),
        "cmp": str(tmp_path / "cmp.png"),
        "scatter": str(tmp_path / "scatter.png"),
    }
    plot_curve(curve, paths["curve"], title="one curve")
    plot_band(curve, std, paths["band"], title="band")
    plot_comparison(curve, std, np.clip(curve + 0.03, 0, 1), std, paths["cmp"])
    plot_robustness_scatter(rng.random(30), rng.random(30), paths["scatter"])

    for p in paths.values():
        assert os.path.getsize(p) > 2000  # non-trivial PNG payload
