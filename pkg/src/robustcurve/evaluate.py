"""Prediction-vs-simulation comparison, error statistics, and benchmarks.

Statistics follow the curve-only convention: when label vectors (curve +
trailing robustness) are passed in, the caller limits the computation to
the first L positions.  Standard deviations are population std.
"""

from __future__ import annotations

import statistics
import time
from typing import Callable, Sequence

import numpy as np

from .attack import CurveSpec, Scenario, attack_curve, naive_attack_curve, removal_order
from .errors import ParameterError
from .graph import Graph


def _as_matrix(curves, limit: int | None) -> np.ndarray:
    arr = np.asarray(curves, dtype=float)
    if arr.ndim != 2:
        raise ParameterError("curve set must be a list of equal-length vectors")
    if not np.isfinite(arr).all():
        raise ParameterError("curve set contains non-finite values")
    if limit is not None:
        arr = arr[:, :limit]
    return arr


def mean_std(curves, limit: int | None = None) -> float:
    """Mean over positions of the population std across curves.

    limit restricts the computation to the first `limit` positions (used to
    exclude the trailing robustness element of label vectors).
    """
    arr = _as_matrix(curves, limit)
    if arr.shape[0] < 2:
        raise ParameterError("mean_std needs at least 2 curves")
    return float(arr.std(axis=0, ddof=0).mean())


def mean_abs_diff(pred, sim, limit: int | None = None) -> float:
    """Per-network mean |pred - sim| over positions, averaged over networks."""
    p = _as_matrix(pred, limit)
    s = _as_matrix(sim, limit)
    if p.shape != s.shape:
        raise ParameterError(f"shape mismatch: {p.shape} vs {s.shape}")
    return float(np.abs(p - s).mean(axis=1).mean())


def error_report(
    pred,
    sim,
    steps: int,
    scenario: str,
    model: str = "mixed",
    avg_k: float | None = None,
) -> dict:
    """Error statistics between predicted and simulated label vectors.

    pred/sim are matched sets of label vectors (curve + robustness,
    dimension steps + 1).  Curve statistics use the first `steps` positions;
    robustness errors compare the trailing element (direct prediction) and
    the mean of the predicted curve (curve-derived) against simulation.
    """
    p = _as_matrix(pred, None)
    s = _as_matrix(sim, None)
    if p.shape != s.shape:
        raise ParameterError(f"shape mismatch: {p.shape} vs {s.shape}")
    if p.shape[1] != steps + 1:
        raise ParameterError(f"label vectors must have dimension steps+1={steps + 1}")
    r_sim = s[:, -1]
    r_direct = p[:, -1]
    r_from_curve = p[:, :steps].mean(axis=1)
    return {
        "e_sim": mean_std(s, limit=steps),
        "e_pred": mean_std(p, limit=steps),
        "e_pair": mean_abs_diff(p, s, limit=steps),
        "scenario": scenario,
        "model": model,
        "avg_k": avg_k,
        "n_networks": int(p.shape[0]),
        "r_direct_mae": float(np.abs(r_direct - r_sim).mean()),
        "r_curve_mae": float(np.abs(r_from_curve - r_sim).mean()),
        "r_direct_abs_err": np.abs(r_direct - r_sim).tolist(),
        "r_curve_abs_err": np.abs(r_from_curve - r_sim).tolist(),
    }


def export_plot_data(mean_curve: Sequence[float], std_curve: Sequence[float], path: str) -> None:
    """CSV `p,mean,std` over the removal grid, 9 significant digits."""
    if len(mean_curve) != len(std_curve):
        raise ParameterError("mean and std curves must have equal length")
    steps = len(mean_curve)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("p,mean,std\n")
        for j in range(steps):
            fh.write(f"{j / steps:.9g},{mean_curve[j]:.9g},{std_curve[j]:.9g}\n")


def curve_set_summary(curves) -> tuple[np.ndarray, np.ndarray]:
    """Per-position mean and population std of a curve set."""
    arr = _as_matrix(curves, None)
    return arr.mean(axis=0), arr.std(axis=0, ddof=0)


# ---------------------------------------------------------------------------
# Timing benchmark
# ---------------------------------------------------------------------------

def bench(
    g: Graph,
    scenario: Scenario,
    spec: CurveSpec,
    engines: Sequence[str] = ("naive", "incremental"),
    repeats: int = 3,
    seed: int = 0,
    extra_engines: dict[str, Callable[[], object]] | None = None,
) -> list[dict]:
    """Median wall-clock seconds per engine plus speedups vs the naive one.

    Engines "naive" and "incremental" run the respective curve computation
    on a fixed removal order; extra_engines maps names to zero-argument
    callables (e.g. a trained model's inference) timed the same way.
    """
    order = removal_order(g, scenario, seed if scenario.is_random else None)
    runners: dict[str, Callable[[], object]] = {}
    for name in engines:
        if name == "naive":
            runners[name] = lambda: naive_attack_curve(g, order, spec)
        elif name == "incremental":
            runners[name] = lambda: attack_curve(g, order, spec)
        else:
            raise ParameterError(f"unknown engine {name!r}")
    if extra_engines:
        runners.update(extra_engines)

    rows = []
    for name, fn in runners.items():
        times = []
        for _ in range(max(1, repeats)):
            t0 = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t0)
        rows.append({"engine": name, "seconds": statistics.median(times)})
    baseline = next((r["seconds"] for r in rows if r["engine"] == "naive"), None)
    for r in rows:
        r["speedup_vs_naive"] = (baseline / r["seconds"]) if baseline else None
    return rows
