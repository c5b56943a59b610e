"""Robustness scalars, label vectors, and the prediction clamp filter."""

from __future__ import annotations

import numpy as np

from .errors import ParameterError


def robustness(curve) -> float:
    """Mean of the attack-curve values (node and edge grids alike)."""
    curve = np.asarray(curve, dtype=float)
    if curve.size == 0:
        raise ParameterError("empty curve")
    return float(curve.mean())


def label_vector(curve) -> np.ndarray:
    """Curve with its robustness appended: dimension steps + 1."""
    curve = np.asarray(curve, dtype=float)
    return np.append(curve, robustness(curve))


def clamp_filter(values) -> np.ndarray:
    """Elementwise clamp to [0, 1].

    No monotonicity is enforced; out-of-range predictions are simply cut
    at the feasible box.  Idempotent.
    """
    return np.clip(np.asarray(values, dtype=float), 0.0, 1.0)
