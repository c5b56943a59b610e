"""Batch prediction: forward pass + clamp to [0, 1], written back out in the
dataset record layout so the simulator's eval command can score the files."""

from __future__ import annotations

import os

import numpy as np
import torch

from .model import CurveNet
from .records import Record, load_record, manifest_records, save_record, write_prediction_manifest


@torch.no_grad()
def predict_vector(model: CurveNet, adjacency: np.ndarray) -> np.ndarray:
    """Clamped label-vector prediction for one adjacency image (any size)."""
    model.eval()
    out = model(torch.from_numpy(np.ascontiguousarray(adjacency)))
    return np.clip(out.numpy(), 0.0, 1.0)


def predict_manifest(
    model: CurveNet,
    manifest_path: str,
    out_dir: str,
    split: str | None = "test",
    log=print,
) -> str:
    """Predict every record of a manifest split; write prediction records and
    a prediction manifest (same schema).  Returns the manifest path."""
    entries = manifest_records(manifest_path, split=split)
    if not entries:
        raise ValueError(f"no records in split {split!r} of {manifest_path}")
    os.makedirs(os.path.join(out_dir, "records"), exist_ok=True)
    scenario = None
    for entry in entries:
        rec = load_record(entry["path"])
        scenario = rec.scenario
        pred = predict_vector(model, rec.adjacency).astype(np.float32)
        out_rec = Record(n=rec.n, scenario=rec.scenario, adjacency=rec.adjacency, label=pred)
        rel = os.path.join("records", f"{entry['id']:05d}.rbst")
        save_record(out_rec, os.path.join(out_dir, rel))
        entry["file"] = rel
    steps = model.config.output_dim - 1
    path = write_prediction_manifest(out_dir, scenario, steps, entries)
    log(f"wrote {len(entries)} prediction records to {out_dir}")
    return path
