"""Training loop: shuffled mini-batches, per-epoch train/val loss, best-val
checkpointing.  Training is single-size: every record must share one node
count (prediction handles variable sizes, training does not)."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np
import torch

from .model import CurveNet, ModelConfig, mse_loss
from .records import load_record, manifest_records


@dataclass
class TrainConfig:
    epochs: int = 20
    batch_size: int = 4
    learning_rate: float = 1e-4
    seed: int = 0
    shuffle: bool = True
    loss_normalize: str = "curve"  # "curve": divide by L; "full": by L+1

    def to_dict(self) -> dict:
        return {
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "seed": self.seed,
            "shuffle": self.shuffle,
            "loss_normalize": self.loss_normalize,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TrainConfig":
        return cls(**doc)


def load_split_tensors(manifest_path: str, split: str) -> tuple[torch.Tensor, torch.Tensor]:
    """Stack one split's adjacency images and labels; enforces single-size."""
    entries = manifest_records(manifest_path, split=split)
    if not entries:
        raise ValueError(f"manifest has no {split!r} records")
    images, labels = [], []
    size = None
    for entry in entries:
        rec = load_record(entry["path"])
        if size is None:
            size = rec.n
        elif rec.n != size:
            raise ValueError(
                f"single-size training requires one node count; got {size} and {rec.n}"
            )
        images.append(torch.from_numpy(rec.adjacency))
        labels.append(torch.from_numpy(rec.label))
    return torch.stack(images).unsqueeze(1), torch.stack(labels).float()


def train(
    manifest_path: str,
    model_config: ModelConfig,
    train_config: TrainConfig,
    checkpoint_path: str,
    log=print,
) -> dict:
    """Train on the manifest's train split, validate per epoch, keep the best.

    Returns {"history": [{epoch, train_loss, val_loss}...], "best_epoch": i};
    the checkpoint file holds both configs, the best-validation weights, and
    the loss history.
    """
    torch.manual_seed(train_config.seed)
    train_x, train_y = load_split_tensors(manifest_path, "train")
    val_x, val_y = load_split_tensors(manifest_path, "val")
    if train_y.shape[1] != model_config.output_dim:
        raise ValueError(
            f"labels have dimension {train_y.shape[1]}, model outputs {model_config.output_dim}"
        )

    model = CurveNet(model_config)
    optimizer = torch.optim.Adam(model.parameters(), lr=train_config.learning_rate)
    shuffle_rng = np.random.default_rng(train_config.seed)
    n_train = train_x.shape[0]
    batch = train_config.batch_size

    history = []
    best_val = float("inf")
    best_state = None
    best_epoch = -1
    for epoch in range(train_config.epochs):
        model.train()
        idx = shuffle_rng.permutation(n_train) if train_config.shuffle else np.arange(n_train)
        total = 0.0
        for start in range(0, n_train, batch):
            sel = torch.from_numpy(idx[start:start + batch].copy())
            optimizer.zero_grad()
            pred = model(train_x[sel])
            loss = mse_loss(pred, train_y[sel], normalize=train_config.loss_normalize)
            loss.backward()
            optimizer.step()
            total += loss.item() * len(sel)
        train_loss = total / n_train
        val_loss = evaluate_loss(model, val_x, val_y, batch, train_config.loss_normalize)
        history.append({"epoch": epoch, "train_loss": train_loss, "val_loss": val_loss})
        log(f"epoch {epoch:3d}  train {train_loss:.6f}  val {val_loss:.6f}")
        if val_loss < best_val:
            best_val = val_loss
            best_epoch = epoch
            best_state = {k: v.detach().clone() for k, v in model.state_dict().items()}

    torch.save(
        {
            "model_config": model_config.to_dict(),
            "train_config": train_config.to_dict(),
            "state_dict": best_state,
            "history": history,
            "best_epoch": best_epoch,
        },
        checkpoint_path,
    )
    loss_csv = os.path.splitext(checkpoint_path)[0] + "_loss.csv"
    with open(loss_csv, "w", encoding="utf-8") as fh:
        fh.write("epoch,train_loss,val_loss\n")
        for row in history:
            fh.write(f"{row['epoch']},{row['train_loss']:.9g},{row['val_loss']:.9g}\n")
    return {"history": history, "best_epoch": best_epoch}


@torch.no_grad()
def evaluate_loss(model, x, y, batch_size: int, normalize: str = "curve") -> float:
    model.eval()
    total = 0.0
    for start in range(0, x.shape[0], batch_size):
        pred = model(x[start:start + batch_size])
        total += mse_loss(pred, y[start:start + batch_size], normalize=normalize).item() * (
            min(start + batch_size, x.shape[0]) - start
        )
    return total / x.shape[0]


def load_checkpoint(path: str) -> tuple[CurveNet, dict]:
    """Rebuild the model from a checkpoint; returns (model, checkpoint dict)."""
    try:
        doc = torch.load(path, map_location="cpu", weights_only=False)
        model = CurveNet(ModelConfig.from_dict(doc["model_config"]))
        model.load_state_dict(doc["state_dict"])
    except (KeyError, RuntimeError, json.JSONDecodeError) as exc:
        raise ValueError(f"{path}: not a usable checkpoint: {exc}") from None
    model.eval()
    return model, doc
