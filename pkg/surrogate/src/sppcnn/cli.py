"""CLI: `sppcnn train` fits a model on a dataset manifest, `sppcnn predict`
writes a prediction manifest for a split."""

from __future__ import annotations

import argparse
import sys

from .model import DESK_GROUPS, FULL_GROUPS, ModelConfig
from .records import load_manifest
from .train import TrainConfig, load_checkpoint, train

PRESETS = {"full": FULL_GROUPS, "desk": DESK_GROUPS}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sppcnn")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train on a dataset manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True, help="checkpoint output path (.pt)")
    p.add_argument("--preset", choices=sorted(PRESETS), default="full",
                   help="conv stack: 8 groups (full) or 4 groups for small inputs (desk)")
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--batch", type=int, default=4)
    p.add_argument("--lr", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fc-hidden", type=int, default=1024)

    p = sub.add_parser("predict", help="predict a manifest split")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--split", default="test",
                   help="dataset split to predict, or 'all'")
    p.add_argument("--out-dir", required=True)
    return parser


def _cmd_train(args) -> int:
    manifest = load_manifest(args.manifest)
    model_config = ModelConfig(
        output_dim=manifest["steps"] + 1,
        groups=PRESETS[args.preset],
        fc_hidden=args.fc_hidden,
    )
    train_config = TrainConfig(
        epochs=args.epochs, batch_size=args.batch,
        learning_rate=args.lr, seed=args.seed,
    )
    result = train(args.manifest, model_config, train_config, args.out)
    best = result["history"][result["best_epoch"]]
    print(f"best epoch {best['epoch']}: val {best['val_loss']:.6f} -> {args.out}")
    return 0


def _cmd_predict(args) -> int:
    from .predict import predict_manifest

    model, _ = load_checkpoint(args.checkpoint)
    split = None if args.split == "all" else args.split
    predict_manifest(model, args.manifest, args.out_dir, split=split)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return {"train": _cmd_train, "predict": _cmd_predict}[args.command](args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
