"""sppcnn: CNN surrogate for robustness attack-curve prediction.

Reads adjacency-image datasets in the robustness-record format, trains a
convolutional network whose spatial pyramid pooling makes inference
size-independent, and writes clamped label-vector predictions back in the
same record format.
"""

from .model import (
    DESK_GROUPS,
    FULL_GROUPS,
    PYRAMID_LEVELS,
    CurveNet,
    ModelConfig,
    mse_loss,
    spp,
)
from .predict import predict_manifest, predict_vector
from .records import (
    Record,
    RecordFormatError,
    decode_record,
    encode_record,
    load_manifest,
    load_record,
    manifest_records,
    save_record,
)
from .train import TrainConfig, evaluate_loss, load_checkpoint, load_split_tensors, train

__version__ = "0.1.0"

__all__ = [
    "CurveNet",
    "DESK_GROUPS",
    "FULL_GROUPS",
    "ModelConfig",
    "PYRAMID_LEVELS",
    "Record",
    "RecordFormatError",
    "TrainConfig",
    "decode_record",
    "encode_record",
    "evaluate_loss",
    "load_checkpoint",
    "load_manifest",
    "load_record",
    "load_split_tensors",
    "manifest_records",
    "mse_loss",
    "predict_manifest",
    "predict_vector",
    "save_record",
    "spp",
    "train",
]
