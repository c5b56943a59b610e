"""Dataset record and manifest I/O.

Implements the robustness-dataset wire format so this package stays
decoupled from the simulator: records and manifests are exchanged as
files only.

Record layout (version 1, little-endian): magic "RBST", u16 version,
u32 node count, u32 steps, u8 scenario code (0=rnf 1=hdaa 2=ref 3=hedaa),
bit-packed row-major adjacency (each row padded to whole bytes, MSB
first), then steps + 1 float32 label values.

Manifest: JSON {version, scenario, steps, records: [{id, file, split,
model, avg_k, n, seed}]}, with file paths relative to the manifest.
"""

from __future__ import annotations

import json
import os
import struct
from dataclasses import dataclass

import numpy as np

MAGIC = b"RBST"
VERSION = 1
_HEADER = struct.Struct("<4sHIIB")

SCENARIOS = ("rnf", "hdaa", "ref", "hedaa")


class RecordFormatError(ValueError):
    pass


@dataclass
class Record:
    n: int
    scenario: str
    adjacency: np.ndarray  # n x n uint8
    label: np.ndarray      # float32, steps + 1

    @property
    def steps(self) -> int:
        return len(self.label) - 1


def encode_record(rec: Record) -> bytes:
    adj = np.asarray(rec.adjacency, dtype=np.uint8)
    label = np.asarray(rec.label, dtype="<f4")
    header = _HEADER.pack(MAGIC, VERSION, rec.n, len(label) - 1,
                          SCENARIOS.index(rec.scenario))
    return header + np.packbits(adj, axis=1).tobytes() + label.tobytes()


def decode_record(data: bytes) -> Record:
    if len(data) < _HEADER.size:
        raise RecordFormatError("record truncated")
    magic, version, n, steps, code = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise RecordFormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise RecordFormatError(f"unsupported version {version}")
    if code >= len(SCENARIOS):
        raise RecordFormatError(f"unknown scenario code {code}")
    row_bytes = (n + 7) // 8
    adj_size = row_bytes * n
    expected = _HEADER.size + adj_size + 4 * (steps + 1)
    if len(data) != expected:
        raise RecordFormatError(f"record size {len(data)} != expected {expected}")
    packed = np.frombuffer(data, np.uint8, count=adj_size, offset=_HEADER.size)
    adj = np.unpackbits(packed.reshape(n, row_bytes), axis=1, count=n)
    label = np.frombuffer(data, "<f4", count=steps + 1, offset=_HEADER.size + adj_size)
    return Record(n=n, scenario=SCENARIOS[code], adjacency=adj.copy(), label=label.copy())


def load_record(path: str) -> Record:
    with open(path, "rb") as fh:
        return decode_record(fh.read())


def save_record(rec: Record, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_record(rec))


def load_manifest(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    for key in ("version", "scenario", "steps", "records"):
        if key not in doc:
            raise RecordFormatError(f"{path}: manifest missing {key!r}")
    return doc


def manifest_records(manifest_path: str, split: str | None = None) -> list[dict]:
    """Manifest entries (optionally one split), each with an absolute 'path'."""
    doc = load_manifest(manifest_path)
    base = os.path.dirname(os.path.abspath(manifest_path))
    entries = []
    for entry in doc["records"]:
        if split is not None and entry["split"] != split:
            continue
        entry = dict(entry)
        entry["path"] = os.path.join(base, entry["file"])
        entries.append(entry)
    return entries


def write_prediction_manifest(
    out_dir: str, scenario: str, steps: int, entries: list[dict]
) -> str:
    """Manifest for prediction records, same schema as dataset manifests."""
    doc = {
        "version": VERSION,
        "scenario": scenario,
        "steps": steps,
        "records": [
            {k: entry[k] for k in ("id", "file", "split", "model", "avg_k", "n", "seed")}
            for entry in entries
        ],
    }
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path
