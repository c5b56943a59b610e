"""Dataset building, record serialization, and empirical-network ingestion.

Record binary format (version 1, little-endian):

    magic    4 bytes   b"RBST"
    version  u16       1
    n        u32       node count
    steps    u32       curve length (label has steps + 1 entries)
    scenario u8        0=RNF 1=HDAA 2=REF 3=HEDAA
    adj      n rows    row-major bit-packed adjacency; each row padded to a
                       whole byte; bit j of row i = edge(i, j), MSB first
    label    f32 x (steps + 1)

A dataset is a directory of one record file per graph plus manifest.json:
{version, scenario, steps, records: [{id, file, split, model, avg_k, n,
seed}]}.  Dataset bytes are a pure function of the build config: graph i
uses SeedSequence(base_seed + i), child 0 for generation and child 1 for
the removal order.
"""

from __future__ import annotations

import json
import os
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .attack import CurveSpec, Scenario, attack_curve, removal_order
from .errors import FormatError, ParameterError
from .graph import Graph, gen_ba, gen_er, read_edge_list, _round_half_up
from .metrics import label_vector

MAGIC = b"RBST"
VERSION = 1
_HEADER = struct.Struct("<4sHIIB")

MODELS = ("er", "ba")
SPLIT_RATIO = (8, 1, 1)  # train : val : test, by index within each config


@dataclass
class RecordMeta:
    model: str          # "er", "ba", or "empirical"
    avg_k: float
    scenario: str
    seed: int


@dataclass
class DatasetRecord:
    graph_id: int
    n: int
    scenario: Scenario
    adjacency: np.ndarray       # n x n uint8, symmetric, zero diagonal
    label: np.ndarray           # float32, steps + 1
    meta: RecordMeta | None = None

    @property
    def steps(self) -> int:
        return len(self.label) - 1

    def graph(self) -> Graph:
        return Graph.from_adjacency_matrix(self.adjacency)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DatasetRecord):
            return NotImplemented
        return (
            self.n == other.n
            and self.scenario == other.scenario
            and np.array_equal(self.adjacency, other.adjacency)
            and np.array_equal(self.label, other.label)
        )


def write_record(record: DatasetRecord) -> bytes:
    """Serialize a record to the binary layout above."""
    n = record.n
    adj = np.asarray(record.adjacency, dtype=np.uint8)
    if adj.shape != (n, n):
        raise ParameterError(f"adjacency shape {adj.shape} does not match n={n}")
    label = np.asarray(record.label, dtype="<f4")
    header = _HEADER.pack(MAGIC, VERSION, n, record.steps, record.scenario.code)
    packed = np.packbits(adj, axis=1)  # MSB-first, rows padded to whole bytes
    return header + packed.tobytes() + label.tobytes()


def read_record(data: bytes, graph_id: int = -1, meta: RecordMeta | None = None) -> DatasetRecord:
    """Decode the binary layout; graph_id/meta live in the manifest, not here."""
    if len(data) < _HEADER.size:
        raise FormatError("record truncated: header incomplete")
    magic, version, n, steps, code = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported record version {version}")
    row_bytes = (n + 7) // 8
    adj_size = row_bytes * n
    label_size = 4 * (steps + 1)
    expected = _HEADER.size + adj_size + label_size
    if len(data) != expected:
        raise FormatError(f"record size {len(data)} != expected {expected}")
    off = _HEADER.size
    packed = np.frombuffer(data, dtype=np.uint8, count=adj_size, offset=off)
    adj = np.unpackbits(packed.reshape(n, row_bytes), axis=1, count=n)
    label = np.frombuffer(data, dtype="<f4", count=steps + 1, offset=off + adj_size)
    return DatasetRecord(
        graph_id=graph_id,
        n=n,
        scenario=Scenario.from_code(code),
        adjacency=adj.copy(),
        label=label.copy(),
        meta=meta,
    )


def save_record(record: DatasetRecord, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(write_record(record))


def load_record(path: str, graph_id: int = -1, meta: RecordMeta | None = None) -> DatasetRecord:
    with open(path, "rb") as fh:
        return read_record(fh.read(), graph_id=graph_id, meta=meta)


# ---------------------------------------------------------------------------
# Dataset building
# ---------------------------------------------------------------------------

@dataclass
class DatasetConfig:
    models: tuple[str, ...]
    avg_ks: tuple[float, ...]
    per_config_count: int
    n: int
    steps: int
    scenario: Scenario
    base_seed: int

    def __post_init__(self):
        for m in self.models:
            if m not in MODELS:
                raise ParameterError(f"unknown model {m!r}; expected one of {MODELS}")
        ratio_total = sum(SPLIT_RATIO)
        if self.per_config_count <= 0 or self.per_config_count % ratio_total:
            raise ParameterError(
                f"per_config_count must be a positive multiple of {ratio_total}"
            )


@dataclass
class ManifestRecord:
    id: int
    file: str
    split: str
    model: str
    avg_k: float
    n: int
    seed: int


@dataclass
class DatasetManifest:
    version: int
    scenario: Scenario
    steps: int
    records: list[ManifestRecord] = field(default_factory=list)

    def split_ids(self, split: str) -> list[int]:
        return [r.id for r in self.records if r.split == split]

    def to_json(self) -> str:
        doc = {
            "version": self.version,
            "scenario": self.scenario.value,
            "steps": self.steps,
            "records": [asdict(r) for r in self.records],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_manifest(path: str) -> DatasetManifest:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid manifest JSON: {exc}") from None
    try:
        records = [ManifestRecord(**r) for r in doc["records"]]
        return DatasetManifest(
            version=doc["version"],
            scenario=Scenario.parse(doc["scenario"]),
            steps=doc["steps"],
            records=records,
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: bad manifest structure: {exc}") from None


def load_manifest_record(manifest_dir: str, rec: ManifestRecord, scenario: str) -> DatasetRecord:
    meta = RecordMeta(model=rec.model, avg_k=rec.avg_k, scenario=scenario, seed=rec.seed)
    return load_record(os.path.join(manifest_dir, rec.file), graph_id=rec.id, meta=meta)


def _split_for_index(i: int, per_config_count: int) -> str:
    unit = per_config_count // sum(SPLIT_RATIO)
    if i < SPLIT_RATIO[0] * unit:
        return "train"
    if i < (SPLIT_RATIO[0] + SPLIT_RATIO[1]) * unit:
        return "val"
    return "test"


def build_record(
    graph_id: int,
    model: str,
    avg_k: float,
    n: int,
    spec: CurveSpec,
    scenario: Scenario,
    base_seed: int,
) -> DatasetRecord:
    """Generate, simulate, and label one graph; deterministic per graph_id."""
    seed = base_seed + graph_id
    gen_ss, attack_ss = np.random.SeedSequence(seed).spawn(2)
    gen_rng = np.random.default_rng(gen_ss)
    if model == "er":
        g = gen_er(n, avg_k, gen_rng)
    elif model == "ba":
        g = gen_ba(n, _round_half_up(avg_k / 2.0), gen_rng)
    else:
        raise ParameterError(f"unknown model {model!r}")
    order = removal_order(g, scenario, np.random.default_rng(attack_ss))
    label = label_vector(attack_curve(g, order, spec)).astype(np.float32)
    meta = RecordMeta(model=model, avg_k=avg_k, scenario=scenario.value, seed=seed)
    return DatasetRecord(
        graph_id=graph_id,
        n=n,
        scenario=scenario,
        adjacency=g.adjacency_matrix(),
        label=label,
        meta=meta,
    )


def _build_record_job(args) -> tuple[int, bytes]:
    graph_id, model, avg_k, n, steps, scenario_name, base_seed = args
    rec = build_record(
        graph_id, model, avg_k, n, CurveSpec(steps), Scenario.parse(scenario_name), base_seed
    )
    return graph_id, write_record(rec)


def build_dataset(config: DatasetConfig, out_dir: str, threads: int = 1) -> DatasetManifest:
    """Build every (model, avg_k) block of the dataset under out_dir.

    Writes records/<id>.rbst files and manifest.json; splits 8/1/1 by index
    within each (model, avg_k) block.  Output bytes depend only on config.
    """
    records_dir = os.path.join(out_dir, "records")
    os.makedirs(records_dir, exist_ok=True)
    spec = CurveSpec(config.steps)

    jobs = []
    entries = []
    gid = 0
    for model in config.models:
        for avg_k in config.avg_ks:
            for i in range(config.per_config_count):
                rel = os.path.join("records", f"{gid:05d}.rbst")
                entries.append(
                    ManifestRecord(
                        id=gid,
                        file=rel,
                        split=_split_for_index(i, config.per_config_count),
                        model=model,
                        avg_k=avg_k,
                        n=config.n,
                        seed=config.base_seed + gid,
                    )
                )
                jobs.append(
                    (gid, model, avg_k, config.n, config.steps,
                     config.scenario.value, config.base_seed)
                )
                gid += 1

    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = pool.map(_build_record_job, jobs, chunksize=8)
            for rec_id, payload in results:
                with open(os.path.join(out_dir, entries[rec_id].file), "wb") as fh:
                    fh.write(payload)
    else:
        for job in jobs:
            rec_id, payload = _build_record_job(job)
            with open(os.path.join(out_dir, entries[rec_id].file), "wb") as fh:
                fh.write(payload)

    manifest = DatasetManifest(
        version=VERSION, scenario=config.scenario, steps=config.steps, records=entries
    )
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        fh.write(manifest.to_json())
    return manifest


# ---------------------------------------------------------------------------
# Empirical networks
# ---------------------------------------------------------------------------

def ingest_edge_list(path: str, name: str | None = None) -> tuple[Graph, dict]:
    """Read an empirical edge list and report its basic statistics.

    Returns the graph and {name, n, m, k, dropped_self_loops,
    dropped_duplicate_edges} with k = 2M/N rounded to two decimals.
    """
    g, stats = read_edge_list(path)
    report = {
        "name": name or os.path.basename(path),
        "n": stats.n,
        "m": stats.m,
        "k": round(stats.avg_k, 2),
        "dropped_self_loops": stats.dropped_self_loops,
        "dropped_duplicate_edges": stats.dropped_duplicates,
    }
    return g, report
