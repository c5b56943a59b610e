import json
import os
import shutil
import subprocess

import numpy as np
import pytest

from sppcnn import (
    Record,
    RecordFormatError,
    decode_record,
    encode_record,
    load_manifest,
    load_record,
    manifest_records,
    save_record,
)
from sppcnn.records import write_prediction_manifest


def make_record(rng, n=None, steps=None):
    n = n or int(rng.integers(1, 30))
    steps = steps or int(rng.integers(1, 20))
    adj = np.zeros((n, n), dtype=np.uint8)
    iu = np.triu_indices(n, k=1)
    mask = rng.random(len(iu[0])) < 0.3
    adj[iu[0][mask], iu[1][mask]] = 1
    adj |= adj.T
    label = rng.random(steps + 1).astype(np.float32)
    scenario = ("rnf", "hdaa", "ref", "hedaa")[int(rng.integers(4))]
    return Record(n=n, scenario=scenario, adjacency=adj, label=label)


class TestRecordCodec:
    def test_round_trip(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            rec = make_record(rng)
            back = decode_record(encode_record(rec))
            assert back.n == rec.n and back.scenario == rec.scenario
            assert np.array_equal(back.adjacency, rec.adjacency)
            assert np.array_equal(back.label, rec.label)

    def test_header_size_math(self):
        rec = make_record(np.random.default_rng(1), n=3, steps=3)
        assert len(encode_record(rec)) == 15 + 3 + 16

    def test_bad_magic(self):
        data = encode_record(make_record(np.random.default_rng(2)))
        with pytest.raises(RecordFormatError):
            decode_record(b"JUNK" + data[4:])

    def test_truncated(self):
        data = encode_record(make_record(np.random.default_rng(3)))
        with pytest.raises(RecordFormatError):
            decode_record(data[:-1])

    def test_file_io(self, tmp_path):
        rec = make_record(np.random.default_rng(4))
        path = str(tmp_path / "r.rbst")
        save_record(rec, path)
        back = load_record(path)
        assert np.array_equal(back.adjacency, rec.adjacency)


class TestManifest:
    def test_prediction_manifest_schema(self, tmp_path):
        entries = [
            {"id": 0, "file": "records/00000.rbst", "split": "test", "model": "er",
             "avg_k": 4.0, "n": 10, "seed": 5, "path": "/abs/ignored"},
        ]
        path = write_prediction_manifest(str(tmp_path), "rnf", 10, entries)
        doc = load_manifest(path)
        assert doc["scenario"] == "rnf" and doc["steps"] == 10
        assert set(doc["records"][0]) == {"id", "file", "split", "model", "avg_k", "n", "seed"}

    def test_manifest_records_resolves_paths(self, tmp_path):
        entries = [
            {"id": i, "file": f"records/{i:05d}.rbst", "split": s, "model": "er",
             "avg_k": 4.0, "n": 10, "seed": i}
            for i, s in enumerate(("train", "val", "test"))
        ]
        path = write_prediction_manifest(str(tmp_path), "ref", 5, entries)
        test_only = manifest_records(path, split="test")
        assert len(test_only) == 1
        assert test_only[0]["path"] == os.path.join(str(tmp_path), "records", "00002.rbst")
        assert len(manifest_records(path, split=None)) == 3

    def test_missing_key_rejected(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"version": 1, "scenario": "rnf"}))
        with pytest.raises(RecordFormatError):
            load_manifest(str(path))


@pytest.mark.skipif(shutil.which("robustcurve") is None,
                    reason="simulator CLI not installed")
def test_cross_reads_simulator_output(tmp_path):
    # files written by the simulator must decode here and re-encode to the
    # identical bytes
    out = str(tmp_path / "ds")
    subprocess.run(
        ["robustcurve", "dataset", "--models", "er", "--ks", "4", "--count", "10",
         "--n", "20", "--steps", "10", "--scenario", "hedaa", "--seed", "3",
         "--out", out],
        check=True, capture_output=True,
    )
    entries = manifest_records(os.path.join(out, "manifest.json"))
    assert len(entries) == 10
    for entry in entries:
        raw = open(entry["path"], "rb").read()
        rec = decode_record(raw)
        assert rec.n == entry["n"] == 20
        assert rec.scenario == "hedaa"
        assert rec.steps == 10
        assert np.array_equal(rec.adjacency, rec.adjacency.T)
        assert encode_record(rec) == raw
