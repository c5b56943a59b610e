"""robustcurve: network connectivity robustness under node/edge removal.

Simulates attack curves for four removal scenarios, assembles labeled
datasets whose records pair an adjacency image with the curve-plus-
robustness label vector, and evaluates predicted label vectors against
fresh simulation.
"""

from .attack import (
    AttackCurve,
    CurveSpec,
    RemovalOrder,
    Scenario,
    attack_curve,
    curve_ensemble,
    naive_attack_curve,
    removal_order,
    resampled_attack_curve,
    write_curve_csv,
)
from .dataset import (
    DatasetConfig,
    DatasetManifest,
    DatasetRecord,
    RecordMeta,
    build_dataset,
    build_record,
    ingest_edge_list,
    load_manifest,
    load_record,
    read_record,
    save_record,
    write_record,
)
from .errors import FormatError, ParameterError
from .evaluate import bench, error_report, export_plot_data, mean_abs_diff, mean_std
from .graph import (
    DsuForest,
    Graph,
    complete_graph,
    edge_degree,
    gen_ba,
    gen_er,
    lcc_size,
    path_graph,
    read_edge_list,
    star_graph,
    write_edge_list,
)
from .metrics import clamp_filter, label_vector, robustness

__version__ = "0.1.0"

__all__ = [
    "AttackCurve",
    "CurveSpec",
    "DatasetConfig",
    "DatasetManifest",
    "DatasetRecord",
    "DsuForest",
    "FormatError",
    "Graph",
    "ParameterError",
    "RecordMeta",
    "RemovalOrder",
    "Scenario",
    "attack_curve",
    "bench",
    "build_dataset",
    "build_record",
    "clamp_filter",
    "complete_graph",
    "curve_ensemble",
    "edge_degree",
    "error_report",
    "export_plot_data",
    "gen_ba",
    "gen_er",
    "ingest_edge_list",
    "label_vector",
    "lcc_size",
    "load_manifest",
    "load_record",
    "mean_abs_diff",
    "mean_std",
    "naive_attack_curve",
    "path_graph",
    "read_edge_list",
    "read_record",
    "removal_order",
    "resampled_attack_curve",
    "robustness",
    "save_record",
    "star_graph",
    "write_curve_csv",
    "write_edge_list",
    "write_record",
]
