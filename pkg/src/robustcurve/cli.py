"""Command-line entry point.

Subcommands: generate, curve, dataset, eval, stats, bench.  Exit codes:
0 success, 1 usage error, 2 data/format error.  ROBUSTCURVE_THREADS is the
fallback for --threads.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import dataset as ds
from .attack import CurveSpec, Scenario, attack_curve, removal_order, write_curve_csv
from .errors import FormatError, ParameterError
from .evaluate import bench, curve_set_summary, error_report, export_plot_data
from .graph import gen_ba, gen_er, read_edge_list, write_edge_list, _round_half_up


class _Parser(argparse.ArgumentParser):
    # usage problems (unknown flag, missing arg, bad value) exit 1, not argparse's 2
    def error(self, message):
        self.print_help(sys.stderr)
        sys.stderr.write(f"\nerror: {message}\n")
        raise SystemExit(1)


def _default_threads() -> int:
    env = os.environ.get("ROBUSTCURVE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _make_graph(args):
    if getattr(args, "input", None):
        g, _ = read_edge_list(args.input)
        return g
    if args.model == "er":
        return gen_er(args.n, args.k, args.seed)
    return gen_ba(args.n, args.m if args.m else _round_half_up(args.k / 2.0), args.seed)


def _add_graph_source(p, require=True):
    p.add_argument("--input", help="edge-list file to load instead of generating")
    p.add_argument("--model", choices=("er", "ba"), default="er")
    p.add_argument("--n", type=int, default=1000, help="node count (generated graphs)")
    p.add_argument("--k", type=float, default=4.0, help="target average degree")
    p.add_argument("--m", type=int, default=0, help="BA attachments per node (overrides --k/2)")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="robustcurve",
                     description="Simulate network robustness under node/edge removal, "
                                 "build datasets, and evaluate predictions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="generate a synthetic graph as an edge list")
    _add_graph_source(p)
    p.add_argument("--output", help="output file (default: stdout)")

    p = sub.add_parser("curve", help="simulate one attack curve, export CSV")
    _add_graph_source(p)
    p.add_argument("--scenario", required=True,
                   choices=[s.value for s in Scenario])
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--adaptive", action="store_true",
                   help="re-rank HDAA/HEDAA after each removal (slow)")
    p.add_argument("--output", help="output CSV (default: stdout)")
    p.add_argument("--plot", help="also render the curve to this PNG file")

    p = sub.add_parser("dataset", help="build a training/evaluation dataset")
    p.add_argument("--models", default="er,ba", help="comma list from {er,ba}")
    p.add_argument("--ks", default="4,6,8", help="comma list of average degrees")
    p.add_argument("--count", type=int, required=True,
                   help="graphs per (model, k) pair; multiple of 10")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--scenario", required=True, choices=[s.value for s in Scenario])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output dataset directory")
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("eval", help="compare a prediction manifest against fresh simulation")
    p.add_argument("--pred", required=True, help="prediction manifest (dataset layout)")
    p.add_argument("--seed", type=int, default=0,
                   help="base seed for fresh RNF/REF simulation orders")
    p.add_argument("--realizations", type=int, default=1,
                   help="RNF/REF realizations averaged into each record's "
                        "simulated reference (1 = single draw)")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--no-plot", action="store_true", help="skip figure rendering")

    p = sub.add_parser("stats", help="ingest an edge list and print its statistics")
    p.add_argument("--input", required=True)
    p.add_argument("--name", default=None)
    p.add_argument("--output", help="output JSON file (default: stdout)")

    p = sub.add_parser("bench", help="time the curve engines on one graph")
    _add_graph_source(p)
    p.add_argument("--scenario", required=True, choices=[s.value for s in Scenario])
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--engines", default="naive,incremental")
    p.add_argument("--output", help="also write the table as CSV")

    return parser


def _cmd_generate(args) -> int:
    g = _make_graph(args)
    if args.output:
        desc = (f"model={args.model} n={args.n} k={args.k} seed={args.seed}"
                if not args.input else f"copy of {args.input}")
        write_edge_list(g, args.output, header=desc)
    else:
        for u, v in g.edges:
            print(u, v)
    return 0


def _cmd_curve(args) -> int:
    g = _make_graph(args)
    scenario = Scenario.parse(args.scenario)
    # one seed drives generation and the removal order via split child streams,
    # matching the dataset builder
    _, attack_ss = np.random.SeedSequence(args.seed).spawn(2)
    order = removal_order(
        g, scenario,
        np.random.default_rng(attack_ss) if scenario.is_random else None,
        adaptive=args.adaptive,
    )
    curve = attack_curve(g, order, CurveSpec(args.steps))
    if args.output:
        write_curve_csv(curve, args.output)
    else:
        write_curve_csv(curve, sys.stdout)
    if args.plot:
        from .report import plot_curve

        plot_curve(curve, args.plot, title=f"{scenario.value} n={g.n}")
    return 0


def _cmd_dataset(args) -> int:
    threads = args.threads if args.threads else _default_threads()
    config = ds.DatasetConfig(
        models=tuple(m.strip() for m in args.models.split(",") if m.strip()),
        avg_ks=tuple(float(k) for k in args.ks.split(",") if k.strip()),
        per_config_count=args.count,
        n=args.n,
        steps=args.steps,
        scenario=Scenario.parse(args.scenario),
        base_seed=args.seed,
    )
    manifest = ds.build_dataset(config, args.out, threads=threads)
    counts = {s: len(manifest.split_ids(s)) for s in ("train", "val", "test")}
    print(f"wrote {len(manifest.records)} records to {args.out} "
          f"(train={counts['train']} val={counts['val']} test={counts['test']})")
    return 0


def _cmd_eval(args) -> int:
    manifest = ds.load_manifest(args.pred)
    if not manifest.records:
        raise FormatError(f"{args.pred}: empty prediction manifest")
    base = os.path.dirname(os.path.abspath(args.pred))
    spec = CurveSpec(manifest.steps)
    scenario = manifest.scenario

    if args.realizations < 1:
        raise ParameterError("--realizations must be >= 1")
    from .attack import curve_ensemble
    from .metrics import label_vector

    preds, sims = [], []
    for rec_entry in manifest.records:
        rec = ds.load_manifest_record(base, rec_entry, scenario.value)
        if rec.steps != manifest.steps:
            raise FormatError(f"record {rec_entry.id}: steps mismatch with manifest")
        g = rec.graph()
        # per-record seed block: realization i of record id uses
        # seed + id*realizations + i (reduces to seed + id when realizations=1)
        curves = curve_ensemble(
            g, scenario, spec, args.realizations,
            seed=args.seed + rec_entry.id * args.realizations,
        )
        sim_curve = np.mean(curves, axis=0)
        sims.append(label_vector(sim_curve))
        preds.append(np.asarray(rec.label, dtype=float))

    models = {r.model for r in manifest.records}
    ks = {r.avg_k for r in manifest.records}
    report = error_report(
        preds, sims, manifest.steps, scenario.value,
        model=models.pop() if len(models) == 1 else "mixed",
        avg_k=ks.pop() if len(ks) == 1 else None,
    )
    report["n_realizations"] = args.realizations

    os.makedirs(args.out_dir, exist_ok=True)
    pred_mean, pred_std = curve_set_summary([p[:-1] for p in preds])
    sim_mean, sim_std = curve_set_summary([s[:-1] for s in sims])
    export_plot_data(pred_mean, pred_std, os.path.join(args.out_dir, "pred_curve.csv"))
    export_plot_data(sim_mean, sim_std, os.path.join(args.out_dir, "sim_curve.csv"))
    with open(os.path.join(args.out_dir, "report.json"), "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if not args.no_plot:
        from .report import plot_comparison, plot_robustness_scatter

        plot_comparison(
            pred_mean, pred_std, sim_mean, sim_std,
            os.path.join(args.out_dir, "curves.png"),
            title=f"{scenario.value}: prediction vs simulation",
        )
        plot_robustness_scatter(
            [s[-1] for s in sims], [p[-1] for p in preds],
            os.path.join(args.out_dir, "robustness.png"),
            title=f"{scenario.value}: robustness",
        )
    print(f"e_pair={report['e_pair']:.6f} e_sim={report['e_sim']:.6f} "
          f"e_pred={report['e_pred']:.6f} over {report['n_networks']} networks")
    return 0


def _cmd_stats(args) -> int:
    _, report = ds.ingest_edge_list(args.input, name=args.name)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_bench(args) -> int:
    g = _make_graph(args)
    scenario = Scenario.parse(args.scenario)
    engines = tuple(e.strip() for e in args.engines.split(",") if e.strip())
    rows = bench(g, scenario, CurveSpec(args.steps), engines=engines,
                 repeats=args.repeats, seed=args.seed)
    print(f"{'engine':<14}{'seconds':>12}{'speedup':>10}")
    for r in rows:
        sp = f"{r['speedup_vs_naive']:.1f}x" if r["speedup_vs_naive"] else "-"
        print(f"{r['engine']:<14}{r['seconds']:>12.6f}{sp:>10}")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write("engine,seconds,speedup_vs_naive\n")
            for r in rows:
                sp = f"{r['speedup_vs_naive']:.9g}" if r["speedup_vs_naive"] else ""
                fh.write(f"{r['engine']},{r['seconds']:.9g},{sp}\n")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "curve": _cmd_curve,
    "dataset": _cmd_dataset,
    "eval": _cmd_eval,
    "stats": _cmd_stats,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse -h exits 0; our error() raises 1
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ParameterError, FormatError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
