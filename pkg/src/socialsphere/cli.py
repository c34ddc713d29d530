"""Command line entry point: ``ssm {ingest,predict,run,tables,curves}``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .experiment import (OUTPUT_ENV, ExperimentConfig, load_config, load_graph, read_curves,
                         read_records, run_grid, write_curves, write_outputs, write_tables)
from .ingest import SamplingConfig, sample_training_graph, write_snap, write_weighted
from .linkpred import Metric, similarity_scores
from .ssm import build_predicted_graph

log = logging.getLogger("socialsphere")


def _csv_list(kind):
    def parse(text: str):
        return [kind(x.strip()) for x in text.split(",") if x.strip()]
    return parse


def _graph_args(p: argparse.ArgumentParser):
    p.add_argument("--input", help="edge list path, or 'synthetic[:seed]'")
    p.add_argument("--format", choices=("snap", "weighted"))
    p.add_argument("--default-weight", type=float,
                   help="weight given to every edge of an unweighted file")
    p.add_argument("--config", help="INI config file; flags override it")


def _grid_args(p: argparse.ArgumentParser):
    p.add_argument("--fractions", type=_csv_list(float), metavar="F[,F..]")
    p.add_argument("--sample-fraction", type=float, help="shorthand for a single fraction")
    p.add_argument("--horizons", type=_csv_list(int), metavar="T[,T..]")
    p.add_argument("--cross-horizons", action="store_true", default=None,
                   help="run every fraction with every horizon")
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--metrics", type=_csv_list(str))
    p.add_argument("--centralities", type=_csv_list(str))
    p.add_argument("--algorithms", type=_csv_list(str))
    p.add_argument("--contagions", type=_csv_list(str))
    p.add_argument("--theta", type=float)
    p.add_argument("--r", type=int, help="contagion horizon (time steps)")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--cap", type=float)
    p.add_argument("--weighted-scores", action="store_true", default=None)
    p.add_argument("--seed", type=int, help="master RNG seed")
    p.add_argument("--workers", type=int)
    p.add_argument("--output", help=f"output directory (else ${OUTPUT_ENV}, config, default)")


def _config(args) -> ExperimentConfig:
    over = {}
    for name in ("input", "format", "default_weight", "fractions", "horizons", "cross_horizons",
                 "k", "trials", "metrics", "centralities", "algorithms", "contagions", "theta",
                 "r", "epsilon", "cap", "weighted_scores", "seed", "workers"):
        if hasattr(args, name):
            over[name] = getattr(args, name)
    if getattr(args, "sample_fraction", None) is not None:
        over["fractions"] = [args.sample_fraction]
    if over.get("fractions") is not None and over.get("horizons") is None:
        # keep the default pairing valid when only fractions are given
        over["horizons"] = [3 if f < 0.8 else 1 for f in over["fractions"]]
    cfg = load_config(args.config, over)
    env = os.environ.get(OUTPUT_ENV)
    if getattr(args, "output", None):
        cfg.output = args.output
    elif env:
        cfg.output = env
    return cfg


def cmd_ingest(args) -> int:
    cfg = _config(args)
    t0 = time.perf_counter()
    g = load_graph(cfg)
    dt = time.perf_counter() - t0
    print(f"nodes\t{g.n}")
    print(f"edges\t{g.num_edges}")
    print(f"self_loops_dropped\t{g.info.get('self_loops', 0)}")
    print(f"duplicates_collapsed\t{g.info.get('duplicates', 0)}")
    print(f"isolated\t{int((g.degrees == 0).sum())}")
    print(f"seconds\t{dt:.3f}")
    if args.sample_fraction is not None:
        rng = np.random.default_rng(cfg.seed)
        g = sample_training_graph(g, SamplingConfig(args.sample_fraction), rng)
        print(f"sampled_edges\t{g.num_edges}")
    if args.write:
        with open(args.write, "w", encoding="utf-8") as fh:
            if cfg.format == "weighted" or args.write_format == "weighted":
                write_weighted(g, fh)
            else:
                write_snap(g, fh)
    return 0


def cmd_predict(args) -> int:
    cfg = _config(args)
    g = load_graph(cfg)
    train = g
    if args.sample_fraction is not None:
        rng = np.random.default_rng(cfg.seed)
        train = sample_training_graph(g, SamplingConfig(args.sample_fraction), rng)
    metric = Metric.parse(args.metric)
    scores = similarity_scores(train, metric, epsilon=cfg.epsilon,
                               weighted=cfg.weighted_scores, cap=cfg.cap)
    pg = build_predicted_graph(train, scores, args.horizon)
    print(f"training_edges\t{train.num_edges}")
    print(f"candidate_pairs\t{len(scores)}")
    print(f"predicted_edges\t{pg.num_predicted}")
    print(f"total_edges\t{pg.graph.num_edges}")
    if args.dump_predicted:
        with open(args.dump_predicted, "w", encoding="utf-8") as fh:
            write_weighted(pg.graph, fh, provenance=pg.predicted)
        print(f"written\t{args.dump_predicted}")
    return 0


def cmd_run(args) -> int:
    cfg = _config(args)
    t0 = time.perf_counter()
    result = run_grid(cfg)
    manifest = write_outputs(result, cfg, cfg.output)
    dt = time.perf_counter() - t0
    print(f"records\t{manifest['records']}")
    print(f"baseline_records\t{manifest['baseline_records']}")
    print(f"failures\t{len(result.failures)}")
    print(f"output\t{cfg.output}")
    print(f"seconds\t{dt:.1f}")
    for f in result.failures[:20]:
        print(f"failed\t{f.fraction:g}\t{f.metric}\t{f.centrality}\t{f.algorithm}\t"
              f"trial {f.trial}\t{f.error}", file=sys.stderr)
    return 0 if not result.failures else 1


def _out_dir(args) -> Path:
    if args.output:
        return Path(args.output)
    env = os.environ.get(OUTPUT_ENV)
    if env:
        return Path(env)
    return Path(load_config(args.config).output)


def cmd_tables(args) -> int:
    out = _out_dir(args)
    for p in write_tables(read_records(out / "results.csv"), out):
        print(p)
    return 0


def cmd_curves(args) -> int:
    out = _out_dir(args)
    records, baselines, observed = read_curves(out / "curves_raw.csv")
    paths = write_curves(records, baselines, observed, out)
    print(f"{len(paths)} curve files under {out / 'curves'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ssm", description=(
        "Predict future influencers from a partially observed network and score "
        "them against the full network."))
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse an edge list and report counts")
    _graph_args(p)
    p.add_argument("--sample-fraction", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--write", metavar="PATH", help="write the (sampled) graph back out")
    p.add_argument("--write-format", choices=("snap", "weighted"), default="snap")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("predict", help="build one predicted graph")
    _graph_args(p)
    p.add_argument("--sample-fraction", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--metric", default=Metric.RA2.value,
                   help="one of: " + ", ".join(m.value for m in Metric))
    p.add_argument("--horizon", type=int, default=1)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--cap", type=float)
    p.add_argument("--weighted-scores", action="store_true", default=None)
    p.add_argument("--dump-predicted", metavar="PATH",
                   help="write 'u v w provenance' lines")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("run", help="run the experiment grid")
    _graph_args(p)
    _grid_args(p)
    p.set_defaults(func=cmd_run)

    for name, fn, what in (("tables", cmd_tables, "results.csv"),
                           ("curves", cmd_curves, "curves_raw.csv")):
        p = sub.add_parser(name, help=f"rebuild {name} from {what}")
        p.add_argument("--output")
        p.add_argument("--config")
        p.set_defaults(func=fn)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"ssm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
