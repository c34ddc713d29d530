"""Experiment grid: sampling x horizon x metric x centrality x algorithm x
contagion x trial.

For each trial and observation scenario a training graph is sampled from
the full graph, a predicted graph is built per similarity metric, seeds
are chosen on it for each (centrality, algorithm) pair, and both the
predicted seeds and the ground-truth seeds (same pair, full graph) are
spread on the full graph.  Seeds chosen on the raw training graph are
recorded as a baseline.

Everything written to disk is derived from the CSV record files, so
``tables`` and ``curves`` can be regenerated from them exactly.
"""
from __future__ import annotations

import configparser
import csv
import dataclasses
import io
import json
import logging
import os
import platform
import sys
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .centrality import Centrality, CentralityParams, centrality, rank_nodes
from .contagion import ComplexParams, SpreadCurve, simulate_complex, simulate_simple
from .evaluation import curve_verdict, mse, overlap
from .graph import Graph
from .ingest import SamplingConfig, collaboration_graph, read_graph, sample_training_graph
from .linkpred import Metric, similarity_scores
from .selection import Algorithm, select_seeds
from .ssm import build_predicted_graph

__all__ = ["ExperimentConfig", "Record", "Failure", "GridResult", "run_grid",
           "aggregate_tables", "mean_curves", "write_outputs", "load_config",
           "read_records", "read_curves", "write_tables", "write_curves", "trial_seed"]

log = logging.getLogger(__name__)

CONTAGIONS = ("complex", "simple")
DEFAULT_ALGORITHMS = ("KHighest", "VoteRank", "CentralityVoteRank", "LIR", "LIR2",
                      "GraphColoring", "JointNomination")
BASELINE = "None"
FLOAT = "{:.6f}"
OUTPUT_ENV = "SSM_OUTPUT_DIR"


@dataclass
class ExperimentConfig:
    input: str | None = None
    format: str = "snap"
    default_weight: float = 1.0
    fractions: list[float] = field(default_factory=lambda: [0.7, 0.9])
    # paired with ``fractions`` unless ``cross_horizons`` is set
    horizons: list[int] = field(default_factory=lambda: [3, 1])
    cross_horizons: bool = False
    k: int = 25
    trials: int = 10
    metrics: list[str] = field(default_factory=lambda: [m.value for m in Metric])
    centralities: list[str] = field(default_factory=lambda: [c.value for c in Centrality])
    algorithms: list[str] = field(default_factory=lambda: list(DEFAULT_ALGORITHMS))
    contagions: list[str] = field(default_factory=lambda: list(CONTAGIONS))
    theta: float = 0.5
    r: int = 15
    epsilon: float = 0.01
    cap: float = 1.0
    weighted_scores: bool = False
    seed: int = 0
    output: str = "ssm-output"
    workers: int = 1
    centrality_params: CentralityParams = field(default_factory=CentralityParams)

    def __post_init__(self):
        self.fractions = [float(f) for f in self.fractions]
        self.horizons = [int(t) for t in self.horizons]
        for f in self.fractions:
            if not 0.0 < f <= 1.0:
                raise ValueError(f"sampling fraction {f!r} outside (0, 1]")
        if any(t < 0 for t in self.horizons):
            raise ValueError("horizons must be non-negative")
        if not self.cross_horizons and len(self.horizons) != len(self.fractions):
            raise ValueError("horizons must pair one-to-one with fractions "
                             "(or set cross_horizons)")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        for c in self.contagions:
            if c not in CONTAGIONS:
                raise ValueError(f"unknown contagion {c!r}")
        self.metrics = [Metric.parse(m).value for m in self.metrics]
        self.centralities = [Centrality.parse(c).value for c in self.centralities]
        self.algorithms = [Algorithm.parse(a).name for a in self.algorithms]
        ComplexParams(self.theta, self.r)

    def scenarios(self) -> list[tuple[float, int]]:
        if self.cross_horizons:
            return [(f, t) for f in self.fractions for t in self.horizons]
        return list(zip(self.fractions, self.horizons))

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["centrality_params"] = dataclasses.asdict(self.centrality_params)
        return d


@dataclass(frozen=True)
class Record:
    fraction: float
    horizon: int
    metric: str
    centrality: str
    algorithm: str
    contagion: str
    trial: int
    mse: float
    overlap: float
    curve: tuple[float, ...]      # predicted-seed curve on the full graph
    latent: int = 0               # seeds outside the training-graph top-k
    verdict: str = ""             # predicted curve vs ground-truth curve

    def key(self):
        return (self.fraction, self.horizon, self.metric, self.centrality,
                self.algorithm, self.contagion, self.trial)


@dataclass(frozen=True)
class Failure:
    fraction: float
    horizon: int
    metric: str
    centrality: str
    algorithm: str
    trial: int
    error: str


@dataclass
class GridResult:
    records: list[Record]
    baselines: list[Record]
    observed: dict            # (centrality, algorithm, contagion) -> curve tuple
    failures: list[Failure]
    graph_info: dict = field(default_factory=dict)


def trial_seed(master: int, trial: int, fraction: float) -> np.random.SeedSequence:
    """RNG stream for one trial; independent of the metric/centrality lists."""
    return np.random.SeedSequence([int(master), int(trial), int(round(fraction * 1_000_000))])


def load_graph(cfg: ExperimentConfig) -> Graph:
    src = cfg.input
    if src is None:
        raise ValueError("no input graph given")
    if src.startswith("synthetic"):
        _, _, s = src.partition(":")
        return collaboration_graph(seed=int(s or 0), weight=cfg.default_weight)
    return read_graph(src, cfg.format, cfg.default_weight)


# -- the grid -------------------------------------------------------------------

class _Spreader:
    def __init__(self, full: Graph, cfg: ExperimentConfig):
        self.full = full
        self.cfg = cfg

    def __call__(self, seeds, model: str) -> tuple[float, ...]:
        if model == "simple":
            c = simulate_simple(self.full, seeds, self.cfg.r)
        else:
            c = simulate_complex(self.full, seeds, ComplexParams(self.cfg.theta, self.cfg.r))
        return tuple(c.fractions.tolist())


def _centralities(g: Graph, names: Iterable[str], params: CentralityParams):
    """Centrality vectors by name; failures are returned as exceptions."""
    out = {}
    for name in names:
        try:
            out[name] = centrality(g, name, params)
        except Exception as exc:          # noqa: BLE001 - recorded per cell
            log.warning("centrality %s failed: %s", name, exc)
            out[name] = exc
    return out


def _needed_centralities(cfg: ExperimentConfig) -> list[str]:
    names = list(cfg.centralities)
    for a in cfg.algorithms:
        alg = Algorithm.parse(a)
        if alg.centrality is not None and alg.centrality.value not in names:
            names.append(alg.centrality.value)
    return names


def _base_for(alg: Algorithm, cell: str, bases: dict):
    name = alg.centrality.value if alg.centrality is not None else cell
    b = bases[name]
    if isinstance(b, Exception):
        raise b
    return b


def _ground_truth(full: Graph, cfg: ExperimentConfig):
    spread = _Spreader(full, cfg)
    bases = _centralities(full, _needed_centralities(cfg), cfg.centrality_params)
    seeds, curves, errors = {}, {}, {}
    for c in cfg.centralities:
        for a in cfg.algorithms:
            alg = Algorithm.parse(a)
            try:
                s = select_seeds(full, alg, cfg.k, _base_for(alg, c, bases))
            except Exception as exc:      # noqa: BLE001
                errors[(c, a)] = f"ground truth: {exc}"
                continue
            seeds[(c, a)] = s
            for model in cfg.contagions:
                curves[(c, a, model)] = spread(s.nodes, model)
    return seeds, curves, errors


def _run_job(cfg: ExperimentConfig, full: Graph, truth, trial: int, fraction: float,
             horizon: int):
    seeds_true, curves_true, truth_errors = truth
    spread = _Spreader(full, cfg)
    records, baselines, failures = [], [], []
    rng = np.random.default_rng(trial_seed(cfg.seed, trial, fraction))
    train = sample_training_graph(full, SamplingConfig(fraction), rng)
    train_bases = _centralities(train, _needed_centralities(cfg), cfg.centrality_params)

    def cells(graph, bases, metric, hz, sink, with_latent):
        for c in cfg.centralities:
            for a in cfg.algorithms:
                alg = Algorithm.parse(a)
                if (c, a) in truth_errors:
                    failures.append(Failure(fraction, hz, metric, c, a, trial, truth_errors[(c, a)]))
                    continue
                try:
                    s = select_seeds(graph, alg, cfg.k, _base_for(alg, c, bases))
                except Exception as exc:  # noqa: BLE001
                    failures.append(Failure(fraction, hz, metric, c, a, trial, str(exc)))
                    continue
                truth_s = seeds_true[(c, a)]
                acc = overlap(s, truth_s)
                latent = 0
                if with_latent:
                    tb = train_bases.get(c)
                    if not isinstance(tb, Exception):
                        top = set(rank_nodes(tb)[:cfg.k])
                        latent = sum(1 for v in s.nodes if v not in top)
                for model in cfg.contagions:
                    pc = spread(s.nodes, model)
                    oc = curves_true[(c, a, model)]
                    sink.append(Record(fraction, hz, metric, c, a, model, trial,
                                       mse(pc, oc), acc, pc, latent, curve_verdict(pc, oc)))

    cells(train, train_bases, BASELINE, 0, baselines, False)
    for metric in cfg.metrics:
        try:
            if horizon == 0:
                pg = build_predicted_graph(train, {}, 0)
            else:
                scores = similarity_scores(train, metric, epsilon=cfg.epsilon,
                                           weighted=cfg.weighted_scores, cap=cfg.cap)
                pg = build_predicted_graph(train, scores, horizon)
        except Exception as exc:          # noqa: BLE001
            for c in cfg.centralities:
                for a in cfg.algorithms:
                    failures.append(Failure(fraction, horizon, metric, c, a, trial, str(exc)))
            continue
        log.info("trial %d fraction %g metric %s: %d predicted edges",
                 trial, fraction, metric, pg.num_predicted)
        bases = _centralities(pg.graph, _needed_centralities(cfg), cfg.centrality_params)
        cells(pg.graph, bases, metric, horizon, records, True)
    return records, baselines, failures


def run_grid(cfg: ExperimentConfig, full: Graph | None = None) -> GridResult:
    """Run every cell of the grid.  Failed cells are reported, not raised."""
    if full is None:
        full = load_graph(cfg)
    truth = _ground_truth(full, cfg)
    jobs = [(trial, f, t) for trial in range(cfg.trials) for f, t in cfg.scenarios()]
    records, baselines, failures = [], [], []
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            futures = [pool.submit(_run_job, cfg, full, truth, *job) for job in jobs]
            outs = [f.result() for f in futures]
    else:
        outs = [_run_job(cfg, full, truth, *job) for job in jobs]
    for r, b, f in outs:
        records.extend(r)
        baselines.extend(b)
        failures.extend(f)
    records.sort(key=Record.key)
    baselines.sort(key=Record.key)
    failures.sort(key=lambda x: (x.fraction, x.horizon, x.metric, x.centrality,
                                 x.algorithm, x.trial))
    info = {"nodes": full.n, "edges": full.num_edges}
    info.update({k: v for k, v in full.info.items() if isinstance(v, (int, float, str))})
    return GridResult(records, baselines, truth[1], failures, info)


# -- aggregation ------------------------------------------------------------------

@dataclass
class Table:
    name: str
    corner: str
    rows: list[str]
    cols: list[str]
    values: list[list[float]]        # includes the Overall row and column


def _table(name, corner, records, row_of, col_of, value_of, rows=None, cols=None) -> Table:
    cells = defaultdict(list)
    by_row, by_col, everything = defaultdict(list), defaultdict(list), []
    for r in records:
        i, j, x = row_of(r), col_of(r), value_of(r)
        cells[(i, j)].append(x)
        by_row[i].append(x)
        by_col[j].append(x)
        everything.append(x)
    rows = rows or sorted(by_row)
    cols = cols or sorted(by_col)
    rows = [x for x in rows if x in by_row]
    cols = [x for x in cols if x in by_col]
    mean = lambda xs: float(np.mean(xs)) if xs else float("nan")
    values = [[mean(cells[(i, j)]) for j in cols] + [mean(by_row[i])] for i in rows]
    values.append([mean(by_col[j]) for j in cols] + [mean(everything)])
    return Table(name, corner, rows + ["Overall"], cols + ["Overall"], values)


def aggregate_tables(records: Sequence[Record]) -> list[Table]:
    """Per-fraction tables: MSE and accuracy by centrality x metric, and MSE
    by metric x contagion.  ``Overall`` entries are means of all records in
    that row, column, or table."""
    tables = []
    metric_order = [m.value for m in Metric]
    cent_order = [c.value for c in Centrality]
    for f in sorted({r.fraction for r in records}):
        sub = [r for r in records if r.fraction == f]
        tag = f"{f:g}"
        cents = [c for c in cent_order] + sorted({r.centrality for r in sub} - set(cent_order))
        mets = metric_order + sorted({r.metric for r in sub} - set(metric_order))
        tables.append(_table(f"mse_centrality_metric_{tag}", "centrality", sub,
                             lambda r: r.centrality, lambda r: r.metric, lambda r: r.mse,
                             cents, mets))
        # overlap does not depend on the contagion model; count each selection once
        first = min(r.contagion for r in sub)
        sel = [r for r in sub if r.contagion == first]
        tables.append(_table(f"accuracy_centrality_metric_{tag}", "centrality", sel,
                             lambda r: r.centrality, lambda r: r.metric, lambda r: r.overlap,
                             cents, mets))
        tables.append(_table(f"mse_metric_contagion_{tag}", "metric", sub,
                             lambda r: r.metric, lambda r: r.contagion, lambda r: r.mse,
                             mets, list(CONTAGIONS)))
    return tables


def mean_curves(records: Sequence[Record], key) -> dict:
    """Mean curve per ``key(record)``."""
    acc = defaultdict(list)
    for r in records:
        acc[key(r)].append(r.curve)
    return {k: np.mean(np.asarray(v), axis=0) for k, v in acc.items()}


# -- files --------------------------------------------------------------------------

RESULT_FIELDS = ["fraction", "horizon", "metric", "centrality", "algorithm", "contagion",
                 "trial", "mse", "overlap"]


def _fmt(x: float) -> str:
    return FLOAT.format(x)


def _write_csv(path: Path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _record_row(r: Record):
    return [f"{r.fraction:g}", r.horizon, r.metric, r.centrality, r.algorithm, r.contagion,
            r.trial, _fmt(r.mse), _fmt(r.overlap)]


def _curve_rows(kind, recs):
    for r in recs:
        yield [kind] + _record_row(r) + [r.latent, r.verdict] + [_fmt(x) for x in r.curve]


def write_tables(records: Sequence[Record], out: Path) -> list[Path]:
    paths = []
    for t in aggregate_tables(records):
        p = out / "tables" / f"{t.name}.csv"
        rows = [[label] + [_fmt(x) for x in vals] for label, vals in zip(t.rows, t.values)]
        _write_csv(p, [t.corner] + t.cols, rows)
        paths.append(p)
    return paths


def _curve_file(path: Path, curve):
    _write_csv(path, ["time", "mean_fraction"],
               [[t, _fmt(x)] for t, x in enumerate(curve)])


def write_curves(records, baselines, observed, out: Path) -> list[Path]:
    """Mean spread curves for plotting.

    ``curves/<f>_<contagion>_<alg>.csv``           predicted seeds, all metrics
    ``curves/<f>_<contagion>_<alg>_<metric>.csv``  one metric
    ``..._Original.csv``   ground-truth seeds on the full graph
    ``..._Training.csv``   seeds chosen on the unpredicted training graph
    ``curves/centrality/<f>_<contagion>_<alg>_<metric>.csv`` one column per centrality
    """
    d = out / "curves"
    paths = []
    fractions = sorted({r.fraction for r in records} | {r.fraction for r in baselines})
    for key, c in sorted(mean_curves(records, lambda r: (r.fraction, r.contagion, r.algorithm)).items()):
        paths.append(d / f"{key[0]:g}_{key[1]}_{key[2]}.csv")
        _curve_file(paths[-1], c)
    for key, c in sorted(mean_curves(
            records, lambda r: (r.fraction, r.contagion, r.algorithm, r.metric)).items()):
        paths.append(d / f"{key[0]:g}_{key[1]}_{key[2]}_{key[3]}.csv")
        _curve_file(paths[-1], c)
    for key, c in sorted(mean_curves(
            baselines, lambda r: (r.fraction, r.contagion, r.algorithm)).items()):
        paths.append(d / f"{key[0]:g}_{key[1]}_{key[2]}_Training.csv")
        _curve_file(paths[-1], c)
    obs = defaultdict(list)
    for (cent, alg, model), curve in observed.items():
        obs[(model, alg)].append(curve)
    for f in fractions:
        for (model, alg), cs in sorted(obs.items()):
            paths.append(d / f"{f:g}_{model}_{alg}_Original.csv")
            _curve_file(paths[-1], np.mean(np.asarray(cs), axis=0))
    wide = mean_curves(records, lambda r: (r.fraction, r.contagion, r.algorithm, r.metric,
                                           r.centrality))
    wide_base = mean_curves(baselines, lambda r: (r.fraction, r.contagion, r.algorithm, BASELINE,
                                                  r.centrality))
    wide.update(wide_base)
    groups = defaultdict(dict)
    for (f, model, alg, metric, cent), c in wide.items():
        groups[(f, model, alg, metric)][cent] = c
    for (f, model, alg, metric), cols in sorted(groups.items()):
        names = sorted(cols)
        horizon = len(next(iter(cols.values())))
        rows = [[t] + [_fmt(cols[n][t]) for n in names] for t in range(horizon)]
        paths.append(d / "centrality" / f"{f:g}_{model}_{alg}_{metric}.csv")
        _write_csv(paths[-1], ["time"] + names, rows)
    return paths


def write_outputs(result: GridResult, cfg: ExperimentConfig, out: str | os.PathLike) -> dict:
    """Write every output file; tables and curves are rebuilt from the CSVs."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "results.csv", RESULT_FIELDS, [_record_row(r) for r in result.records])
    _write_csv(out / "baseline.csv", RESULT_FIELDS, [_record_row(r) for r in result.baselines])
    width = 1 + cfg.r
    head = ["kind"] + RESULT_FIELDS + ["latent", "verdict"] + [f"t{i}" for i in range(width)]
    rows = list(_curve_rows("predicted", result.records)) + list(
        _curve_rows("training", result.baselines))
    for (cent, alg, model), curve in sorted(result.observed.items()):
        rows.append(["observed", "", "", "", cent, alg, model, "", "", "", "", ""]
                    + [_fmt(x) for x in curve])
    _write_csv(out / "curves_raw.csv", head, rows)

    records, baselines, observed = read_curves(out / "curves_raw.csv")
    write_tables(read_records(out / "results.csv"), out)
    write_curves(records, baselines, observed, out)
    manifest = {
        "package": "socialsphere",
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "seed": cfg.seed,
        "config": cfg.to_dict(),
        "graph": result.graph_info,
        "records": len(result.records),
        "baseline_records": len(result.baselines),
        "failures": [dataclasses.asdict(f) for f in result.failures],
        "latent": latent_summary(result.records),
    }
    with open(out / "run.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def latent_summary(records: Sequence[Record]) -> dict:
    """Share of (cell, trial) selections that contain latent seeds, and of
    those whose curve dominates the ground truth."""
    out = {}
    for f in sorted({r.fraction for r in records}):
        sub = [r for r in records if r.fraction == f]
        if not sub:
            continue
        with_latent = [r for r in sub if r.latent > 0]
        out[f"{f:g}"] = {
            "selections": len(sub),
            "with_latent": len(with_latent),
            "latent_and_dominating": sum(1 for r in with_latent if r.verdict == "dominates"),
        }
    return out


def read_records(path) -> list[Record]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append(Record(float(row["fraction"]), int(row["horizon"]), row["metric"],
                              row["centrality"], row["algorithm"], row["contagion"],
                              int(row["trial"]), float(row["mse"]), float(row["overlap"]), ()))
    return out


def read_curves(path):
    """Inverse of the ``curves_raw.csv`` writer."""
    records, baselines, observed = [], [], {}
    with open(path, newline="", encoding="utf-8") as fh:
        rd = csv.reader(fh)
        head = next(rd)
        tcols = [i for i, h in enumerate(head) if h.startswith("t") and h[1:].isdigit()]
        for row in rd:
            curve = tuple(float(row[i]) for i in tcols)
            if row[0] == "observed":
                observed[(row[4], row[5], row[6])] = curve
                continue
            r = Record(float(row[1]), int(row[2]), row[3], row[4], row[5], row[6], int(row[7]),
                       float(row[8]), float(row[9]), curve, int(row[10]), row[11])
            (records if row[0] == "predicted" else baselines).append(r)
    return records, baselines, observed


# -- config files -----------------------------------------------------------------

_LIST_KEYS = {"fractions": float, "horizons": int, "metrics": str, "centralities": str,
              "algorithms": str, "contagions": str}


def _coerce(name: str, raw: str, default):
    if name in _LIST_KEYS:
        return [_LIST_KEYS[name](x.strip()) for x in raw.replace(";", ",").split(",") if x.strip()]
    if isinstance(default, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(default, int) or name in ("k", "trials", "seed", "r", "workers"):
        return int(raw)
    if isinstance(default, float):
        return float(raw)
    if raw.strip().lower() == "none":
        return None
    return raw.strip()


def load_config(path: str | os.PathLike | None = None, overrides: dict | None = None
                ) -> ExperimentConfig:
    """Read an INI file (sections ``experiment``, ``linkpred``, ``contagion``,
    ``centrality``) and apply ``overrides`` on top."""
    defaults = {f.name: (f.default if f.default is not dataclasses.MISSING else f.default_factory())
                for f in dataclasses.fields(ExperimentConfig)}
    values = dict(defaults)
    cparams = dataclasses.asdict(CentralityParams())
    if path is not None:
        cp = configparser.ConfigParser()
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
        for section in cp.sections():
            for key, raw in cp.items(section):
                key = key.replace("-", "_")
                if section == "centrality":
                    if key not in cparams:
                        raise ValueError(f"unknown centrality option {key!r}")
                    d = CentralityParams.__dataclass_fields__[key].default
                    cparams[key] = (None if raw.strip().lower() == "none"
                                    else type(d)(raw) if d is not None else int(raw))
                elif key in values:
                    values[key] = _coerce(key, raw, defaults[key])
                else:
                    raise ValueError(f"unknown option {key!r} in [{section}]")
    for key, v in (overrides or {}).items():
        if v is None:
            continue
        if key == "centrality_params":
            cparams.update(v)
        else:
            values[key] = v
    values["centrality_params"] = CentralityParams(**cparams)
    return ExperimentConfig(**values)
