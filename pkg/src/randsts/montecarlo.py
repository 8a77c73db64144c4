"""Seeded Monte Carlo experiments on random square-tiled surfaces.

Trial ``i`` always draws from ``RngStream(seed, i)``, so the record stream is
a pure function of the configuration and does not depend on ``workers``.
"""
from __future__ import annotations

import csv
import io
import json
import math
import multiprocessing
import os
import time
from collections import Counter
from dataclasses import asdict, dataclass, field, fields
from datetime import datetime, timezone
from typing import Callable, Iterable, Iterator, Sequence

from . import kernels
from .partitions import format_partition, parse_partition, sample_partition_max_parts
from .permcore import RngStream, class_images
from .surface import StratumSignature

__all__ = [
    "EULER_GAMMA",
    "MODELS",
    "CSV_COLUMNS",
    "STRATUM_HISTOGRAM_CAP",
    "ExperimentConfig",
    "TrialRecord",
    "ExperimentSummary",
    "run_trial",
    "iter_trials",
    "run_experiment",
    "summarize",
    "genus_reference",
    "cycle_count_reference",
    "gaussian_genus_profile",
    "stratum_mode",
    "write_csv",
    "read_csv",
    "write_summary_json",
    "SUMMARY_SCHEMA",
]

EULER_GAMMA = 0.57721566490153286
MODELS = ("standard", "hr", "hr_random")
CSV_COLUMNS = (
    "trial", "n", "model", "mu", "connected", "num_components",
    "vertices", "genus", "stratum", "holonomy", "num_cylinders",
)
STRATUM_HISTOGRAM_CAP = 10**6
_CHUNK = 2048


@dataclass(frozen=True)
class ExperimentConfig:
    model: str
    n: int
    trials: int
    seed: int = 0
    mu: tuple | None = None  # model "hr"
    max_parts: int | None = None  # model "hr_random"
    workers: int = 1
    csv_path: str | None = None
    summary_path: str | None = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.model == "hr":
            if self.mu is None:
                raise ValueError("model 'hr' needs mu")
            mu = tuple(sorted(self.mu, reverse=True))
            if sum(mu) != self.n or (mu and mu[-1] < 1):
                raise ValueError(f"mu must be a partition of n={self.n}")
            object.__setattr__(self, "mu", mu)
        if self.model == "hr_random":
            if self.max_parts is None or not 1 <= self.max_parts <= self.n:
                raise ValueError("model 'hr_random' needs 1 <= max_parts <= n")


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    n: int
    model: str
    mu: str
    connected: bool
    num_components: int
    vertices: int
    genus: int
    stratum: str
    holonomy: str
    num_cylinders: int

    def csv_row(self) -> list:
        return [
            self.trial, self.n, self.model, self.mu, int(self.connected), self.num_components,
            self.vertices, self.genus, self.stratum, self.holonomy, self.num_cylinders,
        ]


def run_trial(config: ExperimentConfig, trial: int) -> TrialRecord:
    rng = RngStream(config.seed, trial)
    n = config.n
    if config.model == "standard":
        mu = None
        sigma = rng.permutation(n)
    else:
        mu = config.mu if config.model == "hr" else sample_partition_max_parts(n, config.max_parts, rng)
        sigma = class_images(mu, rng)
    tau = rng.permutation(n)
    lengths, comps, hol, cyl = kernels.analyze_pair(sigma, tau)
    v = len(lengths)
    return TrialRecord(
        trial=trial,
        n=n,
        model=config.model,
        mu=format_partition(mu) if mu is not None else "-",
        connected=comps == 1,
        num_components=comps,
        vertices=v,
        genus=(n - v) // 2 + 1,
        stratum=format_partition(tuple(l - 1 for l in lengths if l >= 2)),
        holonomy="HVU"[hol],
        num_cylinders=cyl,
    )


def _run_chunk(args) -> list:
    config, start, stop = args
    return [run_trial(config, i) for i in range(start, stop)]


def iter_trials(config: ExperimentConfig) -> Iterator[TrialRecord]:
    """Records in trial order."""
    chunks = [(config, s, min(s + _CHUNK, config.trials)) for s in range(0, config.trials, _CHUNK)]
    if config.workers == 1 or len(chunks) <= 1:
        for ch in chunks:
            yield from _run_chunk(ch)
        return
    with multiprocessing.get_context("fork").Pool(config.workers) as pool:
        for batch in pool.imap(_run_chunk, chunks):
            yield from batch


@dataclass
class ExperimentSummary:
    n: int
    model: str
    trials: int
    connected_fraction: float
    connected_se: float
    genus_mean: float
    genus_mean_se: float
    genus_variance: float
    genus_variance_se: float
    vertex_histogram: dict
    stratum_histogram: dict
    stratum_overflow: int
    holonomy_fractions: dict  # H, H_or_V, U
    holonomy_se: dict
    reference: dict
    elapsed_seconds: float = 0.0
    config: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        data = asdict(self)
        elapsed = data.pop("elapsed_seconds")
        data["vertex_histogram"] = {str(k): v for k, v in sorted(self.vertex_histogram.items())}
        data["stratum_histogram"] = dict(
            sorted(self.stratum_histogram.items(), key=lambda kv: (-kv[1], kv[0]))
        )
        mode = stratum_mode(self) if self.trials else None
        data["modal_stratum"] = str(mode) if mode else None
        data["modal_stratum_mass"] = (
            self.stratum_histogram[str(mode)] / self.trials if mode else None
        )
        data["meta"] = {
            "elapsed_seconds": elapsed,
            "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "kernel_backend": kernels.BACKEND,
        }
        return data


class _Accumulator:
    """Associative reduction of trial records."""

    def __init__(self):
        self.trials = 0
        self.connected = 0
        self.genus_powers = [0, 0, 0, 0]  # sums of g, g^2, g^3, g^4
        self.vertices = Counter()
        self.strata = Counter()
        self.overflow = 0
        self.holonomy = Counter()

    def add(self, rec: TrialRecord):
        self.trials += 1
        self.connected += rec.connected
        g = rec.genus
        p = self.genus_powers
        p[0] += g
        p[1] += g * g
        p[2] += g**3
        p[3] += g**4
        self.vertices[rec.vertices] += 1
        if rec.stratum in self.strata or len(self.strata) < STRATUM_HISTOGRAM_CAP:
            self.strata[rec.stratum] += 1
        else:
            self.overflow += 1
        self.holonomy[rec.holonomy] += 1


def _frac_se(p: float, m: int) -> float:
    return math.sqrt(p * (1 - p) / m) if m else 0.0


def _finish(acc: _Accumulator, config: ExperimentConfig, elapsed: float) -> ExperimentSummary:
    m = acc.trials
    n = config.n
    if m:
        s1, s2, s3, s4 = acc.genus_powers
        mean = s1 / m
        var_pop = s2 / m - mean * mean
        var = var_pop * m / (m - 1) if m > 1 else 0.0
        # fourth central moment, for the standard error of the variance
        m4 = s4 / m - 4 * mean * s3 / m + 6 * mean**2 * s2 / m - 3 * mean**4
        var_se = math.sqrt(max(m4 - var_pop**2, 0.0) / m)
        conn = acc.connected / m
        hol = {
            "H": acc.holonomy["H"] / m,
            "H_or_V": (acc.holonomy["H"] + acc.holonomy["V"]) / m,
            "U": acc.holonomy["U"] / m,
        }
    else:
        mean = var = var_se = conn = 0.0
        hol = {"H": 0.0, "H_or_V": 0.0, "U": 0.0}
    ref_mean, ref_var = genus_reference(n) if n >= 2 else (1.0, 0.0)
    reference = {
        "genus_mean": ref_mean,
        "genus_variance": ref_var,
        "holonomy_torus": math.exp(-1),
        "connected": 1 - 1 / n if config.model == "standard" else None,
    }
    cfg = {
        "model": config.model,
        "n": n,
        "trials": config.trials,
        "seed": config.seed,
        "mu": format_partition(config.mu) if config.mu is not None else None,
        "max_parts": config.max_parts,
    }
    return ExperimentSummary(
        n=n,
        model=config.model,
        trials=m,
        connected_fraction=conn,
        connected_se=_frac_se(conn, m),
        genus_mean=mean,
        genus_mean_se=math.sqrt(var / m) if m else 0.0,
        genus_variance=var,
        genus_variance_se=var_se,
        vertex_histogram=dict(acc.vertices),
        stratum_histogram=dict(acc.strata),
        stratum_overflow=acc.overflow,
        holonomy_fractions=hol,
        holonomy_se={k: _frac_se(v, m) for k, v in hol.items()},
        reference=reference,
        elapsed_seconds=elapsed,
        config=cfg,
    )


def summarize(records: Iterable[TrialRecord], config: ExperimentConfig) -> ExperimentSummary:
    acc = _Accumulator()
    for rec in records:
        acc.add(rec)
    return _finish(acc, config, 0.0)


def run_experiment(
    config: ExperimentConfig, on_record: Callable[[TrialRecord], None] | None = None
) -> ExperimentSummary:
    """Run all trials, streaming records to ``config.csv_path`` (if set) and to
    ``on_record``; write the summary JSON if ``config.summary_path`` is set."""
    start = time.perf_counter()
    acc = _Accumulator()
    sink = _CsvSink(config.csv_path) if config.csv_path else None
    try:
        for rec in iter_trials(config):
            acc.add(rec)
            if sink:
                sink.write(rec)
            if on_record:
                on_record(rec)
    finally:
        if sink:
            sink.close()
    summary = _finish(acc, config, time.perf_counter() - start)
    if config.summary_path:
        write_summary_json(summary, config.summary_path)
    return summary


def genus_reference(n: int) -> tuple:
    """Asymptotic (mean, variance) of the genus: n/2 - ln(n)/2 - gamma/2 + 1
    and ln(n)/4 + gamma/4 - pi^2/24."""
    if n < 2:
        raise ValueError("n must be at least 2")
    ln = math.log(n)
    return n / 2 - ln / 2 - EULER_GAMMA / 2 + 1, ln / 4 + EULER_GAMMA / 4 - math.pi**2 / 24


def cycle_count_reference(n: int) -> tuple:
    """Asymptotic (mean, variance) of the cycle count of a uniform permutation."""
    ln = math.log(n)
    return ln + EULER_GAMMA, ln + EULER_GAMMA - math.pi**2 / 6


def gaussian_genus_profile(n: int, ell: int) -> float:
    """Predicted Pr(genus = (n - ell)/2 + 1) for ell of the same parity as n."""
    if (n - ell) % 2:
        raise ValueError(f"ell={ell} must have the parity of n={n}")
    mean, var = cycle_count_reference(n)
    z = (ell - mean) / math.sqrt(var)
    return 2 * math.exp(-0.5 * z * z) / math.sqrt(2 * math.pi * var)


def stratum_mode(summary: ExperimentSummary) -> StratumSignature:
    """Most frequent stratum; ties go to the reverse-lex largest order tuple."""
    if not summary.stratum_histogram:
        raise ValueError("empty stratum histogram")
    best = max(
        summary.stratum_histogram.items(),
        key=lambda kv: (kv[1], parse_partition(kv[0])),
    )
    orders = parse_partition(best[0])
    marked = summary.n - sum(a + 1 for a in orders)
    return StratumSignature(orders, marked)


def stratum_ties(summary: ExperimentSummary) -> list:
    top = max(summary.stratum_histogram.values())
    return sorted(k for k, v in summary.stratum_histogram.items() if v == top)


class _CsvSink:
    def __init__(self, path: str):
        self.path = path
        try:
            self.fh = open(path, "w", encoding="utf-8", newline="")
        except OSError as exc:
            raise OSError(f"cannot open {path}: {exc}") from exc
        self.writer = csv.writer(self.fh, lineterminator="\n")
        self.writer.writerow(CSV_COLUMNS)

    def write(self, rec: TrialRecord):
        self.writer.writerow(rec.csv_row())

    def close(self):
        try:
            self.fh.flush()
            os.fsync(self.fh.fileno())
        finally:
            self.fh.close()


def write_csv(records: Iterable[TrialRecord], path: str) -> int:
    sink = _CsvSink(path)
    count = 0
    try:
        for rec in records:
            sink.write(rec)
            count += 1
    finally:
        sink.close()
    return count


_INT_COLUMNS = {"trial", "n", "num_components", "vertices", "genus", "num_cylinders"}


def read_csv(path_or_text: str, *, text: bool = False) -> list:
    fh = io.StringIO(path_or_text) if text else open(path_or_text, encoding="utf-8", newline="")
    with fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
        out = []
        for row in reader:
            kw = {}
            for f in fields(TrialRecord):
                v = row[f.name]
                if f.name in _INT_COLUMNS:
                    kw[f.name] = int(v)
                elif f.name == "connected":
                    kw[f.name] = v == "1"
                else:
                    kw[f.name] = v
            out.append(TrialRecord(**kw))
    return out


def write_summary_json(summary: ExperimentSummary, path: str):
    data = summary.to_json_dict()
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(data, fh, indent=2, sort_keys=False)
            fh.write("\n")
            fh.flush()
            os.fsync(fh.fileno())
    except OSError as exc:
        raise OSError(f"cannot write summary to {path}: {exc}") from exc


_num = {"type": "number"}
_frac = {"type": "number", "minimum": 0, "maximum": 1}
SUMMARY_SCHEMA = {
    "type": "object",
    "required": [
        "n", "model", "trials", "connected_fraction", "connected_se", "genus_mean",
        "genus_mean_se", "genus_variance", "genus_variance_se", "vertex_histogram",
        "stratum_histogram", "stratum_overflow", "holonomy_fractions", "holonomy_se",
        "reference", "config", "modal_stratum", "modal_stratum_mass", "meta",
    ],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "model": {"enum": list(MODELS)},
        "trials": {"type": "integer", "minimum": 0},
        "connected_fraction": _frac,
        "connected_se": _num,
        "genus_mean": _num,
        "genus_mean_se": _num,
        "genus_variance": _num,
        "genus_variance_se": _num,
        "vertex_histogram": {"type": "object", "additionalProperties": {"type": "integer"}},
        "stratum_histogram": {"type": "object", "additionalProperties": {"type": "integer"}},
        "stratum_overflow": {"type": "integer", "minimum": 0},
        "holonomy_fractions": {
            "type": "object",
            "required": ["H", "H_or_V", "U"],
            "additionalProperties": _frac,
        },
        "holonomy_se": {"type": "object"},
        "reference": {"type": "object"},
        "config": {"type": "object"},
        "modal_stratum": {"type": ["string", "null"]},
        "modal_stratum_mass": {"type": ["number", "null"]},
        "meta": {"type": "object", "required": ["elapsed_seconds"]},
    },
}
