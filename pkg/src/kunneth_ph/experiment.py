"""Künneth-vs-direct comparison on sampled product metric spaces.

For each (n, p, seed) two factors of n points are sampled (unit intervals for
the square, geodesic unit circles for the torus).  Their Rips barcodes are
combined with the Künneth formula and compared, degree by degree, with the
Rips barcode of the l^p product sample.
"""

from __future__ import annotations

import csv
import json
import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np

from .bottleneck import bottleneck_distance
from .intervals import INF, check_p
from .kunneth import kunneth_product_barcode
from .metric import product_metric, sample_circle, sample_interval, vr_barcode

CSV_COLUMNS = ("shape", "p", "n", "seed", "degree", "bottleneck")
SHAPES = {"square": sample_interval, "torus": sample_circle}
DEFAULT_MAX_DIM = {"square": 1, "torus": 2}


class ResourceGuardError(RuntimeError):
    """A run would exceed the configured desk-scale bounds."""


def _parse_ints(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(x) for x in text)
    out = []
    for part in str(text).replace(" ", "").split(","):
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def _parse_ps(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(check_p(x) for x in text)
    return tuple(check_p(x) for x in str(text).replace(" ", "").split(",") if x)


@dataclass
class ExperimentConfig:
    shape: str = "square"
    n_values: tuple = tuple(range(5, 13))
    p_values: tuple = (1.0, 2.0, 5.0)
    max_dim: Optional[int] = None       # top homology degree; shape default if None
    seeds: tuple = (0, 1, 2)
    output: Optional[str] = None
    diagrams: Optional[str] = None      # directory for per-trial barcode dumps
    n_cap: int = 16
    workers: int = 1

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"shape must be one of {sorted(SHAPES)}, got {self.shape!r}")
        self.n_values = _parse_ints(self.n_values)
        self.seeds = _parse_ints(self.seeds)
        self.p_values = _parse_ps(self.p_values)
        if not self.n_values or min(self.n_values) < 2:
            raise ValueError("n_values must be nonempty and >= 2")
        if any(p < 1 for p in self.p_values):
            raise ValueError("p_values must be >= 1 for product metrics")
        if self.max_dim is None:
            self.max_dim = DEFAULT_MAX_DIM[self.shape]
        self.max_dim = int(self.max_dim)
        self.n_cap = int(self.n_cap)
        self.workers = max(1, int(self.workers))
        if self.max_dim < 0:
            raise ValueError("max_dim must be >= 0")

    def check_resources(self) -> None:
        too_big = [n for n in self.n_values if n > self.n_cap]
        if too_big:
            raise ResourceGuardError(
                f"n = {max(too_big)} points per factor exceeds the cap of {self.n_cap} "
                f"({max(too_big) ** 2} product points); raise n_cap to override"
            )
        if self.max_dim > 3:
            raise ResourceGuardError(f"max_dim = {self.max_dim} is beyond desk scale (<= 3)")

    @classmethod
    def from_mapping(cls, values: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        aliases = {"n": "n_values", "p": "p_values", "seed": "seeds", "n-values": "n_values",
                   "p-values": "p_values", "max-dim": "max_dim", "n-cap": "n_cap"}
        kwargs = {}
        for key, value in values.items():
            key = aliases.get(key, key).replace("-", "_")
            if key not in known:
                raise ValueError(f"unknown experiment option {key!r}")
            kwargs[key] = value
        return cls(**kwargs)


def read_key_values(path) -> dict:
    """``key = value`` lines; ``#`` comments and blank lines ignored."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def trial_factors(shape: str, n: int, seed: int):
    """The two sampled factors of a trial; independent streams from one seed."""
    sampler = SHAPES[shape]
    left, right = np.random.SeedSequence(seed).spawn(2)
    return sampler(n, left), sampler(n, right)


@dataclass
class TrialResult:
    shape: str
    p: float
    n: int
    seed: int
    distances: dict
    diam_bound: float
    kunneth: object = field(repr=False, default=None)
    direct: object = field(repr=False, default=None)

    def rows(self) -> list:
        return [
            {"shape": self.shape, "p": _fmt_p(self.p), "n": self.n, "seed": self.seed,
             "degree": k, "bottleneck": repr(float(v))}
            for k, v in sorted(self.distances.items())
        ]


def _fmt_p(p: float) -> str:
    return "inf" if p == INF else f"{p:g}"


def run_trial(shape: str, n: int, p: float, seed: int, max_dim: int) -> TrialResult:
    X, Y = trial_factors(shape, n, seed)
    kb = kunneth_product_barcode(vr_barcode(X, max_dim), vr_barcode(Y, max_dim), p,
                                 max_degree=max_dim)
    direct = vr_barcode(product_metric(X, Y, p), max_dim)
    distances = {k: bottleneck_distance(kb.degree(k), direct.degree(k)) for k in range(max_dim + 1)}
    return TrialResult(shape, p, n, seed, distances, min(X.diameter, Y.diameter), kb, direct)


def _run_packed(args):
    return run_trial(*args)


def run_experiment(config: ExperimentConfig, progress=None) -> list:
    """Run every (n, p, seed) trial; results come back in sweep order."""
    config.check_resources()
    jobs = [
        (config.shape, n, p, seed, config.max_dim)
        for n in config.n_values for p in config.p_values for seed in config.seeds
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_packed, jobs))
    else:
        results = []
        for job in jobs:
            results.append(run_trial(*job))
            if progress:
                progress(results[-1])
    for res in results:
        for k, v in res.distances.items():
            if not v <= res.diam_bound + 1e-9:
                warnings.warn(
                    f"diameter bound violated: {res.shape} n={res.n} p={res.p} seed={res.seed} "
                    f"degree {k}: {v} > {res.diam_bound}",
                    RuntimeWarning,
                )
    if config.output:
        write_csv(results, config.output)
    if config.diagrams:
        dump_diagrams(results, config.diagrams)
    return results


def write_csv(results, path_or_file) -> None:
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for res in results:
            writer.writerows(res.rows())
    finally:
        if own:
            fh.close()


def dump_diagrams(results, directory) -> None:
    os.makedirs(directory, exist_ok=True)
    for res in results:
        name = f"{res.shape}_n{res.n}_p{_fmt_p(res.p)}_s{res.seed}.json"
        with open(os.path.join(directory, name), "w") as fh:
            json.dump({"kunneth": res.kunneth.to_json(), "direct": res.direct.to_json()}, fh)


def summarize(results) -> dict:
    """Mean distance per (p, n, degree) over seeds."""
    acc: dict = {}
    for res in results:
        for k, v in res.distances.items():
            acc.setdefault((res.p, res.n, k), []).append(v)
    return {key: float(np.mean(vals)) if all(map(math.isfinite, vals)) else INF
            for key, vals in acc.items()}
