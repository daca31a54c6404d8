"""Seeded Monte Carlo harness for the chain experiments.

Reproducibility contract: every sample's RNG seed is derived from
(master_seed, sample_index) through a frozen splitmix64-style mixer, so
results never depend on scheduling or on the worker count.  Wall-clock
fields exist in the record schema, but persisted CSV/JSONL zero them out
unless timing output is explicitly requested, keeping file outputs
byte-identical across reruns.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import IO, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import chains as chains_mod
from . import geometry
from .chains import ConvexChain, PointSample, longest_chain_exact, longest_chain_pruned

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix_seed(master_seed: int, index: int) -> int:
    """Frozen 64-bit mixer: splitmix64 finalizer of master + index*golden."""
    z = (master_seed + (index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    samples: int
    model: str = "uniform"  # "uniform" | "poisson"
    width: Union[float, str] = "auto"  # positive float | "auto" | "exact"
    master_seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.samples < 1:
            raise ValueError("need at least one sample")
        if self.model not in ("uniform", "poisson"):
            raise ValueError("model must be 'uniform' or 'poisson'")
        if isinstance(self.width, str):
            if self.width not in ("auto", "exact"):
                raise ValueError("width must be positive, 'auto' or 'exact'")
        elif not self.width > 0:
            raise ValueError("width must be positive, 'auto' or 'exact'")


@dataclass(frozen=True)
class RunRecord:
    sample_index: int
    realized_n: int
    L: int
    dist_to_gamma: float
    wall_time: float
    failed: bool = False
    error: str = ""


@dataclass(frozen=True)
class StatsSummary:
    mean_L: float
    median_L: float
    stddev_L: float
    d_n: int
    normalized_mean: float


def sample_uniform(n: int, seed: int) -> PointSample:
    """n i.i.d. uniform points in the open standard triangle.

    Square-root transform on barycentric coordinates: with u, v uniform
    on (0,1), the point (sqrt(u)*v, sqrt(u)*(1-v)) is uniform in T.
    Degenerate draws that would land on the boundary are redrawn.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = np.random.default_rng(seed)
    pts = np.empty((n, 2))
    need = np.ones(n, dtype=bool)
    while need.any():
        m = int(need.sum())
        u = rng.random(m)
        v = rng.random(m)
        s = np.sqrt(u)
        x = s * v
        y = s * (1.0 - v)
        pts[need, 0] = x
        pts[need, 1] = y
        idx = np.nonzero(need)[0]
        ok = (x > 0) & (y > 0) & (x + y < 1)
        need[idx[ok]] = False
    return PointSample(pts, seed=seed)


def sample_poisson(intensity: float, seed: int) -> PointSample:
    """Homogeneous Poisson process on T: count ~ Poisson(intensity * A(T)),
    then that many i.i.d. uniform points."""
    if intensity < 0:
        raise ValueError("intensity must be nonnegative")
    rng = np.random.default_rng(seed)
    count = int(rng.poisson(intensity * geometry.STANDARD_AREA))
    inner = int(rng.integers(0, 1 << 63))
    sample = sample_uniform(count, inner)
    return PointSample(sample.points, seed=seed)


def _solve(sample: PointSample, width) -> ConvexChain:
    if width == "exact":
        return longest_chain_exact(sample)
    return longest_chain_pruned(sample, width)


def _run_one(cfg: ExperimentConfig, index: int) -> RunRecord:
    seed = mix_seed(cfg.master_seed, index)
    t0 = time.perf_counter()
    try:
        if cfg.model == "poisson":
            sample = sample_poisson(2.0 * cfg.n, seed)  # intensity n / A(T)
        else:
            sample = sample_uniform(cfg.n, seed)
        chain = _solve(sample, cfg.width)
        path = chains_mod.chain_path(sample, chain)
        dist = geometry.hausdorff_to_gamma(path)
        return RunRecord(index, sample.n, chain.length, dist,
                         time.perf_counter() - t0)
    except Exception as exc:  # noqa: BLE001 - per-sample isolation
        return RunRecord(index, 0, 0, 0.0, time.perf_counter() - t0,
                         failed=True, error=f"{type(exc).__name__}: {exc}")


def resolve_workers(workers: Optional[int]) -> int:
    env = os.environ.get("POLYCHAIN_THREADS")
    if env:
        return max(1, int(env))
    return max(1, workers or 1)


def run_experiment(cfg: ExperimentConfig) -> List[RunRecord]:
    """One RunRecord per sample, ordered by sample_index.

    Per-sample seeds depend only on (master_seed, sample_index), so the
    record list is identical for any worker count.
    """
    indices = range(cfg.samples)
    workers = resolve_workers(cfg.workers)
    if workers <= 1 or cfg.samples == 1:
        records = [_run_one(cfg, i) for i in indices]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_one, [cfg] * cfg.samples, indices,
                                    chunksize=max(1, cfg.samples // (4 * workers))))
    records.sort(key=lambda r: r.sample_index)
    return records


def summarize(records: Sequence[RunRecord], n: Optional[int] = None) -> StatsSummary:
    """Mean, lower median, population stddev, d_n and normalized mean of L."""
    good = [r for r in records if not r.failed]
    if not good:
        raise ValueError("no successful records to summarize")
    ls = np.array([r.L for r in good], dtype=float)
    mean = float(ls.mean())
    median = float(np.sort(ls)[(len(ls) - 1) // 2])
    std = float(ls.std(ddof=0))
    d_n = int(math.floor(np.abs(ls - mean).max()))
    if n is None:
        n = int(round(float(np.mean([r.realized_n for r in good]))))
    norm = mean * n ** (-1.0 / 3.0) if n > 0 else 0.0
    return StatsSummary(mean, median, std, d_n, norm)


def convex_position_probability(k: int, trials: int, seed: int) -> Tuple[float, float]:
    """Monte Carlo estimate (with binomial standard error) that k uniform
    points form a convex chain.  The exact value is 2^k / (k! (k+1)!)."""
    if k < 1 or trials < 1:
        raise ValueError("k and trials must be positive")
    rng = np.random.default_rng(seed)
    hits = 0
    chunk = max(1, min(trials, int(2e6) // max(k, 1)))
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        u = rng.random((m, k))
        v = rng.random((m, k))
        s = np.sqrt(u)
        x = s * v
        y = s * (1.0 - v)
        order = np.argsort(x, axis=1)
        xs = np.take_along_axis(x, order, axis=1)
        ys = np.take_along_axis(y, order, axis=1)
        xs = np.hstack([np.zeros((m, 1)), xs, np.ones((m, 1))])
        ys = np.hstack([np.ones((m, 1)), ys, np.zeros((m, 1))])
        dx = np.diff(xs, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            slopes = np.diff(ys, axis=1) / dx
        ok = np.all(dx > 0, axis=1) & np.all(np.diff(slopes, axis=1) > 0, axis=1)
        hits += int(ok.sum())
        done += m
    p = hits / trials
    se = math.sqrt(max(p * (1.0 - p), 1.0 / trials) / trials)
    return p, se


@dataclass(frozen=True)
class OccupancyEstimate:
    mean_nonempty: float
    bound: float
    stderr: float
    triangles: int


def lower_bound_construction(n: int, trials: int = 100, seed: int = 0) -> OccupancyEstimate:
    """Occupancy count of the equal-area tangent-triangle subdivision.

    Builds the t = 2 A(T) / n subdivision, throws n uniform points per
    trial and counts nonempty triangles.  The mean must sit above the
    closed-form bound (cbrt(n/2) - 1)(1 - e^-2) up to 3 standard errors;
    a violation raises.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    tris = geometry.equal_area_subdivision(2.0 * geometry.STANDARD_AREA / n)
    corners = np.array([[t.p0, t.p1, t.p2] for t in tris])  # (k, 3, 2)
    a, b, c = corners[:, 0], corners[:, 1], corners[:, 2]
    rng = np.random.default_rng(seed)
    counts = np.empty(trials)
    for t in range(trials):
        pts = sample_uniform(n, int(rng.integers(0, 1 << 63))).points
        counts[t] = _occupancy(pts, a, b, c)
    mean = float(counts.mean())
    se = float(counts.std(ddof=0) / math.sqrt(trials))
    bound = ((n / 2.0) ** (1.0 / 3.0) - 1.0) * (1.0 - math.exp(-2.0))
    if mean < bound - 3.0 * se - 1e-9:
        raise AssertionError(
            f"occupancy mean {mean:.4f} fell below the bound {bound:.4f}")
    return OccupancyEstimate(mean, bound, se, len(tris))


def _occupancy(pts, a, b, c) -> int:
    """Number of triangles (a_k, b_k, c_k) containing at least one point."""
    def side(p0, p1):
        d = p1 - p0  # (k, 2)
        rel = pts[:, None, :] - p0[None, :, :]
        return d[None, :, 0] * rel[:, :, 1] - d[None, :, 1] * rel[:, :, 0]

    s1 = side(a, b)
    s2 = side(b, c)
    s3 = side(c, a)
    eps = 1e-12
    inside = ((s1 >= -eps) & (s2 >= -eps) & (s3 >= -eps)) | \
             ((s1 <= eps) & (s2 <= eps) & (s3 <= eps))
    return int(inside.any(axis=0).sum())


# --- persistence --------------------------------------------------------

CSV_HEADER = "n,samples,norm_mean,d_n,width_over_sqrt2,stddev,master_seed,wall_secs"


def fmt(x) -> str:
    """Shortest round-trip decimal for floats; plain str otherwise."""
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _width_over_sqrt2(width, records: Sequence[RunRecord]) -> float:
    if width == "exact":
        return 1.0  # radius sqrt(2) >= diam(T): no pruning
    if width == "auto":
        return float("nan")
    return float(width) / math.sqrt(2.0)


def summary_csv_row(cfg: ExperimentConfig, records: Sequence[RunRecord],
                    wall_secs: float = 0.0) -> str:
    s = summarize(records, n=cfg.n)
    cols = [cfg.n, cfg.samples, float(s.normalized_mean), s.d_n,
            _width_over_sqrt2(cfg.width, records), float(s.stddev_L),
            cfg.master_seed, float(wall_secs)]
    return ",".join(fmt(c) for c in cols)


def write_records_jsonl(records: Sequence[RunRecord], fh: IO[str],
                        timing: bool = False) -> None:
    for r in records:
        obj = {
            "sample_index": r.sample_index,
            "realized_n": r.realized_n,
            "L": r.L,
            "dist_to_gamma": r.dist_to_gamma,
            "wall_time": r.wall_time if timing else 0.0,
            "failed": r.failed,
        }
        if r.failed:
            obj["error"] = r.error
        fh.write(json.dumps(obj) + "\n")


def reproduce_table(rows: Sequence[Tuple[int, int, Union[float, str]]],
                    master_seed: int = 0, workers: int = 1,
                    timing: bool = False) -> List[str]:
    """One summary CSV line per (n, samples, width) row; failures logged inline."""
    out = [CSV_HEADER]
    for n, samples, width in rows:
        cfg = ExperimentConfig(n=n, samples=samples, width=width,
                               master_seed=master_seed, workers=workers)
        t0 = time.perf_counter()
        try:
            records = run_experiment(cfg)
            wall = time.perf_counter() - t0 if timing else 0.0
            out.append(summary_csv_row(cfg, records, wall))
        except Exception as exc:  # noqa: BLE001 - continue with later rows
            out.append(f"# row n={n} failed: {type(exc).__name__}: {exc}")
    return out
