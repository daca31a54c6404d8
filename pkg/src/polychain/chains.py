"""Longest convex chain solvers over random points in the standard triangle.

A convex chain of a point set Y inside T is a subset whose convex hull
together with p0 = (0, 1) and p2 = (1, 0) has |Y| + 2 vertices: the
points form a convex polygonal path from p0 to p2 below the chord.
Sorting by x, that is exactly a sequence whose edge slopes (including
the edges from p0 and to p2) are negative and strictly increasing.

The exact solver is the O(n^2) dynamic program: points are ordered by
increasing x and each point keeps, for every achievable chain length k,
the minimal possible slope of the last chain segment plus a back
pointer.  A pruned variant first restricts the sample to a neighborhood
of the parabola Gamma, where the long chains concentrate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from numba import njit

from .geometry import P0, P2, Triangle, gamma_distance, to_standard


@dataclass(frozen=True)
class PointSample:
    """Planar points inside the standard triangle, in generation order."""

    points: np.ndarray  # (n, 2)
    seed: int = 0

    @property
    def n(self) -> int:
        return int(np.asarray(self.points).shape[0])


@dataclass(frozen=True)
class ConvexChain:
    """Indices into a PointSample, in path order from p0 to p2."""

    indices: Tuple[int, ...]
    empty_pruning: bool = False  # set when pruning removed every point

    @property
    def length(self) -> int:
        return len(self.indices)


def _as_points(sample) -> np.ndarray:
    pts = np.asarray(sample.points, dtype=float)
    if pts.size == 0:
        return pts.reshape(0, 2)
    return np.atleast_2d(pts)


def _check_interior(pts: np.ndarray) -> None:
    if pts.size == 0:
        return
    x, y = pts[:, 0], pts[:, 1]
    if np.any(x <= 0) or np.any(y <= 0) or np.any(x + y >= 1):
        raise ValueError("all sample points must lie strictly inside the triangle")


def _sort_order(pts: np.ndarray) -> np.ndarray:
    # x ascending; among equal x, y descending (deterministic on ties)
    return np.lexsort((-pts[:, 1], pts[:, 0]))


def is_convex_chain(sample, indices: Sequence[int]) -> bool:
    """True iff the chosen points are all hull vertices together with p0, p2.

    Equivalently: ordered by x, the path p0 -> points -> p2 has strictly
    increasing (negative) edge slopes.  Tests cross-check this ordering
    characterization against a direct convex-hull vertex count.
    """
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise ValueError("duplicate indices")
    if not idx:
        return True
    pts = _as_points(sample)[idx]
    x, y = pts[:, 0], pts[:, 1]
    if np.any(x <= 0) or np.any(y <= 0) or np.any(x + y >= 1):
        return False
    order = _sort_order(pts)
    pts = pts[order]
    verts = np.vstack([np.array([P0]), pts, np.array([P2])])
    dx = np.diff(verts[:, 0])
    if np.any(dx <= 0):
        return False
    slopes = np.diff(verts[:, 1]) / dx
    return bool(np.all(np.diff(slopes) > 0))


def chain_path(sample, chain: ConvexChain) -> np.ndarray:
    """Polyline p0 -> chain points -> p2 as an (L+2, 2) array."""
    if not is_convex_chain(sample, chain.indices):
        raise ValueError("indices do not form a convex chain")
    pts = _as_points(sample)[list(chain.indices)]
    if len(pts):
        pts = pts[_sort_order(pts)]
    return np.vstack([np.array([P0]), pts.reshape(-1, 2), np.array([P2])])


@njit(cache=True)
def _dp_kernel(x, y, cap):  # pragma: no cover - exercised through wrappers
    """Length-indexed minimal-last-slope DP.  Returns (status, chain).

    status 0: ok; -1: cap exceeded (caller retries with a larger cap);
    -2: internal monotonicity violation (should never happen).
    """
    n = x.size
    minslope = np.full((n, cap + 1), np.inf)
    bp = np.full((n, cap + 1), -2, dtype=np.int64)
    lmax = np.zeros(n, dtype=np.int64)
    s0 = (y - 1.0) / x
    s2 = -y / (1.0 - x)
    for j in range(n):
        minslope[j, 1] = s0[j]
        bp[j, 1] = -1
        lmax[j] = 1
        for i in range(j):
            dx = x[j] - x[i]
            if dx <= 0.0:
                continue
            sl = (y[j] - y[i]) / dx
            if minslope[i, 1] >= sl:
                continue
            # largest k with minslope[i, k] < sl (row is nondecreasing)
            lo = 1
            hi = lmax[i]
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if minslope[i, mid] < sl:
                    lo = mid
                else:
                    hi = mid - 1
            k = lo + 1
            if k > cap:
                return -1, np.empty(0, dtype=np.int64)
            kk = k
            while kk >= 2 and sl < minslope[j, kk]:
                # a length-kk chain with this last slope exists: drop
                # interior points of the length-k chain
                minslope[j, kk] = sl
                bp[j, kk] = i
                kk -= 1
            if k > lmax[j]:
                lmax[j] = k
    # monotonicity audit of every per-point list
    for i in range(n):
        for k in range(1, lmax[i]):
            if minslope[i, k] > minslope[i, k + 1]:
                return -2, np.empty(0, dtype=np.int64)
    best_len = 0
    best_i = -1
    for i in range(n):
        if minslope[i, 1] >= s2[i]:
            continue
        lo = 1
        hi = lmax[i]
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if minslope[i, mid] < s2[i]:
                lo = mid
            else:
                hi = mid - 1
        if lo > best_len:
            best_len = lo
            best_i = i
    out = np.empty(best_len, dtype=np.int64)
    k = best_len
    cur = best_i
    while k >= 1:
        out[k - 1] = cur
        cur = bp[cur, k]
        k -= 1
    return 0, out


def longest_chain_exact(sample, triangle: Optional[Triangle] = None) -> ConvexChain:
    """Maximal convex chain by the slope-list dynamic program.

    If ``triangle`` is given, points are first mapped to the standard
    triangle (chain lengths are affine invariants).  The returned chain
    is validated against is_convex_chain.
    """
    pts = _as_points(sample)
    if triangle is not None:
        pts = np.atleast_2d(to_standard(triangle)(pts))
    _check_interior(pts)
    n = len(pts)
    if n == 0:
        return ConvexChain(())
    order = _sort_order(pts)
    x = np.ascontiguousarray(pts[order, 0])
    y = np.ascontiguousarray(pts[order, 1])
    cap = min(n, max(8, int(6.0 * n ** (1.0 / 3.0)) + 16))
    while True:
        status, chain = _dp_kernel(x, y, cap)
        if status == 0:
            break
        if status == -2:
            raise AssertionError("DP slope lists lost monotonicity")
        cap = min(n, cap * 2)
    result = ConvexChain(tuple(int(order[i]) for i in chain))
    check_sample = sample if triangle is None else PointSample(pts)
    if not is_convex_chain(check_sample, result.indices):
        raise AssertionError("solver returned an invalid chain")
    return result


def longest_chain_pruned(sample, width: Union[float, str]) -> ConvexChain:
    """Exact DP restricted to the points within ``width`` of Gamma.

    ``width="auto"`` starts at n^(-1/3) and doubles the neighborhood until
    the chain length is stable across one doubling.  A numeric width that
    prunes away every point yields a length-0 chain flagged with
    ``empty_pruning``.
    """
    pts = _as_points(sample)
    _check_interior(pts)
    n = len(pts)
    if n == 0:
        return ConvexChain(())
    if isinstance(width, str):
        if width != "auto":
            raise ValueError("width must be a positive number or 'auto'")
        w = n ** (-1.0 / 3.0)
        dist = gamma_distance(pts)
        prev = _solve_subset(sample, pts, dist, w)
        for _ in range(16):
            if w >= math.sqrt(2.0):
                return prev
            w *= 2.0
            cur = _solve_subset(sample, pts, dist, w)
            if cur.length == prev.length:
                return cur
            prev = cur
        return prev
    if not width > 0:
        raise ValueError("width must be positive")
    dist = gamma_distance(pts)
    return _solve_subset(sample, pts, dist, float(width))


def _solve_subset(sample, pts, dist, width) -> ConvexChain:
    keep = np.nonzero(dist <= width)[0]
    if keep.size == 0:
        return ConvexChain((), empty_pruning=True)
    sub = PointSample(pts[keep], seed=getattr(sample, "seed", 0))
    chain = longest_chain_exact(sub)
    return ConvexChain(tuple(int(keep[i]) for i in chain.indices))


def brute_force_chain(sample) -> ConvexChain:
    """Exhaustive maximal chain by DFS over slope-increasing sequences.

    Independent of the DP (used as its oracle); guarded to n <= 18.
    Prunes a branch when even taking every remaining point cannot beat
    the incumbent.
    """
    pts = _as_points(sample)
    _check_interior(pts)
    n = len(pts)
    if n > 18:
        raise ValueError("brute force is limited to 18 points")
    if n == 0:
        return ConvexChain(())
    order = _sort_order(pts)
    x = pts[order, 0]
    y = pts[order, 1]
    s0 = (y - 1.0) / x
    s2 = -y / (1.0 - x)
    best: list = []

    def extend(chain, last_slope):
        start = chain[-1] + 1 if chain else 0
        for j in range(start, n):
            if len(chain) + (n - j) <= len(best):
                break
            if chain:
                i = chain[-1]
                dx = x[j] - x[i]
                if dx <= 0.0:
                    continue
                sl = (y[j] - y[i]) / dx
            else:
                sl = s0[j]
            if sl <= last_slope:
                continue
            chain.append(j)
            if s2[j] > sl and len(chain) > len(best):
                best[:] = chain
            extend(chain, sl)
            chain.pop()

    extend([], -math.inf)
    return ConvexChain(tuple(int(order[i]) for i in best))
