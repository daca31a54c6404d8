"""Affine geometry of the standard triangle and its inscribed parabola.

Standard coordinates throughout: the right triangle T with vertices
p0 = (0, 1), p1 = (0, 0), p2 = (1, 0), area 1/2.  The distinguished
parabola arc Gamma is the set sqrt(x) + sqrt(y) = 1; it joins p0 to p2,
is tangent to both legs, and is the affine-longest convex curve between
those vertices inside T.  Gamma_r denotes the homothetic copy scaled by
(1 + r) from the origin.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

Point = Tuple[float, float]

P0: Point = (0.0, 1.0)
P1: Point = (0.0, 0.0)
P2: Point = (1.0, 0.0)

#: area of the standard triangle
STANDARD_AREA = 0.5

#: cube root of 1/2 -- affine perimeter of Gamma is exactly twice this
CBRT_HALF = 0.5 ** (1.0 / 3.0)


@dataclass(frozen=True)
class Triangle:
    """Planar triangle given by its three vertices."""

    p0: Point
    p1: Point
    p2: Point

    @property
    def signed_area(self) -> float:
        (x0, y0), (x1, y1), (x2, y2) = self.p0, self.p1, self.p2
        return 0.5 * ((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0))

    @property
    def area(self) -> float:
        return abs(self.signed_area)


STANDARD_TRIANGLE = Triangle(P0, P1, P2)


@dataclass(frozen=True)
class AffineMap:
    """x -> A x + b on the plane."""

    a: Tuple[Tuple[float, float], Tuple[float, float]]
    b: Tuple[float, float]

    def __call__(self, pt) -> np.ndarray:
        pts = np.asarray(pt, dtype=float)
        a = np.asarray(self.a)
        b = np.asarray(self.b)
        return pts @ a.T + b

    def inverse(self) -> "AffineMap":
        a = np.asarray(self.a)
        ainv = np.linalg.inv(a)
        binv = -ainv @ np.asarray(self.b)
        return AffineMap(tuple(map(tuple, ainv)), tuple(binv))

    @property
    def det(self) -> float:
        a = self.a
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]


@dataclass(frozen=True)
class ParabolaParam:
    """Point of the family Gamma_r, parametrized by abscissa fraction p.

    The underlying point on Gamma is (p, (1 - sqrt(p))^2); the Gamma_r
    point is that scaled by (1 + r) from the origin.
    """

    p: float
    r: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("parabola parameter p must lie in [0, 1]")
        if not -1.0 < self.r < 1.0:
            raise ValueError("homothety offset r must lie in (-1, 1)")

    def point(self) -> Point:
        return gamma_point(self.p, self.r)


@dataclass(frozen=True)
class TangentSplit:
    """Tangent line through an interior point and the split it induces.

    ``line`` holds (fx, fy, c) meaning fx*x + fy*y = c.  t1 and t2 are the
    areas of the two triangles the line cuts off against the legs of T
    (upper one containing p0, lower one containing p2), normalized by the
    area of T.
    """

    q: Point
    line: Tuple[float, float, float]
    t1: float
    t2: float
    r: float


def to_standard(tri: Triangle) -> AffineMap:
    """Affine map sending (tri.p0, tri.p1, tri.p2) to ((0,1), (0,0), (1,0))."""
    if abs(tri.signed_area) < 1e-14:
        raise ValueError("degenerate triangle")
    src = np.array([tri.p0, tri.p1, tri.p2], dtype=float)
    dst = np.array([P0, P1, P2], dtype=float)
    # Solve for A, b from the three vertex correspondences.
    lhs = np.hstack([src, np.ones((3, 1))])  # rows (x, y, 1)
    sol = np.linalg.solve(lhs, dst)  # (3, 2): rows of [A | b]^T
    a = sol[:2].T
    b = sol[2]
    return AffineMap(tuple(map(tuple, a)), tuple(b))


def gamma_point(p: float, r: float = 0.0) -> Point:
    """Point of Gamma_r over abscissa fraction p: (1+r) * (p, (1 - sqrt p)^2)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("parabola parameter p must lie in [0, 1]")
    s = math.sqrt(p)
    return ((1.0 + r) * p, (1.0 + r) * (1.0 - s) ** 2)


def tangent_line(q: Point) -> TangentSplit:
    """Tangent line to the homothet Gamma_r passing through q.

    q must be strictly inside T (and off the origin).  The scaling r is
    recovered from (sqrt x + sqrt y)^2 = 1 + r; the tangent to Gamma_r at
    q is x/sqrt(p) + y/sqrt(q') = 1 + r where (p, q') is the Gamma point
    under the homothety.  The line meets the two legs of T; the returned
    t1/t2 are the normalized areas of the triangles it cuts off at p0 and
    p2, split at q.
    """
    x, y = float(q[0]), float(q[1])
    if x <= 0.0 or y <= 0.0 or x + y >= 1.0:
        raise ValueError("q must be strictly inside the standard triangle")
    r = (math.sqrt(x) + math.sqrt(y)) ** 2 - 1.0
    scale = 1.0 + r
    pp = x / scale
    qq = y / scale
    fx = 1.0 / math.sqrt(pp)
    fy = 1.0 / math.sqrt(qq)
    # leg intersections: x = 0 gives (0, scale*sqrt(qq)); y = 0 gives (scale*sqrt(pp), 0)
    q0 = (0.0, scale * math.sqrt(qq))
    q2 = (scale * math.sqrt(pp), 0.0)
    t1 = Triangle(P0, q0, (x, y)).area / STANDARD_AREA
    t2 = Triangle((x, y), q2, P2).area / STANDARD_AREA
    return TangentSplit(q=(x, y), line=(fx, fy, scale), t1=t1, t2=t2, r=r)


def parallel_tangent_distance(p: float, r: float) -> float:
    """Distance between the tangents to Gamma and Gamma_r over the same p.

    Equals |r| / sqrt(1/p + 1/q) with q = (1 - sqrt p)^2, which is at most
    |r| / sqrt(8) with equality at the symmetric point p = 1/4.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly inside (0, 1)")
    q = (1.0 - math.sqrt(p)) ** 2
    return abs(r) / math.sqrt(1.0 / p + 1.0 / q)


def mobius_deficiency(a, b, c):
    """1 - cbrt(abc) - cbrt((1-a)(1-b)(1-c)); nonnegative on the unit cube.

    The deficiency dominates (a - b)^2 / 3, with equality exactly when
    a = b and c takes the minimizing value of mobius_minimizing_c.
    Accepts scalars or arrays.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    val = 1.0 - np.cbrt(a * b * c) - np.cbrt((1.0 - a) * (1.0 - b) * (1.0 - c))
    if val.ndim == 0:
        return float(val)
    return val


def mobius_minimizing_c(a, b):
    """The c minimizing mobius_deficiency(a, b, c) for fixed a, b.

    c = sqrt(ab) / (sqrt(ab) + sqrt((1-a)(1-b))).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    top = np.sqrt(a * b)
    bot = top + np.sqrt((1.0 - a) * (1.0 - b))
    out = np.where(bot > 0, top / np.where(bot > 0, bot, 1.0), 0.0)
    if out.ndim == 0:
        return float(out)
    return out


def _tangent_triangle(s1: float, s2: float) -> Triangle:
    """Triangle bounded by the tangents to Gamma at sqrt-params s1 < s2 and the chord.

    The two tangency points are (s^2, (1-s)^2); the tangents intersect at
    (s1*s2, (1-s1)(1-s2)).  Its area is (s2 - s1)^3 / 2.
    """
    g1 = (s1 * s1, (1.0 - s1) ** 2)
    g2 = (s2 * s2, (1.0 - s2) ** 2)
    apex = (s1 * s2, (1.0 - s1) * (1.0 - s2))
    return Triangle(g1, apex, g2)


def equal_area_subdivision(t: float) -> List[Triangle]:
    """Partition of Gamma into tangent triangles of area t (last one smaller).

    In the sqrt-abscissa parameter s = sqrt(p), the tangent triangle
    between s and s + ds has area ds^3 / 2, so equal areas mean equal
    steps ds = cbrt(2 t); the final triangle covers whatever is left.
    The count k satisfies k - 1 <= cbrt(A(T)/t) < k and the cube roots of
    the areas add up to cbrt(A(T)).
    """
    if t <= 0.0:
        raise ValueError("target area must be positive")
    if t >= STANDARD_AREA:
        return [_tangent_triangle(0.0, 1.0)]
    ds = (2.0 * t) ** (1.0 / 3.0)
    tris = []
    s = 0.0
    while s + ds < 1.0 - 1e-15:
        tris.append(_tangent_triangle(s, s + ds))
        s += ds
    tris.append(_tangent_triangle(s, 1.0))
    return tris


def affine_perimeter(params: Sequence[float]) -> float:
    """Twice the sum of cbrt areas of the tangent triangles of a partition.

    ``params`` are abscissa parameters p in [0, 1], non-decreasing, at
    least two of them.  For any partition containing both endpoints the
    value is exactly 2 * cbrt(1/2): in the s = sqrt(p) parameter each
    tangent triangle has area (delta s)^3 / 2, so the sum telescopes.
    """
    ps = [float(p) for p in params]
    if len(ps) < 2:
        raise ValueError("need at least two tangent-point parameters")
    for p in ps:
        if not 0.0 <= p <= 1.0:
            raise ValueError("parameters must lie in [0, 1]")
    for a, b in zip(ps, ps[1:]):
        if b < a:
            raise ValueError("parameters must be non-decreasing")
    total = 0.0
    for a, b in zip(ps, ps[1:]):
        ds = math.sqrt(b) - math.sqrt(a)
        total += (ds ** 3 / 2.0) ** (1.0 / 3.0)
    return 2.0 * total


# --- distances to Gamma -------------------------------------------------

def _gamma_curve(m: int) -> np.ndarray:
    s = np.linspace(0.0, 1.0, m)
    return np.column_stack([s * s, (1.0 - s) ** 2])


def gamma_distance(points: np.ndarray, grid: int = 512, refine: int = 60) -> np.ndarray:
    """Euclidean distance from each point to the arc Gamma.

    Coarse minimization over a grid in the sqrt-abscissa parameter s,
    then a vectorized ternary refinement of s around the best cell.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    s = np.linspace(0.0, 1.0, grid)
    gx = s * s
    gy = (1.0 - s) ** 2
    n = pts.shape[0]
    best = np.empty(n, dtype=np.int64)
    chunk = max(1, int(4e6) // grid)
    for i in range(0, n, chunk):
        px = pts[i:i + chunk, 0][:, None]
        py = pts[i:i + chunk, 1][:, None]
        d2 = (px - gx[None, :]) ** 2 + (py - gy[None, :]) ** 2
        best[i:i + chunk] = np.argmin(d2, axis=1)
    lo = s[np.maximum(best - 1, 0)]
    hi = s[np.minimum(best + 1, grid - 1)]
    px, py = pts[:, 0], pts[:, 1]

    def d2_at(t):
        return (px - t * t) ** 2 + (py - (1.0 - t) ** 2) ** 2

    for _ in range(refine):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        take_lo = d2_at(m1) < d2_at(m2)
        hi = np.where(take_lo, m2, hi)
        lo = np.where(take_lo, lo, m1)
    t = 0.5 * (lo + hi)
    return np.sqrt(d2_at(t))


def _point_segment_distance(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """min over segments [a_k, b_k] of the distance from each point; (n_pts,)."""
    ab = b - a  # (m, 2)
    ab2 = np.einsum("ij,ij->i", ab, ab)
    ab2 = np.where(ab2 > 0, ab2, 1.0)
    ap = points[:, None, :] - a[None, :, :]  # (n, m, 2)
    tt = np.clip(np.einsum("nmj,mj->nm", ap, ab) / ab2[None, :], 0.0, 1.0)
    proj = a[None, :, :] + tt[:, :, None] * ab[None, :, :]
    d = np.linalg.norm(points[:, None, :] - proj, axis=2)
    return d.min(axis=1)


def hausdorff_to_gamma(path, gamma_samples: int = 10001) -> float:
    """Symmetric Hausdorff distance between a polyline and Gamma.

    Gamma is sampled densely in its sqrt-abscissa parameter; the polyline
    contributes its vertices plus 16 subdivision points per edge.  Exact
    point-to-segment distances are used toward the polyline, and the
    point-to-Gamma direction gets a local ternary refinement, so the
    sampling error stays below 1e-4.
    """
    verts = np.atleast_2d(np.asarray(path, dtype=float))
    if verts.size == 0:
        raise ValueError("empty path")
    gpts = _gamma_curve(gamma_samples)
    if len(verts) == 1:
        d = np.linalg.norm(gpts - verts[0], axis=1)
        return float(d.max())
    # direction 1: sup over Gamma of distance to the polyline
    a, b = verts[:-1], verts[1:]
    d1 = _point_segment_distance(gpts, a, b).max()
    # direction 2: sup over the polyline of distance to Gamma
    fracs = np.linspace(0.0, 1.0, 18)[:-1]  # 17 points per edge incl. start
    dense = (a[:, None, :] + fracs[None, :, None] * (b - a)[:, None, :]).reshape(-1, 2)
    dense = np.vstack([dense, verts[-1]])
    d2 = gamma_distance(dense).max()
    return float(max(d1, d2))
