"""Polarization machinery on the unit circle.

For unit-circle points z_1..z_n, the potential G(t) = sum 1/|e^{it}-z_j|^2
is strictly convex between consecutive configuration points, so its
global minimum M is found by a per-arc ternary search.  M <= n^2/4 always
holds, with equality exactly at rotated roots of unity.

The improvement step Phi factorizes the nonnegative trigonometric
polynomial 1/G as |g|^2 with g of degree n having all roots in the closed
unit disc (Fejer), then replaces the configuration by the roots of
g + g*, which are automatically unimodular.  Extremal configurations are
fixed points of Phi; monotonicity of M along the iteration is only
conjectural and is reported, never asserted.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CircleConfig:
    """Angles t_j in radians; the configuration points are e^{i t_j}."""

    angles: Tuple[float, ...]

    def __post_init__(self):
        if len(self.angles) < 1:
            raise ValueError("a configuration needs at least one point")

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def points(self) -> np.ndarray:
        return np.exp(1j * np.asarray(self.angles, dtype=float))


def uniform_config(n: int, rotation: float = 0.0) -> CircleConfig:
    """Rotated n-th roots of unity."""
    if n < 1:
        raise ValueError("n must be positive")
    return CircleConfig(tuple((rotation + TWO_PI * k / n) % TWO_PI for k in range(n)))


@dataclass(frozen=True)
class ComplexPolynomial:
    """Coefficients a_0..a_m (ascending); degree is the last nonzero index."""

    coeffs: Tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("empty coefficient list")

    @property
    def degree(self) -> int:
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k] != 0:
                return k
        return 0

    def __call__(self, z):
        return npoly.polyval(z, np.asarray(self.coeffs, dtype=complex))

    def roots(self) -> np.ndarray:
        return poly_roots(self.coeffs)


@dataclass(frozen=True)
class ArcMinima:
    """Per-arc local minima of G between consecutive configuration points."""

    arc_angles: Tuple[float, ...]
    arc_values: Tuple[float, ...]
    M: float


def _coeffs(g) -> np.ndarray:
    if isinstance(g, ComplexPolynomial):
        return np.asarray(g.coeffs, dtype=complex)
    return np.asarray(g, dtype=complex)


def g_sum(cfg: CircleConfig, t: float) -> float:
    """G(t) = sum over j of 1 / |e^{it} - z_j|^2 = sum 1/(4 sin^2((t-t_j)/2))."""
    d2 = 4.0 * np.sin((t - np.asarray(cfg.angles)) / 2.0) ** 2
    if np.any(d2 < 1e-24):
        raise ValueError("evaluation at a configuration point (pole of G)")
    return float(np.sum(1.0 / d2))


def _g_batch(angle_sets: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """G evaluated rowwise: angle_sets (B, n), ts (B, m) -> (B, m)."""
    d2 = 4.0 * np.sin((ts[:, :, None] - angle_sets[:, None, :]) / 2.0) ** 2
    with np.errstate(divide="ignore"):
        return np.sum(1.0 / d2, axis=2)


def minimize_many(angle_sets: np.ndarray, tol: float = 1e-12,
                  max_iter: int = 200) -> np.ndarray:
    """Global minimum M of G for each row of configurations; (B,) array.

    Vectorized per-arc ternary search (each arc carries exactly one local
    minimum by convexity).  Zero-width arcs from coincident points
    evaluate to +inf and drop out of the minimum.
    """
    a = np.sort(np.mod(np.asarray(angle_sets, dtype=float), TWO_PI), axis=1)
    lo = a
    hi = np.hstack([a[:, 1:], a[:, :1] + TWO_PI])
    it = 0
    while it < max_iter and float(np.max(hi - lo)) > tol:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        f1 = _g_batch(a, m1)
        f2 = _g_batch(a, m2)
        take_lo = f1 < f2
        hi = np.where(take_lo, m2, hi)
        lo = np.where(take_lo, lo, m1)
        it += 1
    mid = 0.5 * (lo + hi)
    vals = _g_batch(a, mid)
    return vals.min(axis=1)


def minimize_on_circle(cfg: CircleConfig, tol: float = 1e-12,
                       max_iter: int = 200) -> ArcMinima:
    """Arc-by-arc minimization of G; M is the least arc value.

    Coincident configuration points give zero-width arcs whose minimum is
    taken to be +inf (they never carry the global minimum).
    """
    a = np.sort(np.mod(np.asarray(cfg.angles, dtype=float), TWO_PI))
    lo = a.copy()
    hi = np.append(a[1:], a[0] + TWO_PI)
    width0 = hi - lo
    it = 0
    while it < max_iter and float(np.max(hi - lo)) > tol:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        f1 = _g_batch(a[None, :], m1[None, :])[0]
        f2 = _g_batch(a[None, :], m2[None, :])[0]
        take_lo = f1 < f2
        hi = np.where(take_lo, m2, hi)
        lo = np.where(take_lo, lo, m1)
        it += 1
    mid = 0.5 * (lo + hi)
    vals = _g_batch(a[None, :], mid[None, :])[0]
    vals = np.where(width0 < 1e-15, np.inf, vals)
    return ArcMinima(tuple(np.mod(mid, TWO_PI)), tuple(vals), float(vals.min()))


# --- polynomials --------------------------------------------------------

def poly_roots(coeffs, tol: float = 1e-13, max_iter: int = 500) -> np.ndarray:
    """All roots, by Aberth simultaneous iteration with np.roots fallback."""
    c = np.asarray(coeffs, dtype=complex)
    mx = float(np.max(np.abs(c))) if c.size else 0.0
    if mx == 0.0:
        raise ValueError("zero polynomial has no well-defined roots")
    last = int(np.max(np.nonzero(np.abs(c) > 1e-13 * mx)[0]))
    c = c[:last + 1]
    deg = len(c) - 1
    if deg == 0:
        return np.empty(0, dtype=complex)
    if deg == 1:
        return np.array([-c[0] / c[1]])
    a = c / c[-1]
    rad = 1.0 + float(np.max(np.abs(a[:-1])))
    k = np.arange(deg)
    z = (0.7 * rad) * np.exp(1j * (TWO_PI * k / deg + 0.4))
    da = npoly.polyder(a)
    for _ in range(max_iter):
        pv = npoly.polyval(z, a)
        dv = npoly.polyval(z, da)
        bad = np.abs(dv) < 1e-300
        dv = np.where(bad, 1.0, dv)
        w = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - w * s
        denom = np.where(np.abs(denom) < 1e-300, 1.0, denom)
        step = w / denom
        z = z - step
        if float(np.max(np.abs(step) / (1.0 + np.abs(z)))) < tol:
            break
    else:
        return np.roots(c[::-1])
    if not np.all(np.isfinite(z)):
        return np.roots(c[::-1])
    return z


def reciprocal(poly, order: int) -> ComplexPolynomial:
    """Conjugate-reversed coefficients at the stated order: a*_k = conj(a_{order-k}).

    On the unit circle |g*(z)| = |g(z)|.
    """
    c = _coeffs(poly)
    deg = len(c) - 1
    while deg > 0 and c[deg] == 0:
        deg -= 1
    if order < deg:
        raise ValueError("order must be at least the degree")
    padded = np.zeros(order + 1, dtype=complex)
    padded[:len(c)] = c
    return ComplexPolynomial(tuple(np.conj(padded[::-1])))


def sum_with_unimodular(g, gamma: complex, tol: float = 1e-8) -> np.ndarray:
    """Roots of g + gamma * g* for |gamma| = 1; unimodular when g has no
    roots in the open unit disc."""
    if abs(abs(gamma) - 1.0) > 1e-10:
        raise ValueError("gamma must be unimodular")
    c = _coeffs(g)
    deg = len(c) - 1
    while deg > 0 and c[deg] == 0:
        deg -= 1
    c = c[:deg + 1]
    if deg == 0:
        return np.empty(0, dtype=complex)
    r = poly_roots(c)
    inside = bool(np.any(np.abs(r) < 1.0 - 1e-9))
    outside = bool(np.any(np.abs(r) > 1.0 + 1e-9))
    if inside and outside:
        raise ValueError(
            "g has roots on both sides of the unit circle; the sum "
            "g + gamma g* is only guaranteed unimodular for one-sided roots")
    rec = np.asarray(reciprocal(c, deg).coeffs)
    roots = poly_roots(c + gamma * rec)
    if roots.size and float(np.max(np.abs(np.abs(roots) - 1.0))) > tol:
        raise AssertionError("expected unimodular roots")
    return roots


def _alpha(cfg: CircleConfig) -> complex:
    """The square root of (-1)^n * prod conj(z_j) whose argument lies in [0, pi)."""
    alpha2 = (-1.0) ** cfg.n * np.prod(np.conj(cfg.points))
    a = cmath.sqrt(alpha2)  # principal: argument in (-pi/2, pi/2]
    if cmath.phase(a) < 0:
        a = -a
    return complex(a)


def fejer_numerator(cfg: CircleConfig) -> np.ndarray:
    """Coefficients of N(z) = -alpha^2 * z * sum_j z_j prod_{k!=j}(z-z_k)^2.

    On the unit circle N(e^{it}) = e^{int} * |prod_j (e^{it} - z_j)|^2 * G(t),
    so e^{-int} N is a nonnegative trigonometric polynomial and N admits a
    Fejer factorization g g* with deg g = n (recall g* = z^n conj(g) on T).
    """
    z = cfg.points
    n = cfg.n
    s = np.zeros(2 * n - 1, dtype=complex)
    for j in range(n):
        others = np.delete(z, j)
        pj = npoly.polyfromroots(others)
        term = z[j] * npoly.polymul(pj, pj)
        s[:len(term)] += term
    alpha = _alpha(cfg)
    num = np.zeros(2 * n, dtype=complex)
    num[1:] = -(alpha ** 2) * s
    return num


def _polish_factor(g: np.ndarray, num: np.ndarray, max_iter: int = 40) -> np.ndarray:
    """Gauss-Newton refinement of g g* = num over the coefficients of g.

    Near-circle roots of the numerator are nearly double and limit direct
    root extraction to ~sqrt(machine eps); they split into one simple root
    of g and one of g*, so this parametrization is well conditioned.
    """
    n = len(g) - 1
    target = np.zeros(2 * n + 1, dtype=complex)
    target[:len(num)] = num
    scale = float(np.max(np.abs(target)))

    def _pm(a, b):
        out = np.zeros(2 * n + 1, dtype=complex)
        m = npoly.polymul(a, b)
        out[:len(m)] = m
        return out

    def resid(gc):
        return _pm(gc, np.conj(gc[::-1])) - target

    r = resid(g)
    for _ in range(max_iter):
        err = float(np.max(np.abs(r)))
        if err < 1e-13 * scale:
            break
        gs = np.conj(g[::-1])
        cols = []
        for k in range(n + 1):
            e = np.zeros(n + 1, dtype=complex)
            e[k] = 1.0
            re_col = _pm(e, gs) + _pm(g, e[::-1].conj())
            e[k] = 1j
            im_col = _pm(e, gs) + _pm(g, e[::-1].conj())
            cols.append(re_col)
            cols.append(im_col)
        jac = np.column_stack([np.concatenate([c.real, c.imag]) for c in cols])
        rhs = -np.concatenate([r.real, r.imag])
        step, *_ = np.linalg.lstsq(jac, rhs, rcond=None)
        delta = step[0::2] + 1j * step[1::2]
        t = 1.0
        improved = False
        for _ in range(20):
            cand = g + t * delta
            rc = resid(cand)
            if float(np.max(np.abs(rc))) < err:
                g, r = cand, rc
                improved = True
                break
            t *= 0.5
        if not improved:
            break
    return g


def fejer_factorize(cfg: CircleConfig) -> ComplexPolynomial:
    """Fejer factor g: degree n, roots in the closed unit disc, g g* = N.

    The 2n root slots of the numerator pair up as (r, 1/conj(r)) with 0
    paired to infinity; the factor takes the representative inside the
    closed disc, splitting unit-circle roots evenly.  The leading
    coefficient's argument is frozen to that of alpha (the square root of
    (-1)^n prod conj(z_j) with argument in [0, pi)), which pins down the
    phase that the Phi step depends on.
    """
    n = cfg.n
    num = fejer_numerator(cfg)
    roots = poly_roots(num)
    btol = 1e-9
    inside = roots[np.abs(roots) < 1.0 - btol]
    boundary = roots[np.abs(np.abs(roots) - 1.0) <= btol]
    selected: Optional[np.ndarray] = None
    if len(boundary) % 2 == 0 and len(inside) + len(boundary) // 2 == n:
        onb = boundary[np.argsort(np.angle(boundary))]
        selected = np.concatenate([inside, onb[::2]])
    else:
        # clustered boundary pairs may straddle the tolerance; fall back to
        # the n smallest moduli and let the reconstruction check decide
        order = np.argsort(np.abs(roots))
        if len(roots) >= n:
            selected = roots[order[:n]]
    if selected is None or len(selected) != n:
        raise ArithmeticError(
            f"root pairing failed: {len(roots)} roots for 2n = {2 * n} slots")
    g0 = npoly.polyfromroots(selected)
    w = np.exp(1j * TWO_PI * np.arange(64) / 64.0)
    g0v = npoly.polyval(w, g0)
    g0sv = npoly.polyval(w, np.asarray(reciprocal(g0, n).coeffs))
    nv = npoly.polyval(w, num)
    denom = g0v * g0sv
    k = int(np.argmax(np.abs(denom)))
    c2 = nv[k] / denom[k]
    if not (c2.real > 0 and abs(c2.imag) <= 1e-6 * abs(c2)):
        raise ArithmeticError(f"factor magnitude ill-defined: c^2 = {c2}")
    alpha = _alpha(cfg)
    c = math.sqrt(c2.real) * alpha
    gc = _polish_factor(c * g0, num)
    # re-pin the phase convention after polishing
    lead = gc[-1]
    if abs(lead) > 0:
        gc = gc * cmath.exp(1j * (cmath.phase(alpha) - cmath.phase(lead)))
    g = ComplexPolynomial(tuple(gc))
    gv = npoly.polyval(w, np.asarray(g.coeffs))
    gsv = npoly.polyval(w, np.asarray(reciprocal(g, n).coeffs))
    resid = float(np.max(np.abs(gv * gsv - nv))) / max(1.0, float(np.max(np.abs(nv))))
    if resid > 1e-7:
        raise ArithmeticError(f"factorization residual {resid:.3e} exceeds 1e-7")
    return g


def phi_iterate(cfg: CircleConfig, tol: float = 1e-8) -> CircleConfig:
    """One improvement step: the configuration of unimodular roots of g + g*."""
    a = np.sort(np.mod(np.asarray(cfg.angles), TWO_PI))
    gaps = np.diff(np.append(a, a[0] + TWO_PI))
    if cfg.n > 1 and float(np.min(gaps)) < 1e-12:
        raise ValueError("Phi is undefined for coincident configuration points")
    g = fejer_factorize(cfg)
    n = cfg.n
    h = np.asarray(g.coeffs) + np.asarray(reciprocal(g, n).coeffs)
    roots = poly_roots(h)
    if len(roots) != n:
        raise ArithmeticError("g + g* degenerated below degree n")
    if float(np.max(np.abs(np.abs(roots) - 1.0))) > tol:
        raise ArithmeticError("Phi produced a root off the unit circle")
    return CircleConfig(tuple(sorted(np.mod(np.angle(roots), TWO_PI))))


def derivative_shift_roots(g, tol: float = 1e-8) -> np.ndarray:
    """Roots of h(z) = z g'(z) - (n/2) g(z) for g with all roots on the circle.

    These are the critical points of |g| along the circle; they stay
    unimodular.
    """
    c = _coeffs(g)
    deg = len(c) - 1
    while deg > 0 and c[deg] == 0:
        deg -= 1
    c = c[:deg + 1]
    if deg < 1:
        raise ValueError("g must have degree at least 1")
    r = poly_roots(c)
    # near-coincident circle roots are only recovered to ~sqrt(eps)
    if float(np.max(np.abs(np.abs(r) - 1.0))) > 1e-6:
        raise ValueError("g must have all roots on the unit circle")
    k = np.arange(deg + 1)
    h = (k - deg / 2.0) * c
    roots = poly_roots(h)
    if roots.size:
        # Newton polish; h's roots are simple critical points of |g|
        dh = h[1:] * np.arange(1, len(h))
        for _ in range(3):
            hv = npoly.polyval(roots, h)
            dv = npoly.polyval(roots, dh)
            ok = np.abs(dv) > 1e-300
            roots[ok] -= hv[ok] / dv[ok]
    if roots.size and float(np.max(np.abs(np.abs(roots) - 1.0))) > tol:
        raise AssertionError("expected unimodular roots")
    return roots


def chebyshev_sup(cfg: CircleConfig) -> float:
    """max over the circle of prod |z - z_j|; always at least 2."""
    n = cfg.n
    grid = 4096 + 512 * n
    t = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    d2 = 4.0 * np.sin((t[:, None] - np.asarray(cfg.angles)[None, :]) / 2.0) ** 2
    with np.errstate(divide="ignore"):
        f = 0.5 * np.sum(np.log(np.maximum(d2, 1e-300)), axis=1)
    k = int(np.argmax(f))
    step = TWO_PI / grid
    lo, hi = t[k] - step, t[k] + step

    def val(x):
        dd = 4.0 * np.sin((x - np.asarray(cfg.angles)) / 2.0) ** 2
        return 0.5 * float(np.sum(np.log(np.maximum(dd, 1e-300))))

    for _ in range(120):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if val(m1) > val(m2):
            hi = m2
        else:
            lo = m1
    return math.exp(val(0.5 * (lo + hi)))


def cosform_residual(n: int, t: float) -> float:
    """|sum_j 1/sin^2(t/2 - j pi/n)  -  2 n^2 / (1 - cos n t)|."""
    if n < 1:
        raise ValueError("n must be positive")
    if abs(math.sin(n * t / 2.0)) < 1e-9:
        raise ValueError("t is a pole of the identity")
    j = np.arange(1, n + 1)
    lhs = float(np.sum(1.0 / np.sin(t / 2.0 - j * math.pi / n) ** 2))
    rhs = 2.0 * n * n / (1.0 - math.cos(n * t))
    return abs(lhs - rhs)


def riesz_node_sum(n: int) -> float:
    """sum_j 1/sin^2(j pi/n - pi/(2n)); equals n^2."""
    if n < 1:
        raise ValueError("n must be positive")
    j = np.arange(1, n + 1)
    return float(np.sum(1.0 / np.sin(j * math.pi / n - math.pi / (2 * n)) ** 2))


def equioscillation_order(values: Sequence[float], tolerance: float) -> int:
    """Half the number of cyclic alternations hitting +/- max|f|.

    ``values`` must sample the function on a uniform circular grid with
    at least 64 points per detected oscillation.
    """
    v = np.asarray(values, dtype=float)
    if v.size < 2:
        raise ValueError("need a sampled function")
    norm = float(np.max(np.abs(v)))
    if norm == 0.0:
        return 0
    labels = np.zeros(v.size, dtype=int)
    labels[v >= norm - tolerance] = 1
    labels[v <= -norm + tolerance] = -1
    runs: List[int] = []
    for s in labels:
        if s != 0 and (not runs or runs[-1] != s):
            runs.append(int(s))
    if len(runs) >= 2 and runs[0] == runs[-1]:
        runs.pop()
    if len(runs) <= 1:
        return 0
    order, rem = divmod(len(runs), 2)
    if rem:
        # odd alternation count around a cycle cannot happen for a clean
        # pattern; count the completed pairs
        order = (len(runs) - 1) // 2
    if v.size < 64 * order:
        raise ValueError("sampling too sparse for the detected order")
    return order
