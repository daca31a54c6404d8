"""Inverse eigenvectors of Gram matrices and polarization scans.

An inverse eigenvector of a symmetric PSD matrix M is a vector alpha
with M alpha = alpha^(-1) (coordinatewise reciprocals).  For the Gram
matrix of unit vectors u_1..u_n, each open orthant of R^n that does not
meet ker M contains exactly one inverse eigenvector: the maximizer of
prod |x_i| on the ellipsoid {x^T M x = n} restricted to the orthant.
The vector v = sum alpha_i u_i then satisfies ||v||^2 = n and the
stationarity identity v = sum u_i / <u_i, v>.

The open conjectures (existence of alpha with sum alpha_i^2 <= n, with
|prod alpha_i| <= 1, and the n^(-n/2) product bound on the sphere) are
scanned and reported with witnesses, never asserted.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import fsolve, linprog


@dataclass(frozen=True)
class UnitVectorSystem:
    """n unit vectors as columns of a d x n matrix."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vectors, dtype=float))
        norms = np.linalg.norm(v, axis=0)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ValueError("all columns must be unit vectors")
        object.__setattr__(self, "vectors", v)

    @property
    def d(self) -> int:
        return self.vectors.shape[0]

    @property
    def n(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class GramData:
    """Symmetric PSD matrix with its eigen-threshold rank and kernel basis."""

    M: np.ndarray
    rank: int
    kernel: np.ndarray  # (n, k) orthonormal kernel basis, k may be 0

    @property
    def n(self) -> int:
        return self.M.shape[0]


@dataclass(frozen=True)
class QuadrantSolution:
    signs: Tuple[int, ...]
    alpha: Optional[Tuple[float, ...]]
    product: Optional[float]
    norm_sq: Optional[float]
    residual: Optional[float]

    @property
    def present(self) -> bool:
        return self.alpha is not None


def gram_from_matrix(M: np.ndarray) -> GramData:
    """GramData for an arbitrary symmetric PSD matrix."""
    M = 0.5 * (np.asarray(M, dtype=float) + np.asarray(M, dtype=float).T)
    w, q = np.linalg.eigh(M)
    if w.min() < -1e-10 * max(1.0, float(w.max())):
        raise ValueError("matrix is not positive semidefinite")
    thresh = 1e-9 * max(float(w.max()), 1e-30)
    keep = w > thresh
    rank = int(keep.sum())
    kernel = q[:, ~keep]
    return GramData(M=M, rank=rank, kernel=kernel)


def gram(system: UnitVectorSystem) -> GramData:
    """Gram matrix of the system; PSD with unit diagonal."""
    v = system.vectors
    gd = gram_from_matrix(v.T @ v)
    if np.any(np.abs(np.diag(gd.M) - 1.0) > 1e-10):
        raise ValueError("Gram diagonal should be all ones")
    return gd


def quadrant_meets_kernel(gd: GramData, signs: Sequence[int]) -> bool:
    """True iff ker M contains a nonzero vector of the closed quadrant.

    Along such a kernel direction the coordinate product grows without
    bound on the (degenerate) ellipsoid, so the quadrant carries no
    inverse eigenvector.  Feasibility of sign_i * (K c)_i >= 0 with
    sum_i sign_i * (K c)_i >= 1 over kernel coordinates c; homogeneity
    makes the unit margin harmless.
    """
    k = gd.kernel.shape[1]
    if k == 0:
        return False
    s = np.asarray(signs, dtype=float)
    rows = -(s[:, None] * gd.kernel)
    a_ub = np.vstack([rows, rows.sum(axis=0)])
    b_ub = np.concatenate([np.zeros(gd.n), [-1.0]])
    res = linprog(c=np.zeros(k), A_ub=a_ub, b_ub=b_ub,
                  bounds=[(None, None)] * k, method="highs")
    return bool(res.status == 0)


def _newton_solve(M: np.ndarray, sv: np.ndarray, x0: np.ndarray,
                  tol: float, max_steps: int = 80) -> Optional[np.ndarray]:
    """Undamped Newton on x*(Mx) - 1 = 0 from x0.

    The iteration may leave the quadrant on the way; the result is
    accepted only if it converges to an in-quadrant solution.
    """
    x = x0.copy()
    for _ in range(max_steps):
        mx = M @ x
        f = x * mx - 1.0
        if float(np.max(np.abs(f))) < 1e-12:
            break
        jac = np.diag(mx) + x[:, None] * M
        try:
            dx = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(dx)):
            return None
        x = x + dx
    if np.any(x == 0) or not np.all(np.isfinite(x)):
        return None
    if np.all(x * sv > 0) and \
            float(np.max(np.abs(M @ x - 1.0 / x))) < tol:
        return x
    return None


def _hybrid_solve(M: np.ndarray, sv: np.ndarray, x0: np.ndarray,
                  tol: float) -> Optional[np.ndarray]:
    """Powell-hybrid solve of x*(Mx) = 1 from x0; in-quadrant result only."""
    x, _, ier, _ = fsolve(lambda z: z * (M @ z) - 1.0, x0, full_output=True,
                          xtol=1e-13)
    if ier == 1 and np.all(x * sv > 0) and \
            float(np.max(np.abs(M @ x - 1.0 / x))) < tol:
        return x
    return None


def inverse_eigenvector_in_quadrant(gd: GramData, signs: Sequence[int],
                                    x0: Optional[np.ndarray] = None,
                                    max_iter: int = 200_000,
                                    tol: float = 1e-9) -> QuadrantSolution:
    """The unique inverse eigenvector with the given sign pattern, if any.

    Quadrants meeting ker M carry no solution (the objective is unbounded
    toward the kernel); otherwise prod|x_i| has a unique maximum on the
    ellipsoid slice, characterized exactly by M x = x^(-1).  We run a
    projected log-product ascent and periodically attempt a full Newton
    solve of F(x) = x * (M x) - 1 from the current iterate, accepting it
    only when it converges to an in-quadrant solution.  (The Newton
    attempts matter: when the kernel passes close to the quadrant the
    maximizer sits far out in a thin channel and the ascent alone crawls.)
    """
    s = tuple(int(v) for v in signs)
    if any(v not in (-1, 1) for v in s):
        raise ValueError("signs must be +-1")
    n = gd.n
    if len(s) != n:
        raise ValueError("sign vector has wrong length")
    if quadrant_meets_kernel(gd, s):
        return QuadrantSolution(s, None, None, None, None)
    M = gd.M
    sv = np.asarray(s, dtype=float)
    if x0 is None:
        x = sv.copy()
    else:
        x = np.asarray(x0, dtype=float).copy()
        if np.any(x * sv <= 0):
            raise ValueError("start point must lie in the open quadrant")
    x *= math.sqrt(n / float(x @ M @ x))
    step = 0.1
    resid = np.inf
    for it in range(max_iter):
        mx = M @ x
        resid = float(np.max(np.abs(mx - 1.0 / x)))
        if resid < tol:
            break
        # Newton attempts at powers of two (cheap early, rare later)
        if resid < 1e-2 or it & (it - 1) == 0:
            refined = _newton_solve(M, sv, x, tol)
            if refined is not None:
                x = refined
                mx = M @ x
                resid = float(np.max(np.abs(mx - 1.0 / x)))
                break
        # ascent step on sum log|x_i| with ellipsoid rescaling; the raw
        # gradient 1/x can be radial, so project onto the tangent space
        g = 1.0 / x
        nrm = mx / max(float(mx @ mx), 1e-300)
        g = g - float(g @ mx) * nrm
        if float(np.max(np.abs(g))) < 1e-16:
            g = 1.0 / x
        obj = float(np.sum(np.log(np.abs(x))))
        improved = False
        t = step
        for _ in range(60):
            cand = x + t * g
            if np.all(cand * sv > 0):
                cand = cand * math.sqrt(n / float(cand @ M @ cand))
                if float(np.sum(np.log(np.abs(cand)))) > obj:
                    x = cand
                    step = min(t * 1.5, 1.0)
                    improved = True
                    break
            t *= 0.5
        if not improved:
            step = max(step * 0.5, 1e-18)
            if step <= 1e-17:
                break  # ascent has stalled; fall through to the final solve
    if resid >= tol:
        refined = _hybrid_solve(M, sv, x, tol)
        if refined is not None:
            x = refined
        mx = M @ x
        resid = float(np.max(np.abs(mx - 1.0 / x)))
    if resid >= tol:
        raise ArithmeticError(
            f"quadrant solver failed to converge (residual {resid:.3e})")
    return QuadrantSolution(
        s, tuple(x), float(np.prod(x)), float(np.sum(x * x)), resid)


def all_inverse_eigenvectors(gd: GramData) -> List[QuadrantSolution]:
    """One QuadrantSolution per sign pattern (2^n of them, n <= 16).

    Solutions come in antipodal pairs, so only half the quadrants are
    solved directly and the rest are mirrored.
    """
    n = gd.n
    if n > 16:
        raise ValueError("quadrant enumeration limited to n <= 16")
    solutions: dict = {}
    for bits in range(1 << n):
        signs = tuple(1 if (bits >> j) & 1 == 0 else -1 for j in range(n))
        if signs in solutions:
            continue
        sol = inverse_eigenvector_in_quadrant(gd, signs)
        solutions[signs] = sol
        mirror = tuple(-v for v in signs)
        if sol.present:
            solutions[mirror] = QuadrantSolution(
                mirror, tuple(-a for a in sol.alpha),
                sol.product * (-1.0) ** n, sol.norm_sq, sol.residual)
        else:
            solutions[mirror] = QuadrantSolution(mirror, None, None, None, None)
    out = []
    for bits in range(1 << n):
        signs = tuple(1 if (bits >> j) & 1 == 0 else -1 for j in range(n))
        out.append(solutions[signs])
    return out


@dataclass(frozen=True)
class ScanReport:
    solutions: Tuple[QuadrantSolution, ...]
    min_norm_sq: float
    min_abs_product: float
    max_abs_product: float
    eigenball_violated: bool      # no alpha with sum alpha_i^2 <= n found
    eigenhyper_violated: bool     # no alpha with |prod alpha_i| <= 1 found
    witness_alpha: Tuple[float, ...]
    witness_v: Tuple[float, ...]
    veq_residual: float


def conjecture_scan(system: UnitVectorSystem) -> ScanReport:
    """Per-quadrant inverse-eigenvector table with conjecture flags.

    Flags record *violations* of the conjectured bounds min sum alpha^2 <= n
    and min |prod alpha| <= 1; they are reported, not asserted.  The witness
    is the norm-minimizing alpha together with v = sum alpha_i u_i and the
    residual of the stationarity identity v = sum u_i / <u_i, v>.
    """
    if system.n > 12:
        raise ValueError("conjecture scan limited to n <= 12")
    gd = gram(system)
    sols = all_inverse_eigenvectors(gd)
    present = [s for s in sols if s.present]
    if not present:
        raise ArithmeticError("no inverse eigenvectors found")
    min_norm = min(s.norm_sq for s in present)
    prods = [abs(s.product) for s in present]
    witness = min(present, key=lambda s: s.norm_sq)
    alpha = np.asarray(witness.alpha)
    v = system.vectors @ alpha
    resid = stationary_residual(system, v)
    n = system.n
    return ScanReport(
        solutions=tuple(sols),
        min_norm_sq=float(min_norm),
        min_abs_product=float(min(prods)),
        max_abs_product=float(max(prods)),
        eigenball_violated=bool(min_norm > n + 1e-9),
        eigenhyper_violated=bool(min(prods) > 1.0 + 1e-9),
        witness_alpha=tuple(alpha),
        witness_v=tuple(v),
        veq_residual=float(resid),
    )


def stationary_residual(system: UnitVectorSystem, v: np.ndarray) -> float:
    """|| v - sum_i u_i / <u_i, v> || for v on the radius-sqrt(n) sphere."""
    v = np.asarray(v, dtype=float)
    n = system.n
    if abs(float(v @ v) - n) > 1e-6:
        raise ValueError("v must satisfy ||v||^2 = n")
    dots = system.vectors.T @ v
    if np.any(np.abs(dots) < 1e-14):
        raise ValueError("v is orthogonal to one of the unit vectors")
    return float(np.linalg.norm(v - system.vectors @ (1.0 / dots)))


@dataclass(frozen=True)
class ProductMaxResult:
    value: float
    v: Tuple[float, ...]
    below_bound: bool  # value < n^(-n/2), a would-be conjecture violation


def product_max_on_sphere(system: UnitVectorSystem, restarts: int = 8,
                          seed: int = 0, max_iter: int = 2000) -> ProductMaxResult:
    """Multi-start projected ascent of prod |<u_i, v>| over the unit sphere.

    The conjectured bound is n^(-n/2); results below it are flagged in
    the report, never asserted against.
    """
    if restarts < 1:
        raise ValueError("need at least one restart")
    u = system.vectors
    d, n = u.shape
    rng = np.random.default_rng(seed)
    best_val = -np.inf
    best_v = None
    for _ in range(restarts):
        v = rng.normal(size=d)
        v /= np.linalg.norm(v)
        step = 0.1
        for _ in range(max_iter):
            dots = u.T @ v
            if np.any(np.abs(dots) < 1e-300):
                v = v + 1e-8 * rng.normal(size=d)
                v /= np.linalg.norm(v)
                continue
            grad = u @ (1.0 / dots)
            tang = grad - (grad @ v) * v
            if float(np.linalg.norm(tang)) < 1e-12:
                break
            obj = float(np.sum(np.log(np.abs(dots))))
            moved = False
            t = step
            for _ in range(50):
                cand = v + t * tang
                cand /= np.linalg.norm(cand)
                cd = u.T @ cand
                if np.all(np.abs(cd) > 0) and \
                        float(np.sum(np.log(np.abs(cd)))) > obj:
                    v = cand
                    step = min(t * 1.5, 1.0)
                    moved = True
                    break
                t *= 0.5
            if not moved:
                break
        val = float(np.prod(np.abs(u.T @ v)))
        if val > best_val:
            best_val = val
            best_v = v
    bound = n ** (-n / 2.0)
    return ProductMaxResult(best_val, tuple(best_v),
                            bool(best_val < bound * (1.0 - 1e-9)))


def fv_max(v: Sequence[float]) -> float:
    """max over phi of |prod_i (v_i sin phi + cos phi)| for admissible v.

    Admissible means sum v_i = 0 and ||v||^2 = n(n-1); the maximum is
    always at least 1 (the planar strong-polarization bound).
    """
    v = np.asarray(v, dtype=float)
    n = v.size
    if abs(float(v.sum())) > 1e-10:
        raise ValueError("coordinates of v must sum to zero")
    if abs(float(v @ v) - n * (n - 1)) > 1e-9:
        raise ValueError("v must satisfy ||v||^2 = n(n-1)")
    grid = 4096 * max(1, n)
    phi = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    vals = np.abs(np.prod(v[None, :] * np.sin(phi)[:, None]
                          + np.cos(phi)[:, None], axis=1))
    k = int(np.argmax(vals))
    step = 2.0 * math.pi / grid
    lo, hi = phi[k] - step, phi[k] + step

    def f(x):
        return abs(float(np.prod(v * math.sin(x) + math.cos(x))))

    for _ in range(100):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if f(m1) > f(m2):
            hi = m2
        else:
            lo = m1
    return f(0.5 * (lo + hi))


@dataclass(frozen=True)
class GeneralizedInverse:
    """Eigen-decomposition inverse with kernel directions marked infinite."""

    eigvecs: np.ndarray
    eigvals: np.ndarray
    inv_eigvals: np.ndarray  # +inf on kernel directions
    pinv: np.ndarray         # Moore-Penrose action on the image

    @property
    def infinite_directions(self) -> np.ndarray:
        return self.eigvecs[:, np.isinf(self.inv_eigvals)]


def generalized_inverse(gd: GramData) -> GeneralizedInverse:
    """Inverse on the image of M; kernel eigdirections get 1/0 = inf."""
    w, q = np.linalg.eigh(gd.M)
    thresh = 1e-9 * max(float(w.max()), 1e-30)
    inv = np.where(w > thresh, 1.0 / np.where(w > thresh, w, 1.0), np.inf)
    finite = np.where(np.isinf(inv), 0.0, inv)
    pinv = (q * finite) @ q.T
    return GeneralizedInverse(q, w, inv, pinv)
