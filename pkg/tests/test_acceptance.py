"""Acceptance suite: one test per release gate, named and ordered.

Each test asserts the documented tolerance; reported-only quantities
(conjecture scans, iteration monotonicity) are printed, never asserted.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from polychain import chains, circle, geometry, gram, harness

SQRT2 = math.sqrt(2.0)


def test_criterion_01_convex_position_probability():
    # P(k uniform points form a convex chain) = 2^k / (k! (k+1)!)
    for k in (2, 3, 4):
        expected = 2.0 ** k / (math.factorial(k) * math.factorial(k + 1))
        p, se = harness.convex_position_probability(k, 1_000_000, seed=k)
        assert abs(p - expected) <= 3.0 * se, (k, p, expected, se)


def test_criterion_02_table_reproduction(batch_1000, batch_10k):
    _, rec1 = batch_1000
    s1 = harness.summarize(rec1, n=1000)
    assert 2.45 <= s1.normalized_mean <= 2.61, s1
    _, rec2 = batch_10k
    s2 = harness.summarize(rec2, n=10_000)
    assert 2.67 <= s2.normalized_mean <= 2.87, s2


def test_criterion_03_oracle_equivalence():
    for i in range(1000):
        sample = harness.sample_uniform(12, harness.mix_seed(97, i))
        exact = chains.longest_chain_exact(sample).length
        brute = chains.brute_force_chain(sample).length
        assert exact == brute, (i, exact, brute)


def test_criterion_04_concentration(batch_10k):
    _, records = batch_10k
    s = harness.summarize(records, n=10_000)
    assert s.d_n <= 8, s
    assert 0.8 <= s.stddev_L <= 2.2, s


def test_criterion_05_limit_shape_trend(batch_1000, batch_10k, batch_100k):
    medians = []
    for _, records in (batch_1000, batch_10k, batch_100k):
        good = [r.dist_to_gamma for r in records if not r.failed]
        assert good
        medians.append(float(np.median(good)))
    assert medians[0] > medians[1] > medians[2], medians


def test_criterion_06_planar_polarization_bound():
    rng = np.random.default_rng(61)
    per_n = 10_000 // 15
    for n in range(2, 17):
        sets = rng.uniform(0.0, 2.0 * math.pi, (per_n, n))
        ms = circle.minimize_many(sets)
        assert float(np.max(ms - n * n / 4.0)) <= 1e-9, n
        rotated = circle.uniform_config(n, rotation=rng.uniform(0, 1))
        m = circle.minimize_on_circle(rotated).M
        assert abs(m - n * n / 4.0) <= 1e-8, (n, m)


def test_criterion_07_identity_suite():
    rng = np.random.default_rng(71)
    # cosine-sum identity, relative
    for n in range(1, 65):
        for t in rng.uniform(0.0, 2.0 * math.pi, 100):
            if abs(math.sin(n * t / 2.0)) < 1e-6:
                continue
            ref = 2.0 * n * n / (1.0 - math.cos(n * t))
            assert circle.cosform_residual(n, float(t)) / ref < 1e-8, (n, t)
    # quadratic node sum
    for n in range(1, 101):
        assert abs(circle.riesz_node_sum(n) - n * n) / (n * n) < 1e-6, n
    # affine perimeter is exactly 2 * cbrt(1/2) for every partition size
    target = 2.0 * (0.5) ** (1.0 / 3.0)
    for m in range(2, 40):
        ps = np.linspace(0.0, 1.0, m)
        assert abs(geometry.affine_perimeter(ps) - target) < 1e-10, m
        tris = geometry.equal_area_subdivision(0.5 / m ** 3)
        assert len(tris) >= m
        cbrt_sum = sum(tri.area ** (1.0 / 3.0) for tri in tris)
        assert abs(2.0 * cbrt_sum - target) < 1e-10, m
    # deficiency lower bound on a million random triples
    a, b, c = rng.random((3, 1_000_000))
    slack = geometry.mobius_deficiency(a, b, c) - (a - b) ** 2 / 3.0
    assert float(slack.min()) >= -1e-12


def test_criterion_08_root_locations():
    rng = np.random.default_rng(81)
    for _ in range(1000):
        n = int(rng.integers(1, 13))
        g = np.polynomial.polynomial.polyfromroots(
            np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, n)))
        roots = circle.derivative_shift_roots(g)
        if roots.size:
            assert float(np.max(np.abs(np.abs(roots) - 1.0))) <= 1e-8
    for _ in range(1000):
        n = int(rng.integers(1, 13))
        # roots inside the closed disc: the sum with gamma*g* is unimodular
        radii = rng.uniform(0.0, 1.0, n)
        g = np.polynomial.polynomial.polyfromroots(
            radii * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, n)))
        gamma = complex(np.exp(1j * rng.uniform(0.0, 2.0 * math.pi)))
        roots = circle.sum_with_unimodular(g, gamma)
        if roots.size:
            assert float(np.max(np.abs(np.abs(roots) - 1.0))) <= 1e-8


def test_criterion_09_phi_fixed_points_and_reported_monotonicity(capsys):
    for n in range(2, 17):
        cfg = circle.uniform_config(n, rotation=0.321 * n)
        nxt = circle.phi_iterate(cfg)
        a = np.sort(np.mod(cfg.angles, 2.0 * math.pi))
        b = np.sort(np.mod(nxt.angles, 2.0 * math.pi))
        d = np.abs(a - b)
        assert float(np.max(np.minimum(d, 2.0 * math.pi - d))) <= 1e-8, n
    # monotonicity of M under the iteration: reported, not asserted
    rng = np.random.default_rng(91)
    monotone = skipped = 0
    total = 1000
    for _ in range(total):
        n = int(rng.integers(2, 9))
        cfg = circle.CircleConfig(
            tuple(np.sort(rng.uniform(0.0, 2.0 * math.pi, n))))
        m0 = circle.minimize_on_circle(cfg).M
        try:
            m1 = circle.minimize_on_circle(circle.phi_iterate(cfg)).M
        except (ValueError, ArithmeticError):
            skipped += 1
            continue
        if m1 >= m0 - 1e-9:
            monotone += 1
    with capsys.disabled():
        print(f"\n[report] Phi monotonicity: {monotone}/{total - skipped} "
              f"monotone ({skipped} skipped)", file=sys.stderr)


def test_criterion_10_inverse_eigenvectors():
    rng = np.random.default_rng(101)
    for _ in range(200):
        n = int(rng.integers(2, 9))
        d = int(rng.integers(2, n + 1))
        u = rng.normal(size=(d, n))
        u /= np.linalg.norm(u, axis=0)
        gd = gram.gram(gram.UnitVectorSystem(u))
        signs = tuple(int(s) for s in rng.choice([-1, 1], size=n))
        sol = gram.inverse_eigenvector_in_quadrant(gd, signs)
        if sol.present:
            assert sol.residual < 1e-9
    # closed form for two unit vectors at angle t
    for t in np.linspace(0.1, math.pi - 0.1, 25):
        c = math.cos(t)
        sys2 = gram.UnitVectorSystem(
            np.array([[1.0, c], [0.0, math.sin(t)]]))
        sol = gram.inverse_eigenvector_in_quadrant(gram.gram(sys2), (1, 1))
        expect = 1.0 / math.sqrt(1.0 + c)
        assert max(abs(a - expect) for a in sol.alpha) < 1e-9, t
        assert abs(sol.norm_sq - 2.0 / (1.0 + c)) < 1e-9, t
    # orthonormal system: alpha = signs, min norm is exactly n
    rep = gram.conjecture_scan(gram.UnitVectorSystem(np.eye(6)))
    assert rep.min_norm_sq == pytest.approx(6.0, abs=1e-12)
    assert not rep.eigenball_violated and not rep.eigenhyper_violated


def test_criterion_11_fv_max_lower_bound():
    rng = np.random.default_rng(111)
    for _ in range(500):
        n = int(rng.integers(2, 9))
        v = rng.normal(size=n)
        v -= v.mean()
        nrm = float(v @ v)
        if nrm < 1e-12:
            continue
        v *= math.sqrt(n * (n - 1) / nrm)
        assert gram.fv_max(v) >= 1.0 - 1e-9


def test_criterion_12_byte_determinism(tmp_path):
    def run(tag, workers):
        csv = tmp_path / f"{tag}.csv"
        jsonl = tmp_path / f"{tag}.jsonl"
        subprocess.run(
            [sys.executable, "-m", "polychain.cli", "chains", "run",
             "--n", "300", "--samples", "4", "--seed", "7",
             "--workers", str(workers),
             "--out", str(csv), "--records", str(jsonl)],
            check=True)
        return csv.read_bytes(), jsonl.read_bytes()

    a = run("a", 1)
    b = run("b", 1)
    c = run("c", 3)
    assert a == b == c
    # sanity: the records really carry payload
    lines = a[1].decode().strip().splitlines()
    assert len(lines) == 4
    assert json.loads(lines[0])["L"] > 0
