"""Command-line front end.

Subcommands:
  chains run    -- one Monte Carlo batch of longest-chain experiments
  chains table  -- several batches from a row-spec file, summary CSV
  polar circle  -- Phi improvement iteration trajectory on the circle
  polar gram    -- inverse-eigenvector quadrant scan of a vector system
  verify        -- closed-form identity and oracle suites

Exit codes: 0 success, 1 runtime/assertion failure, 2 usage error.
All persisted outputs are deterministic functions of the flags and seeds
(wall-clock columns are zeroed unless --timing is given), so reruns are
byte-identical regardless of the worker count.  The POLYCHAIN_THREADS
environment variable overrides --workers.

Config files are flat "key = value" text; angles are given in turns
(fractions of a full circle).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import IO, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import chains, circle, geometry, gram, harness

TWO_PI = 2.0 * math.pi


def _parse_width(text: str) -> Union[float, str]:
    if text in ("auto", "exact"):
        return text
    return float(text)


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def _write(path: Optional[str], text: str) -> None:
    fh, close = _open_out(path)
    try:
        fh.write(text)
    finally:
        if close:
            fh.close()


# --- chains -------------------------------------------------------------

def cmd_chains_run(args) -> int:
    cfg = harness.ExperimentConfig(
        n=args.n, samples=args.samples, model=args.model,
        width=_parse_width(args.width), master_seed=args.seed,
        workers=args.workers)
    t0 = time.perf_counter()
    records = harness.run_experiment(cfg)
    wall = time.perf_counter() - t0 if args.timing else 0.0
    csv = harness.CSV_HEADER + "\n" + harness.summary_csv_row(cfg, records, wall) + "\n"
    _write(args.out, csv)
    if args.records:
        with open(args.records, "w") as fh:
            harness.write_records_jsonl(records, fh, timing=args.timing)
    return 0


def _parse_table_spec(path: str) -> List[Tuple[int, int, Union[float, str]]]:
    rows = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" in line:
                key, _, val = line.partition("=")
                if key.strip() != "row":
                    raise ValueError(f"unknown key {key.strip()!r} in table spec")
                line = val.strip()
            parts = line.replace(",", " ").split()
            if len(parts) != 3:
                raise ValueError(f"table row needs 'n samples width': {raw!r}")
            rows.append((int(parts[0]), int(parts[1]), _parse_width(parts[2])))
    if not rows:
        raise ValueError("table spec contains no rows")
    return rows


def cmd_chains_table(args) -> int:
    rows = _parse_table_spec(args.spec)
    lines = harness.reproduce_table(rows, master_seed=args.seed,
                                    workers=args.workers, timing=args.timing)
    _write(args.out, "\n".join(lines) + "\n")
    return 0


# --- polar --------------------------------------------------------------

def _parse_angles_file(path: str) -> List[float]:
    turns = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" in line:
                line = line.partition("=")[2].strip()
            turns.append(float(line))
    if not turns:
        raise ValueError("no angles in config file")
    return turns


def cmd_polar_circle(args) -> int:
    if args.uniform is not None:
        cfg = circle.uniform_config(args.uniform)
    else:
        turns = _parse_angles_file(args.angles)
        cfg = circle.CircleConfig(tuple((t % 1.0) * TWO_PI for t in turns))
    n = cfg.n
    header = "step," + ",".join(f"angle_{j}" for j in range(n)) + ",M"
    lines = [header]
    cur = circle.CircleConfig(tuple(sorted(a % TWO_PI for a in cfg.angles)))
    for step in range(args.phi_steps + 1):
        m = circle.minimize_on_circle(cur).M
        cols = [str(step)] + [harness.fmt(a / TWO_PI) for a in cur.angles] + \
               [harness.fmt(float(m))]
        lines.append(",".join(cols))
        if step == args.phi_steps:
            break
        nxt = circle.phi_iterate(cur)
        delta = _config_distance(cur, nxt)
        cur = nxt
        if delta < 1e-9:
            m = circle.minimize_on_circle(cur).M
            lines.append(",".join(
                [str(step + 1)] + [harness.fmt(a / TWO_PI) for a in cur.angles]
                + [harness.fmt(float(m))]))
            break
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def _config_distance(a: circle.CircleConfig, b: circle.CircleConfig) -> float:
    """Max circular distance between sorted angle vectors, mod rotation of index."""
    x = np.sort(np.mod(a.angles, TWO_PI))
    y = np.sort(np.mod(b.angles, TWO_PI))
    d = np.abs(x - y)
    return float(np.max(np.minimum(d, TWO_PI - d)))


def cmd_polar_gram(args) -> int:
    try:
        mat = np.loadtxt(args.vectors, delimiter=",", ndmin=2)
        norms = np.linalg.norm(mat, axis=0)
        if np.any(norms == 0) or np.any(np.abs(norms - 1.0) > 1e-9):
            raise ValueError("vector CSV columns must be unit vectors")
        system = gram.UnitVectorSystem(mat / norms)
    except (ValueError, OSError) as exc:
        print(f"error: bad vector CSV: {exc}", file=sys.stderr)
        return 2
    report = gram.conjecture_scan(system)
    lines = []
    for sol in report.solutions:
        obj = {
            "signs": list(sol.signs),
            "present": sol.present,
            "alpha": list(sol.alpha) if sol.present else None,
            "product": sol.product,
            "norm_sq": sol.norm_sq,
            "residual": sol.residual,
        }
        lines.append(json.dumps(obj))
    summary = {
        "summary": True,
        "n": system.n,
        "min_norm_sq": report.min_norm_sq,
        "min_abs_product": report.min_abs_product,
        "max_abs_product": report.max_abs_product,
        "eigenball_violated": report.eigenball_violated,
        "eigenhyper_violated": report.eigenhyper_violated,
        "veq_residual": report.veq_residual,
    }
    lines.append(json.dumps(summary))
    _write(args.out, "\n".join(lines) + "\n")
    return 0


# --- verify -------------------------------------------------------------

def verification_suites(rng_seed: int = 12345):
    """Run the identity/oracle suites; yields (name, passed, max_residual)."""
    results = []
    rng = np.random.default_rng(rng_seed)

    # cosine-sum identity
    worst = 0.0
    for n in (1, 2, 3, 5, 8, 16, 32, 64):
        for t in rng.uniform(0.05, TWO_PI - 0.05, 25):
            if abs(math.sin(n * t / 2.0)) < 1e-6:
                continue
            rel = circle.cosform_residual(n, float(t)) / (
                2.0 * n * n / (1.0 - math.cos(n * t)))
            worst = max(worst, rel)
    results.append(("cosine-sum identity", worst < 1e-8, worst))

    # Riesz node sum
    worst = max(abs(circle.riesz_node_sum(n) - n * n) / (n * n)
                for n in range(1, 101))
    results.append(("riesz node sum", worst < 1e-6, worst))

    # Mobius deficiency bound
    a, b, c = rng.random((3, 100000))
    slack = geometry.mobius_deficiency(a, b, c) - (a - b) ** 2 / 3.0
    worst = float(-slack.min())
    results.append(("mobius deficiency bound", worst < 1e-12, worst))

    # derivative-shift roots stay unimodular
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 13))
        g = np.polynomial.polynomial.polyfromroots(
            np.exp(1j * rng.uniform(0, TWO_PI, n)))
        roots = circle.derivative_shift_roots(g)
        if roots.size:
            worst = max(worst, float(np.max(np.abs(np.abs(roots) - 1.0))))
    results.append(("derivative-shift unimodularity", worst < 1e-8, worst))

    # DP vs brute force oracle
    mismatches = 0
    for i in range(100):
        sample = harness.sample_uniform(10, harness.mix_seed(rng_seed, i))
        if chains.longest_chain_exact(sample).length != \
                chains.brute_force_chain(sample).length:
            mismatches += 1
    results.append(("chain oracle equivalence", mismatches == 0, float(mismatches)))
    return results


def cmd_verify(args) -> int:
    results = verification_suites()
    lines = []
    ok = True
    for name, passed, resid in results:
        ok = ok and passed
        lines.append(f"{'PASS' if passed else 'FAIL'} {name} "
                     f"(max residual {harness.fmt(float(resid))})")
    lines.append("all suites passed" if ok else "some suites FAILED")
    _write(args.out, "\n".join(lines) + "\n")
    return 0 if ok else 1


# --- entry point --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polychain", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("chains", help="longest convex chain experiments")
    csub = pc.add_subparsers(dest="subcommand", required=True)
    run = csub.add_parser("run", help="one Monte Carlo batch")
    run.add_argument("--n", type=int, required=True)
    run.add_argument("--samples", type=int, required=True)
    run.add_argument("--width", default="auto",
                     help="pruning radius, 'auto', or 'exact'")
    run.add_argument("--model", choices=["uniform", "poisson"], default="uniform")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--out", default=None, help="summary CSV (default stdout)")
    run.add_argument("--records", default=None, help="per-sample JSONL path")
    run.add_argument("--timing", action="store_true",
                     help="write measured wall times (breaks byte determinism)")
    run.set_defaults(func=cmd_chains_run)

    table = csub.add_parser("table", help="summary CSV from a row-spec file")
    table.add_argument("--spec", required=True,
                       help="rows 'row = n samples width' (or bare triples)")
    table.add_argument("--seed", type=int, default=0)
    table.add_argument("--workers", type=int, default=1)
    table.add_argument("--out", default=None)
    table.add_argument("--timing", action="store_true")
    table.set_defaults(func=cmd_chains_table)

    pp = sub.add_parser("polar", help="polarization experiments")
    psub = pp.add_subparsers(dest="subcommand", required=True)
    pcircle = psub.add_parser("circle", help="Phi iteration trajectory")
    group = pcircle.add_mutually_exclusive_group(required=True)
    group.add_argument("--angles", help="config file of angles in turns")
    group.add_argument("--uniform", type=int, help="start from n roots of unity")
    pcircle.add_argument("--phi-steps", type=int, default=10)
    pcircle.add_argument("--out", default=None)
    pcircle.set_defaults(func=cmd_polar_circle)

    pgram = psub.add_parser("gram", help="inverse-eigenvector scan")
    pgram.add_argument("--vectors", required=True,
                       help="CSV, d rows x n columns of unit vectors")
    pgram.add_argument("--out", default=None)
    pgram.set_defaults(func=cmd_polar_gram)

    ver = sub.add_parser("verify", help="identity and oracle suites")
    ver.add_argument("--out", default=None)
    ver.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
