#!/usr/bin/env python3
"""Scan random unit-vector systems for inverse-eigenvector conjecture violations.

For each random system the per-quadrant inverse eigenvectors are
computed and the conjectured bounds (some alpha with sum alpha_i^2 <= n,
some alpha with |prod alpha_i| <= 1) are checked.  Violations are
printed with the offending system; none are expected.
"""

import argparse
import sys

import numpy as np

from polychain import gram


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--systems", type=int, default=50)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    violations = 0
    for i in range(args.systems):
        n = int(rng.integers(2, args.max_n + 1))
        d = int(rng.integers(2, n + 1))
        u = rng.normal(size=(d, n))
        u /= np.linalg.norm(u, axis=0)
        report = gram.conjecture_scan(gram.UnitVectorSystem(u))
        if report.eigenball_violated or report.eigenhyper_violated:
            violations += 1
            print(f"system {i}: eigenball_violated={report.eigenball_violated} "
                  f"eigenhyper_violated={report.eigenhyper_violated}")
            print(np.array2string(u, precision=17))
        print(f"system {i}: n={n} d={d} min_norm_sq={report.min_norm_sq:.6f} "
              f"min|prod|={report.min_abs_product:.6f} "
              f"veq_residual={report.veq_residual:.2e}")
    print(f"# {violations} violation(s) over {args.systems} systems",
          file=sys.stderr)
    return 0 if violations == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
