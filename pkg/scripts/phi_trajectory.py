#!/usr/bin/env python3
"""Follow the Phi improvement iteration from a random circle configuration.

Prints one CSV row per step (angles in turns plus the minimal value M of
the inverse-square potential) and stops early once the configuration is
numerically fixed.  The iterate drifts toward rotated roots of unity,
where M attains the planar bound n^2/4.
"""

import argparse
import math
import sys

import numpy as np

from polychain import circle, harness


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--steps", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, args.n))
    cfg = circle.CircleConfig(tuple(angles))
    print("step," + ",".join(f"angle_{j}" for j in range(args.n)) + ",M")
    prev = None
    for step in range(args.steps + 1):
        m = circle.minimize_on_circle(cfg).M
        print(",".join([str(step)]
                       + [harness.fmt(a / (2.0 * math.pi)) for a in cfg.angles]
                       + [harness.fmt(float(m))]))
        if prev is not None:
            d = np.abs(np.sort(np.mod(cfg.angles, 2.0 * math.pi))
                       - np.sort(np.mod(prev, 2.0 * math.pi)))
            if float(np.max(np.minimum(d, 2.0 * math.pi - d))) < 1e-9:
                break
        prev = np.asarray(cfg.angles)
        cfg = circle.phi_iterate(cfg)
    print(f"# planar bound n^2/4 = {args.n ** 2 / 4}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
