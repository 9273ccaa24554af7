#!/usr/bin/env python3
"""Randomized sweep of the spectral-ordering harness.

Draws random (screened potential, tangent shifted-Coulomb) pairs -- random
nuclear charge and random contact radius -- and runs the full ordering check
on each: pointwise potential ordering, eigenvalue ordering, nodelessness, and
the two wave-function identities.  Any FAIL verdict is a release blocker.

Usage: python scripts/ordering_sweep.py [--pairs N] [--seed S]
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from diracbound.channels import Channel
from diracbound.comparison import assert_ordering, random_screened_tangent_pair


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=50)
    ap.add_argument("--seed", type=int, default=20260825)
    ap.add_argument("--z-low", type=int, default=20)
    ap.add_argument("--z-high", type=int, default=80)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    ch = Channel(tau=-1, two_j=1)
    failures = 0
    t0 = time.perf_counter()
    for i in range(args.pairs):
        screened, tangent = random_screened_tangent_pair(
            rng, z_low=args.z_low, z_high=args.z_high
        )
        report = assert_ordering(screened, tangent, ch)
        ok = report.verdict == "PASS"
        failures += 0 if ok else 1
        print(
            f"[{i + 1:3d}/{args.pairs}] Z={screened.Z:2d} "
            f"t={tangent.contact_radius:8.3f}  "
            f"E_a={report.E_a:.9f} E_b={report.E_b:.9f}  "
            f"identity={report.identity.relative:.1e} "
            f"deriv={report.derivative_residual:.1e}  {report.verdict}"
        )
    elapsed = time.perf_counter() - t0
    print(f"\n{args.pairs - failures}/{args.pairs} PASS in {elapsed:.1f} s")
    if failures:
        print(f"*** {failures} ordering FAILURES -- release blocker ***")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
