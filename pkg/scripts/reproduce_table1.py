#!/usr/bin/env python3
"""Reproduce the full reference binding-energy table and diff it.

Runs the envelope bound and the shooting solver for every (Z, state) cell,
prints a wide-format table in keV-binding units next to the golden reference
values, and reports the worst absolute deviation.  Exits non-zero if any cell
failed to converge.

Usage: python scripts/reproduce_table1.py [--grid-scale S] [--tol-e T]
"""

from __future__ import annotations

import argparse
import sys
import time

from diracbound.table1 import DEFAULT_Z_VALUES, STATE_LABELS, compute_table


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid-scale", type=float, default=1.0)
    ap.add_argument("--tol-e", type=float, default=1e-10)
    ap.add_argument("--z", type=int, nargs="+", default=list(DEFAULT_Z_VALUES))
    args = ap.parse_args()

    t0 = time.perf_counter()
    result = compute_table(
        tuple(args.z), grid_scale=args.grid_scale, tol_e=args.tol_e
    )
    elapsed = time.perf_counter() - t0

    quantities = [(s, q) for s in STATE_LABELS for q in ("upper", "numeric")]
    head = "".join(
        f"{('E^U' if q == 'upper' else 'E') + ' ' + s:>16s}" for s, q in quantities
    )
    print(f"{'Z':>4s}{head}   (binding energies, keV)")
    for z in result.z_values:
        cells = [result.cell(z, s, q) for s, q in quantities]
        row = "".join(
            f"{c.binding_kev:16.4f}" if c.binding_kev is not None else f"{'FAILED':>16s}"
            for c in cells
        )
        print(f"{z:4d}{row}")
        refs = "".join(
            f"{c.reference_kev:16.4f}" if c.reference_kev is not None else f"{'--':>16s}"
            for c in cells
        )
        print(f"{'ref':>4s}{refs}")

    print(f"\nmax |deviation| vs reference: {result.max_abs_deviation_kev:.2e} keV")
    print(f"failed cells: {result.failed_cells}   runtime: {elapsed:.1f} s")
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
