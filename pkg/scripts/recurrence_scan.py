#!/usr/bin/env python3
"""Scan recurrence times versus the target distance epsilon.

For a few mode spectra (commensurate, golden-ratio, sqrt(2)) report the
first tau > T with propagator distance below each epsilon, together with
the conditioning constant K that converts mode distance into propagator
distance.
"""

import argparse
import math
import time

import numpy as np

from oscontrol import QuadraticHamiltonian, RecurrenceQuery, find_recurrence

SPECTRA = {
    "commensurate (1, 2)": [1.0, 2.0],
    "sqrt2 (1, 1.4142...)": [1.0, math.sqrt(2.0)],
    "golden (1, 1.6180...)": [1.0, (1.0 + math.sqrt(5.0)) / 2.0],
    "triple (1, sqrt2, sqrt3)": [1.0, math.sqrt(2.0), math.sqrt(3.0)],
}


def diagonal_hamiltonian(nu):
    return QuadraticHamiltonian(len(nu), np.diag(np.repeat(nu, 2)))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--epsilons", type=float, nargs="+", default=[1.0, 0.5, 0.2])
    parser.add_argument("--after", type=float, default=1.0)
    # deep scans at tight epsilon can take minutes; raise this explicitly
    parser.add_argument("--horizon-periods", type=float, default=1e4)
    args = parser.parse_args()

    for name, nu in SPECTRA.items():
        H = diagonal_hamiltonian(nu)
        print(f"\n{name}")
        print(f"{'epsilon':>9} {'found':>6} {'tau':>14} {'distance':>12} {'K':>7} {'secs':>8}")
        for eps in args.epsilons:
            query = RecurrenceQuery(
                hamiltonian=H,
                epsilon=eps,
                min_time=args.after,
                max_time=args.after + args.horizon_periods * 2.0 * math.pi / min(nu),
            )
            started = time.perf_counter()
            res = find_recurrence(query)
            elapsed = time.perf_counter() - started
            tau = f"{res.tau:.6f}" if res.found else "-"
            dist = f"{res.achieved_distance:.3e}" if res.found else f">{res.best_distance_seen:.2e}"
            print(f"{eps:>9.3f} {str(res.found):>6} {tau:>14} {dist:>12} {res.conditioning:>7.2f} {elapsed:>8.3f}")


if __name__ == "__main__":
    main()
