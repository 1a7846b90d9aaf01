"""Run the randomized right-additivity suites and summarize each one.

Failing trials are written as JSON dossiers (seed + trial index) so they can
be replayed with ``normlab.suites.trial_rng``.
"""
import argparse
import json
import os
import sys
import time

from normlab.suites import additivity_window_suite, additivity_bj_suite, additivity_half_suite

SUITES = {"4.2": additivity_window_suite, "4.3": additivity_bj_suite, "4.6": additivity_half_suite}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=int(os.environ.get("NORMLAB_SEED", "0")))
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--dossiers", help="write failures here as JSON")
    args = ap.parse_args()

    failures = {}
    for label, suite in SUITES.items():
        t0 = time.perf_counter()
        r = suite(args.seed, trials=args.trials)
        dt = time.perf_counter() - t0
        print(f"{label}: {r.trials} trials, {r.vacuous} vacuous draws, {r.violations} violations, "
              f"closest approach {r.stats['max_eps_out_minus_bound']:+.3e}  ({dt:.1f}s)")
        if r.failures:
            failures[label] = r.failures
    if args.dossiers:
        with open(args.dossiers, "w") as fh:
            json.dump(failures, fh, indent=2)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
