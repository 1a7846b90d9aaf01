"""Sweep the hexagons B_delta: width of J at the apex, and orthogonality of the
two side directions versus their sum."""
import argparse
import csv
import sys

import numpy as np

from normlab import diam_support, example31_space, eps_min, is_bj_orthogonal, lemma44_check, norm
from normlab.catalog import example31_points


def row(delta):
    space, pts = example31_space(delta), example31_points(delta)
    P, R1, R2 = pts["P"], pts["R1"], pts["R2"]
    return {
        "delta": delta,
        "diam_J_P": diam_support(space, P),
        "closed_form": 2 * delta / (1 + delta),
        "bj_R1": is_bj_orthogonal(space, P, R1),
        "bj_R2": is_bj_orthogonal(space, P, R2),
        "eps_min_sum": eps_min(space, P, R1 + R2),
        "witness": lemma44_check(space, P, R1 / norm(space, R1), R2 / norm(space, R2)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--deltas", default="0.01,0.1,0.5,1,2,10",
                    help="comma list, or lo:hi:count for a log-spaced grid")
    args = ap.parse_args()
    if ":" in args.deltas:
        lo, hi, k = args.deltas.split(":")
        deltas = np.geomspace(float(lo), float(hi), int(k)).tolist()
    else:
        deltas = [float(d) for d in args.deltas.split(",")]

    rows = [row(d) for d in deltas]
    w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})


if __name__ == "__main__":
    main()
