"""Tabulate E, S and R for regular 2n-gons next to the closed form for E."""
import argparse
import csv
import sys

from normlab import closed_form_E, regular_polygon_space, space_constants


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=24)
    args = ap.parse_args()

    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["n", "vertices", "E", "E_closed_form", "abs_diff", "S", "R"])
    worst = 0.0
    for n in range(2, args.max_n + 1):
        c = space_constants(regular_polygon_space(n).space)
        cf = closed_form_E(n)
        worst = max(worst, abs(c.E - cf))
        out.writerow([n, 2 * n, repr(c.E), repr(cf), repr(abs(c.E - cf)), repr(c.S), repr(c.R)])
    print(f"# max |E - closed form| = {worst:.3e}", file=sys.stderr)


if __name__ == "__main__":
    main()
