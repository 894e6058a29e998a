"""Print the a_k / b_k threshold table for every family as CSV."""
import argparse
import csv
import sys

from akproj.catalog import FAMILIES
from akproj.cli import table_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--kmax", type=int, default=6)
    args = ap.parse_args()
    rows = table_rows(list(FAMILIES), range(1, args.nmax + 1), args.kmax)
    w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


if __name__ == "__main__":
    main()
