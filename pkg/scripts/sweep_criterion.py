"""Run the P^1 criterion over a grid of pairs, primes and k.

Each line shows the outcome implied by the thresholds next to what the
criterion finds, marking cells where they disagree.
"""
import argparse

from akproj.catalog import instantiate_pair
from akproj.obstruction import criterion_check
from akproj.verification import criterion_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=4)
    args = ap.parse_args()
    disagreements = 0
    for fam, n, k, p, expected in criterion_grid(args.nmax):
        pair = instantiate_pair(fam, n, p)
        c = criterion_check(pair, p, k)
        flag = "" if c.status == expected else "  <-- mismatch"
        disagreements += bool(flag)
        what = c.witness_str() + f" mod {c.ideal}" if c.obstructed else c.reason[:60]
        print(f"{fam:9} n={str(n):4} k={k} p={p:3}  expect {expected:12} criterion: {what}{flag}")
    print(f"\n{disagreements} mismatching cells")


if __name__ == "__main__":
    main()
