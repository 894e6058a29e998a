"""P^1 x4 and P^1 x16 in BE8 and BE6 for a range of primes."""
import argparse

from akproj.steenrod import p1_exceptional


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[7, 11, 13, 17, 19, 23, 29])
    args = ap.parse_args()
    for group in ("E8", "E6"):
        for g in ("x4", "x16"):
            for p in args.primes:
                sol = p1_exceptional(group, g, p)
                print(f"B{group} P^1 {g} at p={p} (degree {sol.degree})")
                for t in sol.to_json():
                    c = t["coefficient"] if t["status"] == "unique" else "?"
                    print(f"    {c!s:>3}  {t['monomial']}")
                for note in sol.notes:
                    print(f"    note: {note}")


if __name__ == "__main__":
    main()
