"""Tabulate Springer map degrees over F_p next to the parity-filter prediction.

    python3 scripts/springer_degrees.py C3 B3 --prime 11
"""

import argparse

from orbit_resolve.fiber_count import springer_degree
from orbit_resolve.liealg_oracle import build_algebra
from orbit_resolve.partitions import LieTypeRank
from orbit_resolve.polarizations import is_d_alias, isotropic_flag_types, levi_class_of, parity_filter, richardson_of


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("types", nargs="+", help="B, C or D types such as C3")
    ap.add_argument("--prime", type=int, default=11)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for text in args.types:
        t = LieTypeRank.parse(text)
        alg = build_algebra(t)
        print(f"{t}  (p = {args.prime})")
        for ft in isotropic_flag_types(t):
            if t.family == "D" and is_d_alias(ft):
                continue
            d = richardson_of(t, ft)
            lc = levi_class_of(t, ft)
            deg = springer_degree(alg, ft, args.prime, seed=args.seed)
            predicted = parity_filter(t, lc, d)
            mark = "" if predicted == (deg == 1) else "  MISMATCH"
            print(f"  {str(ft):18s} {str(lc):14s} {str(d):18s} degree {deg}  filter {predicted}{mark}")


if __name__ == "__main__":
    main()
