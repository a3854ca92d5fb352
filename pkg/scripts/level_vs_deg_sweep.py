"""Compare level, co-level and -Deg along the forgetful map for a range of
weights.  The multisets always agree; pointwise only co-level does."""
import argparse
from itertools import product

from krlab import alcove, qls
from krlab.rootdata import CartanType, build_root_system


def sweep(name, max_coord):
    rs = build_root_system(CartanType.parse(name))
    rows = []
    for lam in product(range(max_coord + 1), repeat=rs.rank):
        if not any(lam):
            continue
        chain = alcove.build_lambda_chain(rs, lam)
        g = qls.pqbg_for(rs, lam)
        subsets = alcove.enumerate_admissible(chain)
        lvl = co = 0
        for A in subsets:
            d = -qls.deg(alcove.xi(A, chain, g), g, lam)
            lvl += alcove.level(A, chain) != d
            co += alcove.colevel(A, chain) != d
        rows.append((name, lam, len(subsets), lvl, co))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--types", default="A1,A2,C2,G2")
    ap.add_argument("--max-coord", type=int, default=2)
    args = ap.parse_args()
    print(f"{'type':5} {'lambda':12} {'|A|':>6} {'level!=-Deg':>12} {'colevel!=-Deg':>14}")
    for name in args.types.split(","):
        for t, lam, n, lvl, co in sweep(name, args.max_coord):
            print(f"{t:5} {str(list(lam)):12} {n:6d} {lvl:12d} {co:14d}")


if __name__ == "__main__":
    main()
