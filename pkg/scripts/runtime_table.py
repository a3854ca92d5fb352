"""Timing and size table for the main enumerations."""
import argparse
import time

from krlab import alcove, charpoly, qls
from krlab.rootdata import CartanType, build_root_system

CASES = [
    ("A2", (1, 1)), ("A2", (2, 1)), ("A3", (1, 1, 0)), ("A3", (0, 1, 1)),
    ("B3", (1, 0, 1)), ("C3", (0, 1, 0)), ("D4", (0, 1, 0, 0)), ("G2", (1, 1)),
]


def timed(fn, *a):
    t0 = time.perf_counter()
    out = fn(*a)
    return out, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="only the first four cases")
    args = ap.parse_args()
    cases = CASES[:4] if args.quick else CASES
    print(f"{'type':5} {'lambda':14} {'|QLS|':>7} {'t_qls':>8} {'|A|':>7} {'t_alcove':>9} {'P=X':>5} {'t_char':>8}")
    for name, lam in cases:
        rs = build_root_system(CartanType.parse(name))
        paths, tq = timed(qls.enumerate_qls, rs, lam)
        chain = alcove.build_lambda_chain(rs, lam)
        subs, ta = timed(alcove.enumerate_admissible, chain)
        (P, X), tc = timed(lambda: (charpoly.macdonald_p(rs, lam, chain), charpoly.qls_graded_character(rs, lam)))
        print(f"{name:5} {str(list(lam)):14} {len(paths):7d} {tq:8.3f} {len(subs):7d} {ta:9.3f} {str(P == X):>5} {tc:8.3f}")


if __name__ == "__main__":
    main()
