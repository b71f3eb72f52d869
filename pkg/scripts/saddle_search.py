"""Bounded saddle-connection search in the explicit direction on the double n-gon.

A negative result only means nothing closed within the budget.

    python scripts/saddle_search.py --n 9 15 --budget 2000
"""
import argparse
import time

from ngon_mod2.surfaces import build_double_ngon
from ngon_mod2.tracer import saddle_connection_search, theorem_direction


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[9, 15])
    ap.add_argument("--budget", type=int, default=1000)
    args = ap.parse_args()
    for n in args.n:
        (X, Y), _ = theorem_direction(n)
        t0 = time.perf_counter()
        res = saddle_connection_search(build_double_ngon(n), (-X, -Y), args.budget)
        dt = time.perf_counter() - t0
        if res.found:
            print(f"n={n}: saddle connection from germ {res.start} after {res.trace.crossings} crossings ({dt:.1f}s)")
        else:
            print(f"n={n}: none within {args.budget} crossings over {res.germs_tried} germs ({dt:.1f}s)")


if __name__ == "__main__":
    main()
