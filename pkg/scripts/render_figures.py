"""Write SVG pictures: the staircase, the double n-gon, and the separatrix through the centre.

    python scripts/render_figures.py --n 7 --outdir figures
"""
import argparse
from pathlib import Path

from ngon_mod2.surfaces import build_double_ngon, build_staircase, ngon_vertex
from ngon_mod2.svg import render, trace_segments
from ngon_mod2.tracer import theorem_direction, theorem_separatrix_trace


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--budget", type=int, default=40, help="edge crossings drawn for the separatrix")
    ap.add_argument("--outdir", default="figures")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    n = args.n

    (out / f"staircase_{n}.svg").write_text(render(build_staircase(n)))
    D = build_double_ngon(n)
    (out / f"double_ngon_{n}.svg").write_text(render(D))

    theorem_direction(n)  # fails loudly if the closed form is off
    res = theorem_separatrix_trace(n, args.budget)
    segs = trace_segments(D, (0, ngon_vertex(n, 1)), res)
    (out / f"separatrix_{n}.svg").write_text(render(D, segs))
    print(f"n={n}: {res.crossings} crossings, stop reason {res.reason}, centre hits {len(res.marked_hits('center'))}")


if __name__ == "__main__":
    main()
