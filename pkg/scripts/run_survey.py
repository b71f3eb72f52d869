"""Survey the explicit direction over odd n and write a CSV report.

    python scripts/run_survey.py --from 7 --to 199 --out survey.csv
"""
import argparse
import csv
import sys
import time

from ngon_mod2.analysis import SurveyRow, survey


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--from", dest="lo", type=int, default=7)
    ap.add_argument("--to", dest="hi", type=int, default=99)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    t0 = time.perf_counter()
    rows = survey(args.lo, args.hi)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SurveyRow.FIELDS)
    for r in rows:
        w.writerow(r.as_list())
    if fh is not sys.stdout:
        fh.close()
    counts = {}
    for r in rows:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    print(f"{len(rows)} rows in {time.perf_counter() - t0:.1f}s: {counts}", file=sys.stderr)


if __name__ == "__main__":
    main()
