"""Command-line front end: ``ngon-mod2 {orbit,certify,survey,witness,trace,check}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import analysis, hecke_orbit, mod_two, surfaces, tracer
from .number_field import field

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_INVARIANT = 0, 1, 2, 3


class LiteralError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    n_from: int | None = None
    n_to: int | None = None
    direction: str | None = None
    point: str | None = None
    budget: int | None = None
    fmt: str | None = None
    out: str | None = None
    strict: bool = False
    surface: str = "double-ngon"
    theorem_direction: bool = False
    svg: str | None = None


# ---------------------------------------------------------------------------
# literals


def parse_rational(text: str, where: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise LiteralError(f"{where}: {text.strip()!r} is not a rational number") from None


def parse_element(n: int, text: str, where: str):
    """Comma-separated rational coefficients over 1, lambda, lambda^2, ..."""
    F = field(n)
    items = text.split(",")
    if len(items) > F.d:
        raise LiteralError(f"{where}: {len(items)} coefficients given, the field has degree {F.d}")
    coeffs = [parse_rational(t, f"{where}, item {k + 1}") for k, t in enumerate(items)]
    return F.element(coeffs)


def parse_pair(n: int, text: str, flag: str) -> tuple:
    """``a0,a1,...;b0,b1,...`` (coefficient vectors) or ``x,y`` (two rationals)."""
    if ";" in text:
        parts = text.split(";")
        if len(parts) != 2:
            raise LiteralError(f"{flag}: expected two coordinates separated by ';', got {len(parts)}")
        return tuple(parse_element(n, p, f"{flag}, coordinate {k + 1}") for k, p in enumerate(parts))
    parts = text.split(",")
    if len(parts) != 2:
        raise LiteralError(f"{flag}: expected 'x,y' or 'a0,a1,...;b0,b1,...', got {text!r}")
    F = field(n)
    return tuple(F.from_int(parse_rational(p, f"{flag}, coordinate {k + 1}")) for k, p in enumerate(parts))


# ---------------------------------------------------------------------------
# output


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_orbit(cfg: RunConfig) -> int:
    n = _need_n(cfg)
    orbit = hecke_orbit.orbit_mod2(n)
    R = mod_two.ring(n)
    data = {
        "n": n,
        "factorization": str(R.factorization),
        "orbit_size": len(orbit),
        "p1_size": R.p1_size(),
        "strict_inclusion": hecke_orbit.strict_inclusion(n),
        "classes": [c.as_bits() for c in orbit],
    }
    if (cfg.fmt or "text") == "json":
        _emit(cfg, _dump_json(data))
    else:
        lines = [f"n = {n}", f"O/2O = GF(2)[L]/({R.factorization})"]
        lines += [f"  {c!r}" for c in orbit]
        lines += [
            f"orbit size: {data['orbit_size']}",
            f"P1 size: {data['p1_size']}",
            f"strict inclusion: {str(data['strict_inclusion']).lower()}",
        ]
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_certify(cfg: RunConfig) -> int:
    n = _need_n(cfg)
    if cfg.direction is None:
        raise LiteralError("--direction is required")
    direction = parse_pair(n, cfg.direction, "--direction")
    cert = analysis.certify_direction(n, direction)
    _emit(cfg, _dump_json(cert.to_json()))
    if cfg.strict and cert.verdict == analysis.INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_survey(cfg: RunConfig) -> int:
    lo = cfg.n_from if cfg.n_from is not None else 7
    hi = cfg.n_to if cfg.n_to is not None else lo
    rows = analysis.survey(lo, hi)
    if (cfg.fmt or "csv") == "json":
        _emit(cfg, _dump_json([dict(zip(analysis.SurveyRow.FIELDS, r.as_list())) for r in rows]))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(analysis.SurveyRow.FIELDS)
        for r in rows:
            w.writerow(r.as_list())
        _emit(cfg, buf.getvalue())
    if cfg.strict and any(r.verdict == analysis.INCONCLUSIVE for r in rows):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_witness(cfg: RunConfig) -> int:
    n = _need_n(cfg)
    if cfg.point is None:
        raise LiteralError("--point is required")
    x, y = parse_pair(n, cfg.point, "--point")
    P0 = surfaces.StaircasePoint.of(n, x, y)
    budget = analysis.SearchBudget(depth=cfg.budget) if cfg.budget is not None else None
    path, cert = analysis.find_witness(n, P0, budget)
    _emit(cfg, _dump_json({"witness": path.to_json(), "certificate": cert.to_json()}))
    return EXIT_OK


def cmd_trace(cfg: RunConfig) -> int:
    n = _need_n(cfg)
    budget = cfg.budget if cfg.budget is not None else 1000
    if cfg.surface == "double-ngon":
        surf = surfaces.build_double_ngon(n)
        if cfg.theorem_direction:
            (X, Y), _ = tracer.theorem_direction(n)
            start = (0, surfaces.ngon_vertex(n, 1))
            direction = (-X, -Y)
        else:
            if cfg.direction is None:
                raise LiteralError("--direction or --theorem-direction is required")
            dx, dy = parse_pair(n, cfg.direction, "--direction")
            F = field(n)
            direction = (F.quad(dx), F.quad(dy))
            start = (0, (F.quad(0), F.quad(0)))
    elif cfg.surface == "staircase":
        S = surfaces.build_staircase(n)
        surf = S
        if cfg.theorem_direction:
            direction = tracer.target_direction(n)
        elif cfg.direction is not None:
            direction = parse_pair(n, cfg.direction, "--direction")
        else:
            raise LiteralError("--direction or --theorem-direction is required")
        poly = S._by_index[S.m]
        if cfg.point is not None:
            x, y = parse_pair(n, cfg.point, "--point")
            ks = S.locate(x, y)
            if not ks:
                raise LiteralError("--point: point is outside the staircase")
            start = (ks[0], (x, y))
        else:
            start = (poly, S.rects[poly].vertices()[0])
            # a corner start needs the germ that points into some rectangle
            for p, k in tracer.outgoing_germs(S, direction):
                if S.polygons[p][k] == start[1]:
                    start = (p, start[1])
                    break
    else:
        raise LiteralError(f"--surface: unknown surface {cfg.surface!r}")
    res = tracer.trace(surf, start, direction, budget)
    if cfg.svg:
        from .svg import render, trace_segments

        with open(cfg.svg, "w", encoding="utf-8", newline="") as fh:
            fh.write(render(surf, trace_segments(surf, start, res)))
    if (cfg.fmt or "json") == "svg":
        from .svg import render, trace_segments

        _emit(cfg, render(surf, trace_segments(surf, start, res)))
    else:
        _emit(cfg, _dump_json({"n": n, "surface": cfg.surface, "trace": res.to_json()}))
    return EXIT_OK


def run_checks(n_max: int = 31) -> list[tuple[str, bool]]:
    from .number_field import cyclotomic, expand_chebyshev_identity, min_poly, prime_coefficient_check

    out = []
    odd = range(3, n_max + 1, 2)
    out.append(("min_poly identity", all(expand_chebyshev_identity(min_poly(n)) == cyclotomic(2 * n) for n in odd)))
    primes = [p for p in range(7, n_max + 1, 2) if all(p % q for q in range(3, p, 2))]
    out.append(("leading coefficients for primes", all(prime_coefficient_check(p) for p in primes)))
    out.append(("orbit size <= n", all(len(hecke_orbit.orbit_mod2(n)) <= n for n in odd)))
    out.append(("P_i symmetry", all(hecke_orbit.symmetry_check(n) for n in odd)))
    out.append(("S U^i identity", all(hecke_orbit.su_identity_check(n) for n in odd)))
    lam_ok = True
    for n in range(5, n_max + 1, 2):
        S = surfaces.build_staircase(n)
        lam = field(n).lam
        cyls = S.cylinders("h") + S.cylinders("v")
        lam_ok &= S.check_gluings() and len(S.cylinders("h")) == (n - 1) // 2
        lam_ok &= all(c.modulus == lam for c in cyls)
    out.append(("staircase cylinders of modulus lambda", lam_ok))
    out.append(("double n-gon gluings", all(surfaces.build_double_ngon(n).check_gluings() for n in range(5, n_max + 1, 2))))
    return out


def cmd_check(cfg: RunConfig) -> int:
    results = run_checks(cfg.n_to or 31)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results]
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if all(ok for _, ok in results) else EXIT_INVARIANT


COMMANDS = {
    "orbit": cmd_orbit,
    "certify": cmd_certify,
    "survey": cmd_survey,
    "witness": cmd_witness,
    "trace": cmd_trace,
    "check": cmd_check,
}


def _need_n(cfg: RunConfig) -> int:
    if cfg.n is None:
        raise LiteralError("--n is required")
    if cfg.n < 3 or cfg.n % 2 == 0:
        raise LiteralError(f"--n: expected an odd integer >= 3, got {cfg.n}")
    return cfg.n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ngon-mod2", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n=True):
        if n:
            p.add_argument("--n", type=int)
        p.add_argument("--format", dest="fmt", choices=["json", "csv", "svg", "text"])
        p.add_argument("--out")
        p.add_argument("--strict", action="store_true")

    common(sub.add_parser("orbit", help="reduced orbit of the cusp modulo 2"))
    p = sub.add_parser("certify", help="mod-2 certificate for a direction")
    common(p)
    p.add_argument("--direction")
    p = sub.add_parser("survey", help="survey of the explicit direction over a range of n")
    common(p, n=False)
    p.add_argument("--from", dest="n_from", type=int)
    p.add_argument("--to", dest="n_to", type=int)
    p = sub.add_parser("witness", help="constructive witness search from a point")
    common(p)
    p.add_argument("--point")
    p.add_argument("--budget", type=int, help="search depth")
    p = sub.add_parser("trace", help="exact trace on a surface")
    common(p)
    p.add_argument("--surface", choices=["double-ngon", "staircase"], default="double-ngon")
    p.add_argument("--theorem-direction", action="store_true")
    p.add_argument("--direction")
    p.add_argument("--point")
    p.add_argument("--budget", type=int, help="maximal number of edge crossings")
    p.add_argument("--svg")
    p = sub.add_parser("check", help="run the built-in invariant checks")
    common(p, n=False)
    p.add_argument("--to", dest="n_to", type=int)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})
    try:
        return COMMANDS[cfg.command](cfg)
    except LiteralError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except mod_two.Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE if cfg.strict else EXIT_OK
    except (AssertionError, ArithmeticError) as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, LookupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
