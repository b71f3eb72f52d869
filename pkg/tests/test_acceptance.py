"""Acceptance suite: one PASS/FAIL line per criterion, with its time limit.

Run with ``pytest tests/test_acceptance.py -s -v`` to see the report lines
next to the test ids; they are printed even without ``-s``.
"""
import time
from fractions import Fraction


from ngon_mod2 import hecke_orbit
from ngon_mod2.analysis import (
    NO_OBSTRUCTION,
    NOT_PERIODIC,
    SearchBudget,
    find_witness,
    reachable_reductions,
    survey,
)
from ngon_mod2.hecke_orbit import orbit_mod2, square_plus_one_excluded, strict_inclusion
from ngon_mod2.mod_two import psi, ring
from ngon_mod2.number_field import cyclotomic, expand_chebyshev_identity, field, min_poly, prime_coefficient_check
from ngon_mod2.surfaces import (
    StaircasePoint,
    build_double_ngon,
    build_staircase,
    eval_poly,
    omega_poly,
)
from ngon_mod2.tracer import (
    projectively_equal,
    saddle_connection_search,
    target_direction,
    theorem_direction,
    theorem_separatrix_trace,
    transport_matrix,
    tst_transport,
)

ODD = lambda lo, hi: range(lo, hi + 1, 2)
PRIMES = [7, 11, 13, 17, 19, 23, 29, 31]


def _fresh():
    orbit_mod2.cache_clear()
    min_poly.cache_clear()
    cyclotomic.cache_clear()


def report(capsys, num, title, ok, elapsed=None, limit=None, note=""):
    timing = ""
    if elapsed is not None:
        timing = f" [{elapsed:.2f}s" + (f" / limit {limit:g}s]" if limit else "]")
        if limit is not None and elapsed >= limit:
            ok = False
    line = f"CRITERION {num:>2}: {'PASS' if ok else 'FAIL'}  {title}{timing}"
    if note:
        line += f"  ({note})"
    with capsys.disabled():
        print("\n" + line)
    return ok


def test_criterion_01_min_poly(capsys):
    _fresh()
    t0 = time.perf_counter()
    ident = all(expand_chebyshev_identity(min_poly(n)) == cyclotomic(2 * n) for n in ODD(3, 31))
    coeffs = all(prime_coefficient_check(p) for p in PRIMES)
    dt = time.perf_counter() - t0
    assert report(capsys, 1, "minimal polynomial identity, prime coefficients", ident and coeffs, dt, 1.0)


def test_criterion_02_orbit_sizes(capsys):
    _fresh()
    timings = []
    t0 = time.perf_counter()
    ok7 = len(orbit_mod2(7)) == 7
    timings.append(time.perf_counter() - t0)
    t0 = time.perf_counter()
    ok9 = len(orbit_mod2(9)) == 9 and set(orbit_mod2(9)) == set(ring(9).all_classes())
    timings.append(time.perf_counter() - t0)
    t0 = time.perf_counter()
    ok17 = ring(17).p1_size() == 289 and len(orbit_mod2(17)) <= 17
    timings.append(time.perf_counter() - t0)
    ok = ok7 and ok9 and ok17 and max(timings) < 1.0
    assert report(capsys, 2, "orbit sizes 7, 9 = P1, |P1| = 289 at n = 17", ok, max(timings), 1.0, "slowest case")


def test_criterion_03_bound_and_strict_inclusion(capsys):
    _fresh()
    t0 = time.perf_counter()
    bound = all(len(orbit_mod2(n)) <= n for n in ODD(3, 199))
    failures = [n for n in ODD(7, 199) if not strict_inclusion(n)]
    dt = time.perf_counter() - t0
    ok = bound and failures == [9]
    assert report(capsys, 3, "orbit bound and strict inclusion except n = 9", ok, dt, 60.0, f"exceptions {failures}")


def test_criterion_04_square_plus_one_class(capsys):
    _fresh()
    t0 = time.perf_counter()
    ok = all(square_plus_one_excluded(p) for p in PRIMES)
    dt = time.perf_counter() - t0
    assert report(capsys, 4, "[L^2 + 1 : 1] outside the orbit for primes 7..31", ok, dt, 5.0)


def test_criterion_05_pipeline(capsys):
    ok = True
    literal = []
    literal_mod2 = []
    for n in (7, 11, 13):
        F = field(n)
        _, (Xt, Yt) = theorem_direction(n)
        ok &= Xt == F.element([-1, -3, 1, 1]) and Yt == F.element([-1, 1, 1])
        out = tst_transport(n, (Xt, Yt))
        ok &= projectively_equal(out, (F.element([-1, 0, -1]), F.element([-1, -2])))
        c = psi(*out)
        ok &= (c.x.bits, c.y.bits) == (0b101, 1)
        T, S, _, _ = hecke_orbit.gens(n)
        lit = (T * S * T.inverse()).apply((Xt, Yt))
        literal.append(projectively_equal(lit, target_direction(n)))
        literal_mod2.append(psi(*lit) == psi(*target_direction(n)))
        word = transport_matrix(n)[0]
    note = f"transport word {word}; literal T S T^-1 exact: {any(literal)}, agrees mod 2: {all(literal_mod2)}"
    assert report(capsys, 5, "explicit direction, transport, mod-2 class", ok, note=note)


def test_criterion_06_survey(capsys):
    _fresh()
    t0 = time.perf_counter()
    rows = {r.n: r.verdict for r in survey(9, 199)}
    dt = time.perf_counter() - t0
    bad = [n for n in ODD(17, 199) if rows[n] != NOT_PERIODIC]
    ok = not bad and rows[9] == NO_OBSTRUCTION and rows[15] == NO_OBSTRUCTION
    assert report(capsys, 6, "survey 17..199 NotPeriodic, 9 and 15 NoObstruction", ok, dt, 600.0, f"mismatches {bad}")


def test_criterion_07_theorem_trace(capsys):
    ok = True
    details = []
    t0 = time.perf_counter()
    for n in (7, 9, 11):
        res = theorem_separatrix_trace(n, 1000, stop_at_center=True)
        hits = res.marked_hits("center")
        zero = field(n).quad(0)
        hit = bool(hits) and hits[0].point == (zero, zero)
        before = sum(1 for e in res.events[: res.events.index(hits[0])] if e.kind == "crossing") if hit else None
        details.append(f"n={n}: {before} crossings")
        ok &= hit and before <= 1000
    dt = time.perf_counter() - t0
    assert report(capsys, 7, "separatrix hits the centre exactly", ok, dt, note="; ".join(details))


def test_criterion_08_geometry(capsys):
    ok = True
    t0 = time.perf_counter()
    for n in ODD(5, 31):
        S = build_staircase(n)
        lam = field(n).lam
        m = (n - 1) // 2
        for axis in ("h", "v"):
            cyls = S.cylinders(axis)
            ok &= len(cyls) == m and all(c.modulus == lam for c in cyls)
        ok &= all(c.width == eval_poly(omega_poly(c.index), n) for c in S.cylinders("h"))
        for i in range(1, m + 1):
            p = omega_poly(i)
            ok &= len(p) - 1 == i and p[-1] == 1
        ok &= S.check_gluings() and build_double_ngon(n).check_gluings()
    dt = time.perf_counter() - t0
    assert report(capsys, 8, "axis cylinders of modulus lambda, monic widths", ok, dt)


def test_criterion_09_witness(capsys):
    t0 = time.perf_counter()
    P0 = StaircasePoint.of(7, Fraction(1, 3), Fraction(1, 3))
    path, cert = find_witness(7, P0)
    replay_ok = path.replay() == path.final and bool(path.trace.marked_hits("witness"))
    pairs = reachable_reductions(7, P0, SearchBudget(depth=16))
    dt = time.perf_counter() - t0
    ok = replay_ok and cert.verdict == NOT_PERIODIC and len(pairs) == 64
    note = f"moves {path.to_json()['moves']}, {len(pairs)} pairs"
    assert report(capsys, 9, "witness for n = 7 from (1/3, 1/3), all 64 pairs", ok, dt, 60.0, note)


def test_criterion_10_property_suites(capsys):
    # the invariant suites live in test_analysis.py; here a deterministic sample
    ok = True
    t0 = time.perf_counter()
    for a, b, N in [(1, 1, 3), (1, 2, 5), (2, 3, 7)]:
        P0 = StaircasePoint.of(7, Fraction(a, N), Fraction(b, N))
        prev = set()
        for depth in range(0, 6):
            cur = reachable_reductions(7, P0, SearchBudget(depth=depth))
            ok &= prev <= cur
            prev = cur
        path, cert = find_witness(7, P0)
        ok &= path.replay() == path.final and cert.verdict == NOT_PERIODIC
        ok &= all(d % 2 == 1 for d in path.denominators())
    recorded = []
    for n in (9, 15):
        (X, Y), _ = theorem_direction(n)
        res = saddle_connection_search(build_double_ngon(n), (-X, -Y), 150)
        recorded.append(f"n={n}: {'found' if res.found else 'none'} in {res.germs_tried} germs")
    dt = time.perf_counter() - t0
    assert report(capsys, 10, "replay, monotonicity, odd denominators", ok, dt, note="; ".join(recorded))
