from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ngon_mod2.hecke_orbit import gens
from ngon_mod2.mod_two import psi
from ngon_mod2.number_field import field
from ngon_mod2.surfaces import build_double_ngon, build_staircase, cross, dot, ngon_vertex, vsub
from ngon_mod2.tracer import (
    holonomy_decomposition,
    projectively_equal,
    saddle_connection_search,
    target_direction,
    theorem_direction,
    theorem_separatrix_trace,
    trace,
    transport_matrix,
    tst_transport,
    tst_transport_inverse,
)


def unit_square(n):
    S = build_staircase(n)
    k = S._by_index[S.m]
    return S, k


# -- basic traces on the staircase


def test_horizontal_trace_from_corner():
    S, k = unit_square(7)
    F = field(7)
    res = trace(S, (k, (F.zero, F.zero)), (F.one, F.zero), 100)
    assert res.reason == "singularity"
    assert res.crossings == 0
    assert res.vertex_hit.point == (F.one, F.zero)
    assert res.length_squared() == 1


def test_vertical_trace_mirrors_horizontal():
    S, k = unit_square(7)
    F = field(7)
    h = trace(S, (k, (F.zero, F.zero)), (F.one, F.zero), 100)
    v = trace(S, (k, (F.zero, F.zero)), (F.zero, F.one), 100)
    hp = h.vertex_hit.point
    assert v.vertex_hit.point == (hp[1], hp[0])
    assert v.length_squared() == h.length_squared()


def test_marked_point_on_the_diagonal():
    S, k = unit_square(7)
    F = field(7)
    half = F.from_int(Fraction(1, 2))
    surf = S.with_marked_points([(k, (half, half), "centre")])
    res = trace(surf, (k, (F.zero, F.zero)), (F.one, F.one), 10)
    kinds = [e.kind for e in res.events]
    assert kinds.index("marked") < kinds.index("vertex")
    assert res.marked_hits("centre")[0].point == (half, half)


def test_trace_errors():
    S, k = unit_square(7)
    F = field(7)
    with pytest.raises(ValueError):
        trace(S, (k, (F.zero, F.zero)), (F.zero, F.zero), 5)
    with pytest.raises(ValueError):
        trace(S, (k, (F.from_int(3), F.zero)), (F.one, F.zero), 5)
    with pytest.raises(ValueError):
        trace(S, (k, (F.zero, F.zero)), (-F.one, -F.one), 5)
    with pytest.raises(ValueError):
        theorem_separatrix_trace(7, 0)


@pytest.mark.parametrize("n", [7, 9])
def test_crossings_lie_on_their_edges(n):
    D = build_double_ngon(n)
    res = theorem_separatrix_trace(n, 40)
    for ev in res.events:
        if ev.kind != "crossing":
            continue
        a, b = D.edge(ev.polygon, ev.edge)
        assert cross(vsub(b, a), vsub(ev.point, a)).is_zero()
        u = dot(vsub(ev.point, a), vsub(b, a)) / dot(vsub(b, a), vsub(b, a))
        assert u.sign() > 0 and (u - 1).sign() < 0


def _signature(res):
    return [(e.kind, e.polygon, e.edge) for e in res.events]


@pytest.mark.parametrize("which", [0, 1, 2])
def test_affine_naturality(which):
    n = 7
    D = build_double_ngon(n)
    F = field(n)
    M = [gens(n)[0], gens(n)[1], gens(n)[2]][which]
    Mq = type(M)(*(F.quad(e) for e in M.entries()))
    (X, Y), _ = theorem_direction(n)
    start = (0, ngon_vertex(n, 1))
    base = trace(D, start, (-X, -Y), 25)
    moved = trace(D.transformed(Mq), (0, Mq.apply(start[1])), Mq.apply((-X, -Y)), 25)
    assert _signature(base) == _signature(moved)
    assert base.crossings == moved.crossings
    assert base.t_total == moved.t_total


def test_restart_from_marked_point_gives_suffix():
    n = 7
    F = field(n)
    D = build_double_ngon(n)
    full = theorem_separatrix_trace(n, 30)
    idx = next(i for i, e in enumerate(full.events) if e.kind == "marked")
    before = sum(1 for e in full.events[:idx] if e.kind == "crossing")
    (X, Y), _ = theorem_direction(n)
    rest = trace(D, (0, (F.quad(0), F.quad(0))), (-X, -Y), 30 - before)
    tail = [(e.kind, e.polygon, e.edge, e.point) for e in full.events[idx + 1 :]]
    assert [(e.kind, e.polygon, e.edge, e.point) for e in rest.events] == tail


small = st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50), max_denominator=50)


@given(small, small, small, small, st.booleans(), st.fractions(min_value=-1, max_value=1, max_denominator=40))
def test_marked_detection_matches_parameter_solve(px, py, qx, qy, aim, wiggle):
    S, k = unit_square(7)
    F = field(7)
    p = (F.from_int(px), F.from_int(py))
    q = (F.from_int(qx), F.from_int(qy))
    if p == q:
        return
    dx, dy = qx - px, qy - py
    if not aim:
        dx += wiggle / 7
    if dx == 0 and dy == 0:
        return
    # brute force: q = p + t d with t > 0, in plain rationals
    cr = dx * (qy - py) - dy * (qx - px)
    t = ((qx - px) * dx + (qy - py) * dy) / (dx * dx + dy * dy)
    expected = cr == 0 and t > 0
    surf = S.with_marked_points([(k, q, "q")])
    res = trace(surf, (k, p), (F.from_int(dx), F.from_int(dy)), 0)
    assert bool(res.marked_hits("q")) == expected


# -- the explicit direction


@pytest.mark.parametrize("n", [7, 11, 13, 17])
def test_theorem_direction_closed_form(n):
    F = field(n)
    (X, Y), (Xt, Yt) = theorem_direction(n)
    assert Xt == F.element([-1, -3, 1, 1])
    assert Yt == F.element([-1, 1, 1])
    assert Y.a.is_zero() and X.b.is_zero()


@pytest.mark.parametrize("n", [7, 9, 11, 13])
def test_holonomy_decomposition(n):
    (X, Y), _ = theorem_direction(n)
    h = holonomy_decomposition(n)
    assert (h[0][0] + h[1][0] + h[2][0], h[0][1] + h[1][1] + h[2][1]) == (X, Y)


@pytest.mark.parametrize("n", [7, 11, 13])
def test_transport(n):
    _, src = theorem_direction(n)
    out = tst_transport(n, src)
    assert projectively_equal(out, target_direction(n))
    back = tst_transport_inverse(n, out)
    assert projectively_equal(back, src)
    c = psi(*target_direction(n))
    assert (c.x.bits, c.y.bits) == (0b101, 1)


@pytest.mark.parametrize("n", [7, 11, 13])
def test_literal_tst_word_agrees_only_mod_two(n):
    T, S, _, _ = gens(n)
    _, src = theorem_direction(n)
    img = (T * S * T.inverse()).apply(src)
    assert not projectively_equal(img, target_direction(n))
    assert psi(*img) == psi(*target_direction(n))
    assert transport_matrix(n)[0] == "T R T^-1"


@pytest.mark.parametrize("n", [7, 9, 11])
def test_theorem_separatrix_hits_centre(n):
    res = theorem_separatrix_trace(n, 60)
    hits = res.marked_hits("center")
    assert hits
    assert hits[0].point == (field(n).quad(0), field(n).quad(0))
    first_vertex = [i for i, e in enumerate(res.events) if e.kind == "vertex"]
    assert not first_vertex or first_vertex[0] > res.events.index(hits[0])


def test_theorem_separatrix_n9_closes_up():
    # for n = 9 the separatrix through the centre ends at the singularity
    res = theorem_separatrix_trace(9, 1000)
    assert res.reason == "singularity"


# -- saddle connection search


def test_search_horizontal_staircase():
    S = build_staircase(7)
    F = field(7)
    res = saddle_connection_search(S, (F.one, F.zero), 10)
    assert res.found and res.trace.crossings == 0


def test_search_obstructed_direction_finds_nothing():
    S = build_staircase(7)
    res = saddle_connection_search(S, target_direction(7), 40)
    assert not res.found
    assert res.germs_tried > 0


def test_search_double_nine_gon_runs():
    D = build_double_ngon(9)
    (X, Y), _ = theorem_direction(9)
    res = saddle_connection_search(D, (-X, -Y), 150)
    assert res.germs_tried > 0
    if res.found:
        assert res.trace.vertex_hit is not None
