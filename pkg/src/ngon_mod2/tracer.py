"""Exact straight-line flow on polygon surfaces, and the explicit separatrix on the double n-gon."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .hecke_orbit import Mat2, gens
from .number_field import encode, field
from .surfaces import (
    FlatSurface,
    build_double_ngon,
    cross,
    dot,
    matrix_p,
    ngon_vertex,
    unit_vector,
    vadd,
    vscale,
    vsub,
)


@dataclass
class TraceEvent:
    kind: str  # "crossing" | "vertex" | "marked"
    polygon: int
    point: tuple
    edge: int | None = None  # crossed edge, or vertex index for "vertex"
    target: int | None = None  # polygon entered after a crossing
    label: str | None = None
    t: object = None  # flow time from the start, in units of the direction vector

    def to_json(self) -> dict:
        out = {"kind": self.kind, "polygon": self.polygon, "point": [encode(c) for c in self.point]}
        if self.edge is not None:
            out["edge" if self.kind == "crossing" else "vertex"] = self.edge
        if self.target is not None:
            out["target"] = self.target
        if self.label is not None:
            out["label"] = self.label
        return out


@dataclass
class TraceResult:
    events: list = dc_field(default_factory=list)
    reason: str = "budget"  # "singularity" | "budget" | "marked"
    crossings: int = 0
    t_total: object = None
    direction: tuple = None

    @property
    def vertex_hit(self) -> TraceEvent | None:
        return self.events[-1] if self.events and self.events[-1].kind == "vertex" else None

    def marked_hits(self, label: str | None = None) -> list:
        return [e for e in self.events if e.kind == "marked" and (label is None or e.label == label)]

    def length_squared(self):
        if self.t_total is None:
            return None
        return self.t_total * self.t_total * dot(self.direction, self.direction)

    def to_json(self) -> dict:
        return {
            "reason": self.reason,
            "crossings": self.crossings,
            "events": [e.to_json() for e in self.events],
        }


def _zero_like(x):
    return x - x


def _strictly_inside_cone(surface: FlatSurface, p: int, k: int, d, closed: bool = False) -> bool:
    """Whether direction d leaves vertex k of polygon p into the polygon."""
    poly = surface.polygons[p]
    v = poly[k]
    nxt = vsub(poly[(k + 1) % len(poly)], v)
    prv = vsub(poly[k - 1], v)
    a, b = cross(nxt, d).sign(), cross(d, prv).sign()
    if closed:
        return a >= 0 and b >= 0 and (a > 0 or dot(nxt, d).sign() > 0) and (b > 0 or dot(prv, d).sign() > 0)
    return a > 0 and b > 0


def trace(
    surface: FlatSurface,
    start: tuple,
    direction,
    max_crossings: int,
    stop_at_marked: bool = False,
) -> TraceResult:
    """Flow from ``start = (polygon, point)`` in ``direction`` until a vertex or the budget.

    All predicates are exact sign tests: a crossing exactly through a polygon
    corner is a hit on the singularity and ends the trace.
    """
    if max_crossings < 0:
        raise ValueError("max_crossings must be non-negative")
    dx, dy = direction
    if dx.sign() == 0 and dy.sign() == 0:
        raise ValueError("direction must be nonzero")
    p, pos = start
    if not surface.contains(p, pos):
        raise ValueError("start point is not in the given polygon")
    k0 = surface.vertex_index(p, pos)
    if k0 is not None and not _strictly_inside_cone(surface, p, k0, direction, closed=True):
        raise ValueError("direction does not point into the polygon from the starting vertex")

    d = (dx, dy)
    t_total = _zero_like(dx)
    result = TraceResult(direction=d)
    while True:
        poly = surface.polygons[p]
        nv = len(poly)
        exit_info = None
        for j in range(nv):
            a, b = poly[j], poly[(j + 1) % nv]
            e = vsub(b, a)
            if cross(e, d).sign() >= 0:
                continue  # edge faces the direction or is parallel to it
            sa = cross(d, vsub(a, pos)).sign()
            sb = cross(d, vsub(b, pos)).sign()
            if sa == 0 and dot(vsub(a, pos), d).sign() > 0:
                exit_info = ("vertex", j, a)
                break
            if sb == 0 and dot(vsub(b, pos), d).sign() > 0:
                exit_info = ("vertex", (j + 1) % nv, b)
                break
            if sa * sb < 0:
                ca = cross(d, vsub(a, pos))
                cb = cross(d, vsub(b, pos))
                u = ca / (ca - cb)
                exit_info = ("edge", j, vadd(a, vscale(u, e)))
                break
        if exit_info is None:
            raise ArithmeticError("no exit found from a convex polygon")
        kind, j, q = exit_info
        dd = dot(d, d)
        t_exit = dot(vsub(q, pos), d) / dd

        hits = []
        for mp, x, label in surface.marked_points:
            if mp != p:
                continue
            rel = vsub(x, pos)
            if cross(d, rel).sign() != 0:
                continue
            tm = dot(rel, d) / dd
            if tm.sign() > 0 and (tm - t_exit).sign() <= 0:
                hits.append((tm, x, label))
        hits.sort(key=lambda h: float(h[0]))
        for tm, x, label in hits:
            result.events.append(TraceEvent("marked", p, x, label=label, t=t_total + tm))
            if stop_at_marked:
                result.reason = "marked"
                result.t_total = t_total + tm
                return result

        t_total = t_total + t_exit
        if kind == "vertex":
            result.events.append(TraceEvent("vertex", p, q, edge=j, t=t_total))
            result.reason = "singularity"
            result.t_total = t_total
            return result
        if result.crossings >= max_crossings:
            result.reason = "budget"
            result.t_total = t_total
            return result
        tp, te, tr = surface.gluings[(p, j)]
        result.events.append(TraceEvent("crossing", p, q, edge=j, target=tp, t=t_total))
        result.crossings += 1
        p, pos = tp, vadd(q, tr)


# ---------------------------------------------------------------------------
# the explicit separatrix on the double n-gon


def theorem_direction(n: int):
    """((X, Y), (X~, Y~)): the separatrix direction and its staircase image.

    X = 1 + 2cos(2pi/n)(1 + cos(pi/n)), Y = sin(pi/n) lambda (2 - lambda), and
    (X~, Y~) = (2 + lambda) P (X, Y), which is checked to lie in Q(lambda)^2 and
    to equal (-1 - 3L + L^2 + L^3, -1 + L + L^2).
    """
    if n < 7 or n % 2 == 0:
        raise ValueError("theorem direction needs odd n >= 7")
    F = field(n)
    lam = F.lam
    X = F.quad(1 + F.cheb_c(2) * (1 + lam / 2))
    Y = F.quad(0, lam * (2 - lam))
    image = matrix_p(n).apply((X, Y))
    image = vscale(F.quad(lam + 2), image)
    if not (image[0].b.is_zero() and image[1].b.is_zero()):
        raise ArithmeticError("staircase image of the direction is not in Q(lambda)^2")
    Xt, Yt = image[0].a, image[1].a
    expected = (F.element([-1, -3, 1, 1]), F.element([-1, 1, 1]))
    if (Xt, Yt) != expected:
        raise ArithmeticError("staircase direction does not match the expected closed form")
    return (X, Y), (Xt, Yt)


def holonomy_decomposition(n: int):
    """Three saddle-connection holonomies summing to (X, Y).

    With u_k = (cos k pi/n, sin k pi/n): (u_2 - u_{n-1}) + (u_2 - u_{n-3}) + (1, 0).
    """
    F = field(n)
    u = lambda k: unit_vector(n, k)
    h1 = vsub(u(2), u(n - 1))
    h2 = vsub(u(2), u(n - 3))
    h3 = (F.quad(1), F.quad(0))
    return h1, h2, h3


def target_direction(n: int):
    F = field(n)
    return (F.element([-1, 0, -1]), F.element([-1, -2]))


def _candidate_words(n: int):
    T, S, _, R = gens(n)
    Ti = T.inverse()
    tst = T * S * Ti
    trt = T * R * Ti
    return [
        ("T S T^-1", tst),
        ("(T S T^-1)^-1", tst.inverse()),
        ("T R T^-1", trt),
        ("(T R T^-1)^-1", trt.inverse()),
    ]


def projectively_equal(u, v) -> bool:
    return (u[0] * v[1] - u[1] * v[0]).is_zero()


def transport_matrix(n: int) -> tuple[str, Mat2]:
    """The Hecke word carrying [X~ : Y~] exactly onto [-1 - L^2 : -1 - 2L].

    Candidates are tried in a fixed order and the first exact match is returned.
    """
    _, src = theorem_direction(n)
    dst = target_direction(n)
    for name, M in _candidate_words(n):
        if projectively_equal(M.apply(src), dst):
            return name, M
    raise ArithmeticError(f"no candidate word transports the direction exactly for n={n}")


def tst_transport(n: int, direction) -> tuple:
    _, M = transport_matrix(n)
    return M.apply(direction)


def tst_transport_inverse(n: int, direction) -> tuple:
    _, M = transport_matrix(n)
    return M.inverse().apply(direction)


def theorem_separatrix_trace(n: int, max_crossings: int = 1000, stop_at_center: bool = False) -> TraceResult:
    """Trace the separatrix from (cos 2pi/n, sin 2pi/n) through the centre of the right n-gon.

    The outgoing germ into the right polygon has direction -(X, Y).
    """
    if max_crossings <= 0:
        raise ValueError("budget must be positive")
    D = build_double_ngon(n)
    (X, Y), _ = theorem_direction(n)
    start = (0, ngon_vertex(n, 1))
    return trace(D, start, (-X, -Y), max_crossings, stop_at_marked=stop_at_center)


# ---------------------------------------------------------------------------
# bounded saddle connection search


@dataclass
class SearchResult:
    found: bool
    start: tuple | None = None  # (polygon, vertex index)
    trace: TraceResult | None = None
    germs_tried: int = 0

    @property
    def endpoints(self):
        if not self.found:
            return None
        return self.trace_start_point, self.trace.vertex_hit.point

    trace_start_point: tuple | None = None


def outgoing_germs(surface: FlatSurface, direction) -> list[tuple[int, int]]:
    out = []
    for p, poly in enumerate(surface.polygons):
        for k in range(len(poly)):
            if _strictly_inside_cone(surface, p, k, direction, closed=True):
                out.append((p, k))
    return out


def saddle_connection_search(surface: FlatSurface, direction, budget: int) -> SearchResult:
    """Trace every separatrix germ in ``direction`` up to ``budget`` crossings each."""
    germs = outgoing_germs(surface, direction)
    tried = 0
    for p, k in germs:
        tried += 1
        pt = surface.polygons[p][k]
        res = trace(surface, (p, pt), direction, budget)
        if res.reason == "singularity":
            return SearchResult(True, (p, k), res, tried, trace_start_point=pt)
    return SearchResult(False, None, None, tried)
