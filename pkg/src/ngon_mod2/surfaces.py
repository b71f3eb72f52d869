"""Translation surfaces: the staircase model and the double regular n-gon.

The staircase is laid out with the unit square R_m (m = (n-1)/2) at [0,1]^2.
Rectangles with index above m zigzag right/down, those below m are their mirror
images under (x, y) -> (y, x). Every rectangle corner is the single cone point.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .hecke_orbit import Mat2
from .mod_two import Inconclusive
from .number_field import FieldElement, IntPoly, field, poly_shift, poly_sub


class SingularPointError(ValueError):
    """The point is the cone singularity, where the affine maps are not point actions."""


# ---------------------------------------------------------------------------
# polynomials Q_i and the widths omega_i


@lru_cache(maxsize=None)
def q_polys(i: int) -> IntPoly:
    """Q_0 = Q_1 = 1, Q_{i+1} = X Q_i - Q_{i-1}."""
    if i < 0:
        raise ValueError("index must be non-negative")
    if i <= 1:
        return (1,)
    return poly_sub(poly_shift(q_polys(i - 1), 1), q_polys(i - 2))


def omega_poly(i: int) -> IntPoly:
    """Width of the axis cylinder of height Q_i, as a polynomial in lambda (X * Q_i)."""
    return poly_shift(q_polys(i), 1)


def eval_poly(p: IntPoly, n: int) -> FieldElement:
    F = field(n)
    out, lam = F.zero, F.lam
    for c in reversed(p):
        out = out * lam + c
    return out


def q_value(n: int, i: int) -> FieldElement:
    return eval_poly(q_polys(i), n)


# ---------------------------------------------------------------------------
# generic polygon surfaces


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def vsub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def vadd(u, v):
    return (u[0] + v[0], u[1] + v[1])


def vscale(c, u):
    return (c * u[0], c * u[1])


@dataclass
class FlatSurface:
    """Convex polygons (CCW vertex lists) with edges paired by translations.

    ``gluings[(p, e)] = (q, f, t)`` means edge e of polygon p is identified with
    edge f of polygon q, and adding t to a point of the first edge gives the
    matching point of the second. Edge e runs from vertex e to vertex e+1.
    """

    n: int
    kind: str
    polygons: list
    gluings: dict
    marked_points: list  # (polygon, point, label)

    def edge(self, p: int, e: int):
        poly = self.polygons[p]
        return poly[e], poly[(e + 1) % len(poly)]

    def edges(self):
        for p, poly in enumerate(self.polygons):
            for e in range(len(poly)):
                yield p, e

    def area(self):
        total = None
        for poly in self.polygons:
            a = poly[0]
            for k in range(1, len(poly) - 1):
                tri = cross(vsub(poly[k], a), vsub(poly[k + 1], a))
                total = tri if total is None else total + tri
        return total / 2

    def check_gluings(self) -> bool:
        """Every edge glued once, partner edges antiparallel and matched by the translation."""
        for (p, e), (q, f, t) in self.gluings.items():
            if self.gluings.get((q, f)) is None:
                return False
            q2, f2, t2 = self.gluings[(q, f)]
            if (q2, f2) != (p, e) or vadd(t, t2) != (0 * t[0], 0 * t[1]):
                return False
            a, b = self.edge(p, e)
            c, d = self.edge(q, f)
            if vadd(a, t) != d or vadd(b, t) != c:
                return False
        return len(self.gluings) == sum(len(poly) for poly in self.polygons)

    def contains(self, p: int, point) -> bool:
        poly = self.polygons[p]
        for k in range(len(poly)):
            a, b = poly[k], poly[(k + 1) % len(poly)]
            if cross(vsub(b, a), vsub(point, a)).sign() < 0:
                return False
        return True

    def vertex_index(self, p: int, point):
        for k, v in enumerate(self.polygons[p]):
            if v == point:
                return k
        return None

    def transformed(self, M: Mat2) -> "FlatSurface":
        """Image under a linear map of positive determinant (polygons stay CCW)."""
        polys = [[M.apply(v) for v in poly] for poly in self.polygons]
        glue = {k: (q, f, M.apply(t)) for k, (q, f, t) in self.gluings.items()}
        marks = [(p, M.apply(x), label) for p, x, label in self.marked_points]
        return FlatSurface(self.n, self.kind + "*", polys, glue, marks)

    def with_marked_points(self, extra) -> "FlatSurface":
        return FlatSurface(self.n, self.kind, self.polygons, self.gluings, list(self.marked_points) + list(extra))

    def to_json(self) -> dict:
        from .number_field import encode

        return {
            "n": self.n,
            "kind": self.kind,
            "polygons": [[[encode(c) for c in v] for v in poly] for poly in self.polygons],
            "gluings": [
                {"from": [p, e], "to": [q, f], "translation": [encode(c) for c in t]}
                for (p, e), (q, f, t) in sorted(self.gluings.items())
            ],
            "marked_points": [
                {"polygon": p, "point": [encode(c) for c in x], "label": label}
                for p, x, label in self.marked_points
            ],
        }


# ---------------------------------------------------------------------------
# staircase


@dataclass(frozen=True)
class Rect:
    index: int  # the i of R_i, 1 <= i <= n-2
    x0: FieldElement
    x1: FieldElement
    y0: FieldElement
    y1: FieldElement

    @property
    def width(self):
        return self.x1 - self.x0

    @property
    def height(self):
        return self.y1 - self.y0

    def vertices(self):
        return [(self.x0, self.y0), (self.x1, self.y0), (self.x1, self.y1), (self.x0, self.y1)]

    def swapped(self) -> tuple:
        return (self.y0, self.y1, self.x0, self.x1)

    def contains(self, x, y) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def is_corner(self, x, y) -> bool:
        return (x == self.x0 or x == self.x1) and (y == self.y0 or y == self.y1)


@dataclass(frozen=True)
class Cylinder:
    """Maximal axis-parallel strip: ``width`` along the axis, ``height`` across it.

    For a horizontal cylinder ``start`` is its left x and ``floor`` its bottom y;
    for a vertical one ``start`` is its bottom y and ``floor`` its left x.
    """

    axis: str  # "h" or "v"
    rects: tuple  # polygon indices, ordered along the axis
    start: FieldElement
    floor: FieldElement
    width: FieldElement
    height: FieldElement
    index: int  # i such that height == Q_i

    @property
    def modulus(self):
        return self.width / self.height

    def along(self, x, y):
        return x if self.axis == "h" else y

    def across(self, x, y):
        return y if self.axis == "h" else x


@dataclass(frozen=True)
class StaircasePoint:
    n: int
    x: FieldElement
    y: FieldElement

    @classmethod
    def of(cls, n: int, x, y) -> "StaircasePoint":
        F = field(n)
        return canonical(cls(n, F._coerce(Fraction(x)) if not isinstance(x, FieldElement) else x,
                             F._coerce(Fraction(y)) if not isinstance(y, FieldElement) else y))

    @property
    def denominator(self) -> int:
        a, b = self.x.den, self.y.den
        from math import lcm

        return lcm(a, b)

    def scaled(self):
        """(N, N*x, N*y) with N the common denominator."""
        N = self.denominator
        return N, self.x * N, self.y * N

    def __repr__(self):
        return f"StaircasePoint(n={self.n}, x={self.x}, y={self.y})"


class Staircase(FlatSurface):
    def __init__(self, n: int):
        if n < 5 or n % 2 == 0:
            raise ValueError(f"staircase needs odd n >= 5, got {n}")
        F = field(n)
        m = (n - 1) // 2
        self.n = n
        self.m = m
        Q = [q_value(n, i) for i in range(m + 2)]
        self.Q = Q
        if not Q[m + 1].is_zero():
            raise ArithmeticError("Q_{m+1} should vanish")
        zero, one = F.zero, F.one
        upper = [Rect(m, zero, one, zero, one)]
        for i in range(1, m):
            prev = upper[-1]
            w = Q[2 * ((i + 1) // 2)]
            h = Q[2 * (i // 2) + 1]
            if i % 2:
                r = Rect(m + i, prev.x1, prev.x1 + w, prev.y0, prev.y0 + h)
            else:
                r = Rect(m + i, prev.x0, prev.x0 + w, prev.y0 - h, prev.y0)
            upper.append(r)
        lower = [Rect(m - i, r.y0, r.y1, r.x0, r.x1) for i, r in enumerate(upper) if i > 0]
        rects = sorted(lower + upper, key=lambda r: r.index)
        self.rects = rects
        self._by_index = {r.index: k for k, r in enumerate(rects)}
        polygons = [r.vertices() for r in rects]
        self.h_cylinders = self._strips("h")
        self.v_cylinders = self._strips("v")
        self._h_of = {k: c for c in self.h_cylinders for k in c.rects}
        self._v_of = {k: c for c in self.v_cylinders for k in c.rects}
        super().__init__(n, "staircase", polygons, self._glue(), [])

    def rect(self, i: int) -> Rect:
        return self.rects[self._by_index[i]]

    def _strips(self, axis: str):
        rects = self.rects
        # adjacency: share a full side perpendicular to the axis
        def nxt(a: Rect, b: Rect) -> bool:
            if axis == "h":
                return a.x1 == b.x0 and a.y0 == b.y0 and a.y1 == b.y1
            return a.y1 == b.y0 and a.x0 == b.x0 and a.x1 == b.x1

        succ = {}
        has_pred = set()
        for i, a in enumerate(rects):
            for j, b in enumerate(rects):
                if i != j and nxt(a, b):
                    succ[i] = j
                    has_pred.add(j)
        out = []
        for i in range(len(rects)):
            if i in has_pred:
                continue
            chain = [i]
            while chain[-1] in succ:
                chain.append(succ[chain[-1]])
            first, last = rects[chain[0]], rects[chain[-1]]
            if axis == "h":
                start, end, floor, height = first.x0, last.x1, first.y0, first.height
            else:
                start, end, floor, height = first.y0, last.y1, first.x0, first.width
            idx = next(k for k in range(1, self.m + 1) if self.Q[k] == height)
            out.append(Cylinder(axis, tuple(chain), start, floor, end - start, height, idx))
        out.sort(key=lambda c: c.index)
        return out

    def _glue(self):
        F = field(self.n)
        zero = F.zero
        glue = {}
        for cyls, (fwd, back) in ((self.h_cylinders, (1, 3)), (self.v_cylinders, (2, 0))):
            for c in cyls:
                chain = c.rects
                for a, b in zip(chain, chain[1:]):
                    glue[(a, fwd)] = (b, back, (zero, zero))
                    glue[(b, back)] = (a, fwd, (zero, zero))
                shift = (c.width, zero) if c.axis == "h" else (zero, c.width)
                glue[(chain[-1], fwd)] = (chain[0], back, (-shift[0], -shift[1]))
                glue[(chain[0], back)] = (chain[-1], fwd, shift)
        return glue

    # -- cylinders

    def cylinders(self, axis: str):
        return list(self.h_cylinders if axis == "h" else self.v_cylinders)

    def locate(self, x, y) -> list[int]:
        return [k for k, r in enumerate(self.rects) if r.contains(x, y)]

    def cylinder_at(self, x, y, axis: str) -> Cylinder:
        ks = self.locate(x, y)
        if not ks:
            raise ValueError("point outside the staircase template")
        return (self._h_of if axis == "h" else self._v_of)[ks[0]]

    # -- points

    def canonical(self, x, y) -> tuple:
        ks = self.locate(x, y)
        if not ks:
            raise ValueError(f"point ({x}, {y}) outside the staircase template")
        if any(self.rects[k].is_corner(x, y) for k in ks):
            raise SingularPointError("point is the cone singularity")
        cands = [(x, y)]
        seen = set()
        for k in ks:
            for c in (self._h_of[k], self._v_of[k]):
                if id(c) in seen:
                    continue
                seen.add(id(c))
                a = c.along(x, y)
                if a == c.start or a == c.start + c.width:
                    step = c.width if a == c.start else -c.width
                    cands.append((x + step, y) if c.axis == "h" else (x, y + step))
        best = cands[0]
        for p in cands[1:]:
            s = (p[0] - best[0]).sign()
            if s < 0 or (s == 0 and (p[1] - best[1]).sign() < 0):
                best = p
        return best

    def act_T(self, x, y, k: int = 1):
        c = self.cylinder_at(x, y, "h")
        F = field(self.n)
        xs = x + F.lam * (y - c.floor) * k
        t = ((xs - c.start) / c.width).floor()
        return self.canonical(xs - c.width * t, y)

    def act_R(self, x, y):
        return self.canonical(y, x)

    def act_S(self, x, y):
        ks = self.locate(x, y)
        if not ks:
            raise ValueError("point outside the staircase template")
        r = self.rects[ks[0]]
        return self.canonical(r.y0 + r.y1 - y, x)

    def s_correspondence(self) -> dict:
        """R_j -> index of the template rectangle its rotation is translated onto."""
        out = {}
        dims = {(r.width, r.height): r.index for r in self.rects}
        for r in self.rects:
            key = (r.height, r.width)
            if key not in dims:
                raise ArithmeticError(f"rotated R_{r.index} matches no template rectangle")
            out[r.index] = dims[key]
        if len(set(out.values())) != len(out):
            raise ArithmeticError("ambiguous rectangle correspondence for the rotation")
        return out

    def boundary_images_agree(self, move) -> bool:
        """For every glued edge pair, the two representatives of an edge point map to one point."""
        for (p, e), (q, f, t) in self.gluings.items():
            a, b = self.edge(p, e)
            mid = vscale(Fraction(1, 2), vadd(a, b))
            # an off-centre point too, to catch reflections along the edge
            third = vadd(a, vscale(Fraction(1, 3), vsub(b, a)))
            for pt in (mid, third):
                other = vadd(pt, t)
                if move(self, *self.canonical(*pt)) != move(self, *self.canonical(*other)):
                    return False
        return True

    def rational_height(self, x, y, cyl: Cylinder) -> bool:
        h = cyl.across(x, y) - cyl.floor
        if h.sign() < 0 or (h - cyl.height).sign() > 0:
            raise ValueError("point not in the given cylinder")
        return (h / cyl.height).is_rational()

    def axis_heights_rational(self, x, y) -> bool:
        return self.rational_height(x, y, self.cylinder_at(x, y, "h")) and self.rational_height(
            x, y, self.cylinder_at(x, y, "v")
        )


@lru_cache(maxsize=None)
def build_staircase(n: int) -> Staircase:
    return Staircase(n)


def cylinders(surface: Staircase, axis: str):
    return surface.cylinders(axis)


def canonical(p: StaircasePoint) -> StaircasePoint:
    S = build_staircase(p.n)
    return StaircasePoint(p.n, *S.canonical(p.x, p.y))


def act_T(p: StaircasePoint, k: int = 1) -> StaircasePoint:
    return StaircasePoint(p.n, *build_staircase(p.n).act_T(p.x, p.y, k))


def act_S(p: StaircasePoint) -> StaircasePoint:
    return StaircasePoint(p.n, *build_staircase(p.n).act_S(p.x, p.y))


def act_R(p: StaircasePoint) -> StaircasePoint:
    return StaircasePoint(p.n, *build_staircase(p.n).act_R(p.x, p.y))


def rational_height(p: StaircasePoint, cyl: Cylinder) -> bool:
    return build_staircase(p.n).rational_height(p.x, p.y, cyl)


def periodic_point_test(p: StaircasePoint, budget: int = 2000) -> bool:
    """Exact test for having a finite orbit under the affine group.

    Explores the orbit under T, T^-1, S and R. An irrational axis height anywhere
    in the orbit proves the point is not periodic. If the orbit closes with all
    heights rational, every cylinder (each is an affine image of an axis
    cylinder) sees a rational height and the point is periodic. Running out of
    budget before either happens raises Inconclusive.
    """
    S = build_staircase(p.n)
    start = S.canonical(p.x, p.y)
    seen = {start}
    queue = deque([start])
    moves = (lambda a, b: S.act_T(a, b, 1), lambda a, b: S.act_T(a, b, -1), S.act_S, S.act_R)
    while queue:
        pt = queue.popleft()
        if not S.axis_heights_rational(*pt):
            return False
        for mv in moves:
            q = mv(*pt)
            if q not in seen:
                if len(seen) >= budget:
                    raise Inconclusive(f"orbit exceeds {budget} points without an irrational height")
                seen.add(q)
                queue.append(q)
    return True


# ---------------------------------------------------------------------------
# double regular n-gon


def ngon_vertex(n: int, k: int):
    """(cos 2k pi/n, sin 2k pi/n) in the quadratic extension."""
    F = field(n)
    return (F.quad(F.cheb_c(2 * k) / 2), F.quad(0, F.cheb_s(2 * k)))


def unit_vector(n: int, k: int):
    """(cos k pi/n, sin k pi/n)."""
    F = field(n)
    return (F.quad(F.cheb_c(k) / 2), F.quad(0, F.cheb_s(k)))


@lru_cache(maxsize=None)
def build_double_ngon(n: int) -> FlatSurface:
    """Two regular n-gons of circumradius 1, the right one centred at the origin.

    The left polygon is the point reflection of the right one, centred at
    (-lambda, 0); edge k of the right polygon is glued to edge k of the left one.
    """
    if n < 5 or n % 2 == 0:
        raise ValueError(f"double n-gon needs odd n >= 5, got {n}")
    F = field(n)
    shift = (F.quad(F.lam), F.quad(0))
    right = [ngon_vertex(n, k) for k in range(n)]
    left = [vsub((-v[0], -v[1]), shift) for v in right]
    glue = {}
    for k in range(n):
        t = vsub(vsub((-right[k][0], -right[k][1]), right[(k + 1) % n]), shift)
        glue[(0, k)] = (1, k, t)
        glue[(1, k)] = (0, k, (-t[0], -t[1]))
    origin = (F.quad(0), F.quad(0))
    return FlatSurface(n, "double-ngon", [right, left], glue, [(0, origin, "center")])


def matrix_p(n: int) -> Mat2:
    """Linear map taking the double n-gon (circumradius 1) onto the staircase.

    P = [[1/(2+L), -1/(2s)], [1/(2+L), 1/(2s)]], s = sin(pi/n).
    """
    F = field(n)
    a = F.quad((F.lam + 2).inverse())
    b = F.quad(0, (F.s_squared * 2).inverse())  # 1/(2s) = s / (2 s^2)
    return Mat2(a, -b, a, b)


def staircase_area(n: int) -> FieldElement:
    total = field(n).zero
    for r in build_staircase(n).rects:
        total = total + r.width * r.height
    return total
