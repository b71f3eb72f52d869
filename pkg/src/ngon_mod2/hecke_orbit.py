"""Hecke group generators and the orbit of the cusp [1:0] reduced modulo 2 (and modulo odd p)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .mod_two import Inconclusive, ModTwoElement, ProjClass, ring
from .number_field import IntPoly, field, poly_add, poly_shift

ORBIT_MOD_P_LIMIT = 2**24


class Mat2:
    """2x2 matrix with entries in one field (FieldElement or QuadExtElement)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, ctx) -> "Mat2":
        return cls(ctx.one, ctx.zero, ctx.zero, ctx.one)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __eq__(self, o):
        if not isinstance(o, Mat2):
            return NotImplemented
        return self.entries() == o.entries()

    def __hash__(self):
        return hash(self.entries())

    def __pow__(self, k: int) -> "Mat2":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Mat2.identity(self.a.ctx)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def det(self):
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        det = self.det()
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def apply(self, v):
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def is_pm_identity(self) -> bool:
        one, zero = self.a.ctx.one, self.a.ctx.zero
        return self.b == zero and self.c == zero and self.a == self.d and self.a in (one, -one)

    def mod2(self) -> tuple:
        from .mod_two import reduce_mod2

        return tuple(reduce_mod2(e) for e in self.entries())

    def __repr__(self):
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


def gens(n: int):
    """(T, S, U, R): T = [[1, L], [0, 1]], S = [[0, -1], [1, 0]], U = TS, R = [[0, 1], [1, 0]]."""
    F = field(n)
    one, zero, lam = F.one, F.zero, F.lam
    T = Mat2(one, lam, zero, one)
    S = Mat2(zero, -one, one, zero)
    R = Mat2(zero, one, one, zero)
    return T, S, T * S, R


def u_power_formula(n: int, k: int) -> Mat2:
    F = field(n)
    s = F.cheb_s
    return Mat2(s(k + 1), -s(k), s(k), -s(k - 1))


def u_power_formula_check(n: int, k: int) -> bool:
    U = gens(n)[2]
    Uk = U**k
    target = u_power_formula(n, k)
    return Uk == target or Uk == -target


@lru_cache(maxsize=None)
def p_polys(i: int) -> IntPoly:
    """P_0 = 0, P_1 = 1, P_{i+1} = X P_i + P_{i-1}."""
    if i < 0:
        raise ValueError("index must be non-negative")
    if i == 0:
        return ()
    if i == 1:
        return (1,)
    return poly_add(poly_shift(p_polys(i - 1), 1), p_polys(i - 2))


def p_properties_check(i: int) -> bool:
    p = p_polys(i)
    if len(p) != i or p[-1] != 1:
        return False
    if any(c for k, c in enumerate(p) if (k - (i - 1)) % 2):
        return False
    if i >= 3 and p[i - 3] != i - 2:
        return False
    return True


# ---------------------------------------------------------------------------
# action on P^1(O/2O)


def _act(mat2, cls: ProjClass) -> ProjClass:
    a, b, c, d = mat2
    return ProjClass(a * cls.x + b * cls.y, c * cls.x + d * cls.y)


def cusp(n: int) -> ProjClass:
    R = ring(n)
    return ProjClass(R.one, R.zero)


def p_bar_sequence(n: int) -> list[ModTwoElement]:
    """P_i(lambda) mod 2 for 0 <= i <= n."""
    R = ring(n)
    lam = R.gen
    seq = [R.zero, R.one]
    while len(seq) <= n:
        seq.append(lam * seq[-1] + seq[-2])
    return seq


def orbit_formula_set(n: int) -> set[ProjClass]:
    seq = p_bar_sequence(n)
    return {ProjClass(seq[i + 1], seq[i]) for i in range(n)}


@dataclass
class OrbitSet:
    n: int
    classes: list = dc_field(default_factory=list)
    generation: list = dc_field(default_factory=list)

    def __post_init__(self):
        self._keys = {c.key for c in self.classes}

    def __len__(self):
        return len(self.classes)

    def __contains__(self, c: ProjClass) -> bool:
        return c.key in self._keys

    def __iter__(self):
        return iter(self.classes)


@lru_cache(maxsize=None)
def orbit_mod2(n: int) -> OrbitSet:
    """Closure of [1:0] under T and S mod 2, checked against the P_i description."""
    T, S, U, _ = gens(n)
    moves = [T.mod2(), S.mod2(), U.mod2()]
    start = cusp(n)
    classes, generation, seen = [start], [0], {start}
    queue = deque([(start, 0)])
    while queue:
        c, g = queue.popleft()
        for m in moves:
            nxt = _act(m, c)
            if nxt not in seen:
                seen.add(nxt)
                classes.append(nxt)
                generation.append(g + 1)
                queue.append((nxt, g + 1))
    if seen != orbit_formula_set(n):
        raise AssertionError(f"orbit closure disagrees with the P_i description for n={n}")
    return OrbitSet(n, classes, generation)


def symmetry_check(n: int) -> bool:
    seq = p_bar_sequence(n)
    return all(seq[n - i] == seq[i] for i in range(n + 1))


def su_identity_check(n: int) -> bool:
    """S U^i [1:0] = U^(n-i-1) [1:0] mod 2 for 0 <= i <= n-1."""
    _, S, U, _ = gens(n)
    s2, u2 = S.mod2(), U.mod2()
    powers = [cusp(n)]
    for _ in range(n):
        powers.append(_act(u2, powers[-1]))
    return all(_act(s2, powers[i]) == powers[n - i - 1] for i in range(n))


def orbit_contains(c: ProjClass) -> bool:
    if not c.unimodular:
        raise Inconclusive(f"{c!r} is not unimodular; membership is not meaningful", c)
    n = c.ring.n
    if n is None:
        raise ValueError("class must come from ring(n)")
    return c in orbit_mod2(n)


def strict_inclusion(n: int) -> bool:
    return len(orbit_mod2(n)) < ring(n).p1_size()


def square_plus_one_class(n: int) -> ProjClass:
    """[L^2 + 1 : 1], outside the reduced orbit whenever n is prime."""
    R = ring(n)
    return ProjClass(R(0b101), R.one)


def square_plus_one_excluded(n: int) -> bool:
    return not orbit_contains(square_plus_one_class(n))


prop51_check = square_plus_one_excluded  # name used by the public interface


# ---------------------------------------------------------------------------
# reduction modulo an odd prime (sanity companion; uses sympy's GF(p) kernels)


class _GFpRing:
    """GF(p)[X]/(P mod p) with a CRT key for pairs up to units."""

    def __init__(self, n: int, p: int):
        from sympy.polys.domains import ZZ
        from sympy.polys import galoistools as gt

        self.gt, self.K, self.p = gt, ZZ, p
        mp = [c % p for c in reversed(field(n).min_poly)]
        self.mod = gt.gf_strip(mp)
        self.d = len(self.mod) - 1
        _, facs = gt.gf_factor(self.mod, p, ZZ)
        self.locals = []
        for f, e in facs:
            self.locals.append((f, e, gt.gf_pow(f, e, p, ZZ)))

    def p1_size(self) -> int:
        out = 1
        for f, e, _ in self.locals:
            q = self.p ** (len(f) - 1)
            out *= q ** (e - 1) * (q + 1)
        return out

    def red(self, a):
        return tuple(self.gt.gf_rem(list(a), self.mod, self.p, self.K))

    def mul(self, a, b):
        return self.red(self.gt.gf_mul(list(a), list(b), self.p, self.K))

    def add(self, a, b):
        return tuple(self.gt.gf_add(list(a), list(b), self.p, self.K))

    def _rem(self, a, m):
        return tuple(self.gt.gf_rem(list(a), list(m), self.p, self.K))

    def _inv(self, a, m):
        s, _, g = self.gt.gf_gcdex(list(a), list(m), self.p, self.K)
        if g != [1]:
            return None
        return self._rem(s, m)

    def _val(self, a, f, e):
        gt, v = self.gt, 0
        while a and v < e:
            q, r = gt.gf_div(list(a), list(f), self.p, self.K)
            if r:
                break
            a, v = tuple(q), v + 1
        return e if not a else v

    def key(self, x, y):
        yi = self._inv(y, self.mod)
        if yi is not None:
            return ("y", self.mul(x, yi))
        xi = self._inv(x, self.mod)
        if xi is not None:
            return ("x", self.mul(y, xi))
        gt, K, p = self.gt, self.K, self.p
        out = []
        for f, e, fe in self.locals:
            xl, yl = self._rem(x, fe), self._rem(y, fe)
            vx, vy = self._val(xl, f, e), self._val(yl, f, e)
            if vx == e and vy == e:
                out.append(("0",))
                continue
            tag, v, num, den = ("x", vx, yl, xl) if vx <= vy else ("y", vy, xl, yl)
            fv = gt.gf_pow(f, v, p, K)
            unit = gt.gf_quo(list(den), fv, p, K)
            m = gt.gf_quo(list(fe), fv, p, K)
            inv = self._inv(unit, m)
            out.append((tag, v, self._rem(gt.gf_mul(list(num), list(inv), p, K), fe)))
        return ("crt", tuple(out))

    def unimodular(self, x, y) -> bool:
        g = self.gt.gf_gcd(self.gt.gf_gcd(list(x), list(y), self.p, self.K), self.mod, self.p, self.K)
        return g == [1]


def orbit_mod_p(n: int, p: int, limit: int = ORBIT_MOD_P_LIMIT) -> tuple[int, int]:
    """(orbit size of [1:0] in P^1(O/pO), |P^1(O/pO)|) for an odd prime p.

    Refuses when p^d exceeds ``limit`` instead of approximating.
    """
    if p % 2 == 0:
        raise ValueError("p must be odd")
    F = field(n)
    if p**F.d > limit:
        raise ValueError(f"p^d = {p}^{F.d} exceeds the enumeration limit {limit}")
    R = _GFpRing(n, p)
    lam = R.red(tuple(c % p for c in reversed(F.lam.num)))
    one, zero, minus = (1,), (), (p - 1,)
    T = (one, lam, zero, one)
    S = (zero, minus, one, zero)

    def act(m, v):
        a, b, c, d = m
        x, y = v
        return (R.add(R.mul(a, x), R.mul(b, y)), R.add(R.mul(c, x), R.mul(d, y)))

    start = (one, zero)
    seen = {R.key(*start)}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for m in (T, S):
            w = act(m, v)
            k = R.key(*w)
            if k not in seen:
                seen.add(k)
                queue.append(w)
    return len(seen), R.p1_size()
