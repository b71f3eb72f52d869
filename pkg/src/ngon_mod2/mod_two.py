"""The ring O/2O = GF(2)[X]/(P mod 2), its units, and the projective line over it.

GF(2) polynomials are Python ints used as bit masks (bit k = coefficient of X^k).
Classes of pairs are compared through a CRT split along the factorization of the
modulus: in each local factor GF(2)[X]/(f^e) every element is f^v times a unit,
so a pair is determined up to units by the smaller valuation and one unit ratio.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .number_field import FieldElement, min_poly


# ---------------------------------------------------------------------------
# GF(2)[X] on bit masks


def deg(a: int) -> int:
    return a.bit_length() - 1


def gf2_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def gf2_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial over GF(2)")
    q, db = 0, deg(b)
    while a and deg(a) >= db:
        shift = deg(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def gf2_mod(a: int, b: int) -> int:
    return gf2_divmod(a, b)[1]


def gf2_mulmod(a: int, b: int, m: int) -> int:
    return gf2_mod(gf2_mul(a, b), m)


def gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def gf2_xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b)."""
    r0, r1, s0, s1, t0, t1 = a, b, 1, 0, 0, 1
    while r1:
        q, r = gf2_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ gf2_mul(q, s1)
        t0, t1 = t1, t0 ^ gf2_mul(q, t1)
    return r0, s0, t0


def gf2_invmod(a: int, m: int) -> int:
    g, s, _ = gf2_xgcd(gf2_mod(a, m), m)
    if g != 1:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return gf2_mod(s, m)


def gf2_powmod(a: int, e: int, m: int) -> int:
    result, a = 1, gf2_mod(a, m)
    while e:
        if e & 1:
            result = gf2_mulmod(result, a, m)
        a = gf2_mulmod(a, a, m)
        e >>= 1
    return gf2_mod(result, m)


def gf2_derivative(a: int) -> int:
    # d/dX X^k = k X^(k-1): only odd k survive
    out, k = 0, 1
    a >>= 1
    while a:
        if a & 1 and k % 2 == 1:
            out |= 1 << (k - 1)
        a >>= 1
        k += 1
    return out


def gf2_sqrt(a: int) -> int:
    """Square root of a polynomial with only even-degree terms."""
    out, k = 0, 0
    while a:
        if a & 1:
            out |= 1 << k
        if a & 2:
            raise ValueError("not a square over GF(2)")
        a >>= 2
        k += 1
    return out


def gf2_str(a: int, var: str = "X") -> str:
    if a == 0:
        return "0"
    terms = []
    for k in range(deg(a), -1, -1):
        if a >> k & 1:
            terms.append("1" if k == 0 else (var if k == 1 else f"{var}^{k}"))
    return " + ".join(terms)


def _squarefree(f: int) -> list[tuple[int, int]]:
    """Yun-style squarefree decomposition in characteristic 2."""
    if deg(f) <= 0:
        return []
    df = gf2_derivative(f)
    if df == 0:
        return [(g, 2 * e) for g, e in _squarefree(gf2_sqrt(f))]
    out = []
    c = gf2_gcd(f, df)
    w = gf2_divmod(f, c)[0]
    i = 1
    while w != 1:
        y = gf2_gcd(w, c)
        fac = gf2_divmod(w, y)[0]
        if fac != 1:
            out.append((fac, i))
        w = y
        c = gf2_divmod(c, y)[0]
        i += 1
    if c != 1:
        out += [(g, 2 * e) for g, e in _squarefree(gf2_sqrt(c))]
    return out


def _distinct_degree(f: int) -> list[tuple[int, int]]:
    out = []
    h, i = 2, 0  # h = X^(2^i) mod f
    while deg(f) >= 2 * (i + 1):
        i += 1
        h = gf2_mulmod(h, h, f)
        g = gf2_gcd(h ^ 2, f)
        if g != 1:
            out.append((g, i))
            f = gf2_divmod(f, g)[0]
            h = gf2_mod(h, f)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _equal_degree(f: int, k: int, rng: random.Random) -> list[int]:
    if deg(f) == k:
        return [f]
    while True:
        a = rng.getrandbits(deg(f)) | 2
        t, p = 0, gf2_mod(a, f)
        for _ in range(k):
            t ^= p
            p = gf2_mulmod(p, p, f)
        g = gf2_gcd(t, f)
        if 0 < deg(g) < deg(f):
            return _equal_degree(g, k, rng) + _equal_degree(gf2_divmod(f, g)[0], k, rng)


def gf2_factor(f: int, seed: int = 0) -> list[tuple[int, int]]:
    """Complete factorization of f over GF(2) as sorted (irreducible, multiplicity) pairs."""
    if f == 0:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for g, e in _squarefree(f):
        for h, k in _distinct_degree(g):
            out += [(p, e) for p in _equal_degree(h, k, rng)]
    merged: dict[int, int] = {}
    for p, e in out:
        merged[p] = merged.get(p, 0) + e
    return sorted(merged.items())


def gf2_is_irreducible(f: int) -> bool:
    fac = gf2_factor(f)
    return len(fac) == 1 and fac[0][1] == 1


# ---------------------------------------------------------------------------
# the ring and its elements


@dataclass(frozen=True)
class Factorization:
    factors: tuple  # ((f_j bits, e_j), ...)

    def product(self) -> int:
        out = 1
        for f, e in self.factors:
            for _ in range(e):
                out = gf2_mul(out, f)
        return out

    def is_field(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def __str__(self):
        parts = []
        for f, e in self.factors:
            parts.append(f"({gf2_str(f)})" + (f"^{e}" if e > 1 else ""))
        return " * ".join(parts)


class ModTwoRing:
    """GF(2)[X]/(modulus); for the number field, modulus = min_poly(n) mod 2."""

    def __init__(self, modulus: int, n: int | None = None):
        if deg(modulus) < 1:
            raise ValueError("modulus must have positive degree")
        self.modulus = modulus
        self.d = deg(modulus)
        self.n = n
        self.factorization = Factorization(tuple(gf2_factor(modulus)))
        # local data per factor: (f, e, f^e)
        self._locals = []
        for f, e in self.factorization.factors:
            fe = 1
            for _ in range(e):
                fe = gf2_mul(fe, f)
            self._locals.append((f, e, fe))

    @classmethod
    def from_modulus(cls, modulus: int) -> "ModTwoRing":
        return cls(modulus)

    def __repr__(self):
        tag = f"n={self.n}, " if self.n is not None else ""
        return f"ModTwoRing({tag}modulus={gf2_str(self.modulus)})"

    def __reduce__(self):
        if self.n is not None:
            return (ring, (self.n,))
        return (ModTwoRing, (self.modulus,))

    def __call__(self, bits: int) -> "ModTwoElement":
        return ModTwoElement(self, gf2_mod(bits, self.modulus))

    @property
    def zero(self) -> "ModTwoElement":
        return self(0)

    @property
    def one(self) -> "ModTwoElement":
        return self(1)

    @property
    def gen(self) -> "ModTwoElement":
        return self(2)

    def elements(self):
        for b in range(1 << self.d):
            yield ModTwoElement(self, b)

    def p1_size(self) -> int:
        out = 1
        for f, e in self.factorization.factors:
            q = 1 << deg(f)
            out *= q ** (e - 1) * (q + 1)
        return out

    def is_unimodular(self, x: int, y: int) -> bool:
        return gf2_gcd(gf2_gcd(x, y), self.modulus) == 1

    def local_key(self, x: int, y: int) -> tuple:
        """Canonical invariant of the pair (x, y) under multiplication by units."""
        key = []
        for f, e, fe in self._locals:
            xl, yl = gf2_mod(x, fe), gf2_mod(y, fe)
            vx, vy = _valuation(xl, f, e), _valuation(yl, f, e)
            if vx == e and vy == e:
                key.append(("0",))
            elif vx <= vy:
                key.append(("x", vx, _unit_ratio(yl, xl, f, vx, fe)))
            else:
                key.append(("y", vy, _unit_ratio(xl, yl, f, vy, fe)))
        return tuple(key)

    def all_classes(self) -> list["ProjClass"]:
        """Brute-force enumeration of unimodular classes (small rings only)."""
        if self.d > 12:
            raise ValueError("enumeration refused for d > 12")
        seen, out = set(), []
        for x in range(1 << self.d):
            for y in range(1 << self.d):
                if self.is_unimodular(x, y):
                    c = ProjClass(self(x), self(y))
                    if c.key not in seen:
                        seen.add(c.key)
                        out.append(c)
        return out


def _valuation(a: int, f: int, e: int) -> int:
    v = 0
    while v < e and a:
        q, r = gf2_divmod(a, f)
        if r:
            break
        a, v = q, v + 1
    return e if a == 0 else v


def _unit_ratio(num: int, den: int, f: int, v: int, fe: int) -> int:
    """num * (den / f^v)^(-1) mod f^e; well defined when val(num) >= v = val(den)."""
    fv = 1
    for _ in range(v):
        fv = gf2_mul(fv, f)
    unit = gf2_divmod(den, fv)[0]
    m = gf2_divmod(fe, fv)[0]
    inv = gf2_invmod(unit, m)
    return gf2_mulmod(num, inv, fe)


@lru_cache(maxsize=None)
def ring(n: int) -> ModTwoRing:
    """O/2O for O = Z[2cos(pi/n)]."""
    mod = 0
    for k, c in enumerate(min_poly(n)):
        if c % 2:
            mod |= 1 << k
    return ModTwoRing(mod, n)


class ModTwoElement:
    __slots__ = ("ring", "bits")

    def __init__(self, ring_: ModTwoRing, bits: int):
        self.ring = ring_
        self.bits = bits

    def _other(self, o):
        if isinstance(o, ModTwoElement):
            return o.bits
        if isinstance(o, int):
            return o & 1
        return None

    def __add__(self, o):
        b = self._other(o)
        if b is None:
            return NotImplemented
        return ModTwoElement(self.ring, self.bits ^ b)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, o):
        b = self._other(o)
        if b is None:
            return NotImplemented
        return ModTwoElement(self.ring, gf2_mulmod(self.bits, b, self.ring.modulus))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModTwoElement(self.ring, gf2_powmod(self.bits, k, self.ring.modulus))

    def __eq__(self, o):
        b = self._other(o)
        if b is None:
            return NotImplemented
        return self.bits == b

    def __hash__(self):
        return hash(self.bits)

    def __bool__(self):
        return self.bits != 0

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_unit(self) -> bool:
        return gf2_gcd(self.bits, self.ring.modulus) == 1

    def inverse(self) -> "ModTwoElement":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        return ModTwoElement(self.ring, gf2_invmod(self.bits, self.ring.modulus))

    def __repr__(self):
        return f"[{gf2_str(self.bits, 'L')}]"


def is_unit(x: ModTwoElement) -> bool:
    return x.is_unit()


def inverse(x: ModTwoElement) -> ModTwoElement:
    return x.inverse()


def reduce_mod2(x: FieldElement) -> ModTwoElement:
    if x.den != 1:
        raise ValueError("reduce_mod2 needs integral coefficients")
    bits = 0
    for k, c in enumerate(x.num):
        if c % 2:
            bits |= 1 << k
    return ring(x.ctx.n)(bits)


class ProjClass:
    """[x : y] in P^1(O/2O), compared up to multiplication by units."""

    __slots__ = ("x", "y", "key", "unimodular")

    def __init__(self, x: ModTwoElement, y: ModTwoElement):
        if x.ring is not y.ring:
            raise ValueError("coordinates from different rings")
        if x.is_zero() and y.is_zero():
            raise ValueError("[0:0] is not a projective class")
        R = x.ring
        self.unimodular = R.is_unimodular(x.bits, y.bits)
        if y.is_unit():
            x = x * y.inverse()
            y = R.one
            self.key = ("y", x.bits)
        elif x.is_unit():
            y = y * x.inverse()
            x = R.one
            self.key = ("x", y.bits)
        else:
            self.key = ("crt", R.local_key(x.bits, y.bits))
        self.x, self.y = x, y

    @property
    def ring(self) -> ModTwoRing:
        return self.x.ring

    def __eq__(self, other):
        if not isinstance(other, ProjClass):
            return NotImplemented
        return self.ring is other.ring and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def sort_key(self):
        return (self.x.bits, self.y.bits)

    def as_bits(self) -> list[int]:
        return [self.x.bits, self.y.bits]

    def __repr__(self):
        return f"[{gf2_str(self.x.bits, 'L')} : {gf2_str(self.y.bits, 'L')}]"


def class_eq(p: ProjClass, q: ProjClass) -> bool:
    return p == q


def factor_p2(n: int) -> Factorization:
    return ring(n).factorization


def p1_size(n: int) -> int:
    return ring(n).p1_size()


class Inconclusive(ArithmeticError):
    """Raised when a residual pair is not unimodular, so no mod-2 verdict is possible."""

    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


def psi(x: FieldElement, y: FieldElement) -> ProjClass:
    """Class of [x : y] in P^1(O/2O), after removing common factors of 2.

    Raises Inconclusive if the residual pair does not generate the unit ideal
    modulo 2, since then no coprime representative can be certified.
    """
    if x.is_zero() and y.is_zero():
        raise ValueError("psi of the zero pair")
    if x.den != 1 or y.den != 1:
        raise ValueError("psi needs integral coordinates; scale by an odd denominator first")
    while all(c % 2 == 0 for c in x.num) and all(c % 2 == 0 for c in y.num):
        x, y = x / 2, y / 2
    xb, yb = reduce_mod2(x), reduce_mod2(y)
    if not xb.ring.is_unimodular(xb.bits, yb.bits):
        raise Inconclusive(f"residual pair {xb!r}, {yb!r} is not unimodular", (xb, yb))
    return ProjClass(xb, yb)
