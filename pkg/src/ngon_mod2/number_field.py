"""Exact arithmetic in Q(lambda), lambda = 2cos(pi/n), and in Q(lambda)(s), s = sin(pi/n).

Elements of Q(lambda) are stored as an integer numerator vector over the power
basis 1, lambda, ..., lambda^(d-1) together with a positive common denominator.
Signs under the real embedding are decided by exact zero tests followed by
integer interval evaluation at doubling precision.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from mpmath import iv
from mpmath.libmp import to_int

IntPoly = tuple  # tuple[int, ...], index = degree, no trailing zeros

START_PREC = 128
MAX_PREC = 8192

_iv_lock = threading.Lock()


# ---------------------------------------------------------------------------
# integer polynomials


def poly_trim(coeffs) -> IntPoly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a: IntPoly, b: IntPoly) -> IntPoly:
    if len(a) < len(b):
        a, b = b, a
    return poly_trim([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])


def poly_neg(a: IntPoly) -> IntPoly:
    return tuple(-x for x in a)


def poly_sub(a: IntPoly, b: IntPoly) -> IntPoly:
    return poly_add(a, poly_neg(b))


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_shift(a: IntPoly, k: int) -> IntPoly:
    return (0,) * k + tuple(a) if a else ()


def poly_divmod(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Division by a monic (or +-1 leading) integer polynomial."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = b[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have leading coefficient +-1")
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] * lead
        if c:
            q[k] = c
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return poly_trim(q), poly_trim(r)


def poly_degree(a: IntPoly) -> int:
    return len(a) - 1


def poly_str(a: IntPoly, var: str = "x") -> str:
    if not a:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'*' + mono if mono else ''}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def totient(m: int) -> int:
    result, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> IntPoly:
    """Phi_m, by exact division of x^m - 1 by the lower cyclotomic factors."""
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    f = poly_trim([-1] + [0] * (m - 1) + [1])
    for k in range(1, m):
        if m % k == 0:
            f, r = poly_divmod(f, cyclotomic(k))
            assert not r
    return f


@lru_cache(maxsize=None)
def min_poly(n: int) -> IntPoly:
    """Minimal polynomial of 2cos(pi/n), from t^d P(t + 1/t) = Phi_2n(t).

    The coefficient of t^(d+j) on the left only involves coefficients c_k of P
    with k >= j, so P is read off top-down; the full identity is then checked.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")
    phi = cyclotomic(2 * n)
    d = totient(2 * n) // 2
    if len(phi) != 2 * d + 1:
        raise ArithmeticError("degree mismatch with Phi_2n")
    c = [0] * (d + 1)
    for j in range(d, -1, -1):
        acc = phi[d + j]
        for k in range(j + 2, d + 1, 2):
            acc -= c[k] * comb(k, (k - j) // 2)
        c[j] = acc
    if expand_chebyshev_identity(tuple(c)) != phi:
        raise ArithmeticError(f"inconsistent triangular system for n={n}")
    return tuple(c)


def expand_chebyshev_identity(p: IntPoly) -> IntPoly:
    """t^deg(p) * p(t + 1/t) as an integer polynomial in t."""
    d = len(p) - 1
    out = [0] * (2 * d + 1)
    for k, ck in enumerate(p):
        if ck:
            for j in range(k + 1):
                out[d + k - 2 * j] += ck * comb(k, j)
    return poly_trim(out)


def prime_coefficient_check(n: int) -> bool:
    """Monic of degree (n-1)/2, coefficient -1 at (n-3)/2 and -(n-3)/2 at (n-5)/2."""
    p = min_poly(n)
    d = (n - 1) // 2
    if len(p) != d + 1 or p[d] != 1:
        return False
    if d - 1 >= 0 and p[d - 1] != -1:
        return False
    if d - 2 >= 0 and p[d - 2] != -(n - 3) // 2:
        return False
    return True


# ---------------------------------------------------------------------------
# number field


class FieldContext:
    """Shared, read-only data for Q(lambda_n)."""

    def __init__(self, n: int):
        self.n = n
        self.min_poly = min_poly(n)
        self.d = len(self.min_poly) - 1
        self._tail = self.min_poly[: self.d]
        self._enclosures: dict[int, tuple] = {}
        self._cheb_c: list = []
        self._cheb_s: list = []

    def __repr__(self):
        return f"FieldContext(n={self.n}, d={self.d})"

    def __reduce__(self):
        return (field, (self.n,))

    # construction helpers

    def element(self, coeffs=()) -> "FieldElement":
        """Element from a coefficient sequence (ints, Fractions, or strings) of any length."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        num = [int(f * den) for f in fr]
        return FieldElement._make(self, self._reduce(num), den)

    def from_int(self, k) -> "FieldElement":
        f = Fraction(k)
        return FieldElement._make(self, [f.numerator] + [0] * (self.d - 1), f.denominator)

    @property
    def zero(self) -> "FieldElement":
        return self.from_int(0)

    @property
    def one(self) -> "FieldElement":
        return self.from_int(1)

    @property
    def lam(self) -> "FieldElement":
        return self.element([0, 1])

    @property
    def s_squared(self) -> "FieldElement":
        return (4 - self.lam * self.lam) / 4

    @property
    def s(self) -> "QuadExtElement":
        return QuadExtElement(self.zero, self.one)

    def quad(self, a, b=0) -> "QuadExtElement":
        return QuadExtElement(self._coerce(a), self._coerce(b))

    def _coerce(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            return x
        if isinstance(x, (int, Fraction)):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into Q(lambda_{self.n})")

    def _reduce(self, num: list) -> list:
        d, tail = self.d, self._tail
        num = list(num)
        for k in range(len(num) - 1, d - 1, -1):
            c = num[k]
            if c:
                base = k - d
                for i, m in enumerate(tail):
                    if m:
                        num[base + i] -= c * m
        num = num[:d]
        num += [0] * (d - len(num))
        return num

    # Chebyshev-type sequences: C_k = 2cos(k pi/n), S_k = sin(k pi/n)/sin(pi/n)

    def cheb_c(self, k: int) -> "FieldElement":
        k = abs(k)
        seq = self._cheb_c
        if not seq:
            seq += [self.from_int(2), self.lam]
        while len(seq) <= k:
            seq.append(self.lam * seq[-1] - seq[-2])
        return seq[k]

    def cheb_s(self, k: int) -> "FieldElement":
        if k < 0:
            return -self.cheb_s(-k)
        seq = self._cheb_s
        if not seq:
            seq += [self.zero, self.one]
        while len(seq) <= k:
            seq.append(self.lam * seq[-1] - seq[-2])
        return seq[k]

    # interval enclosures of lambda^k and s*lambda^k, scaled by 2^prec

    def enclosures(self, prec: int):
        enc = self._enclosures.get(prec)
        if enc is not None:
            return enc
        with _iv_lock:
            saved = iv.prec
            iv.prec = prec + 64
            try:
                lam = 2 * iv.cos(iv.pi / self.n)
                s = iv.sin(iv.pi / self.n)
                scale = iv.mpf(2) ** prec
                lo_l, hi_l, lo_s, hi_s = [], [], [], []
                power = iv.mpf(1)
                for _ in range(self.d):
                    a = power * scale
                    b = power * s * scale
                    lo_l.append(int(to_int(a._mpi_[0], "f")))
                    hi_l.append(int(to_int(a._mpi_[1], "c")))
                    lo_s.append(int(to_int(b._mpi_[0], "f")))
                    hi_s.append(int(to_int(b._mpi_[1], "c")))
                    power = power * lam
            finally:
                iv.prec = saved
        enc = (lo_l, hi_l, lo_s, hi_s)
        self._enclosures[prec] = enc
        return enc

    def interval(self, a_num, b_num, prec: int) -> tuple[int, int]:
        """Integer bounds on 2^prec * (a(lambda) + s*b(lambda)) for integer vectors a, b."""
        lo_l, hi_l, lo_s, hi_s = self.enclosures(prec)
        lo = hi = 0
        for c, l, h in zip(a_num, lo_l, hi_l):
            if c > 0:
                lo += c * l
                hi += c * h
            elif c < 0:
                lo += c * h
                hi += c * l
        if b_num is not None:
            for c, l, h in zip(b_num, lo_s, hi_s):
                if c > 0:
                    lo += c * l
                    hi += c * h
                elif c < 0:
                    lo += c * h
                    hi += c * l
        return lo, hi

    def sign_of(self, a_num, b_num=None) -> int:
        """Sign of a(lambda) + s*b(lambda); a, b integer vectors, not both zero."""
        prec = START_PREC
        while prec <= MAX_PREC:
            lo, hi = self.interval(a_num, b_num, prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2
        raise ArithmeticError("sign undecided at maximal precision for a nonzero value")

    def approx(self, a_num, b_num=None, den: int = 1, prec: int = START_PREC) -> float:
        lo, hi = self.interval(a_num, b_num, prec)
        return float(Fraction(lo + hi, 2 * den) / (1 << prec))


@lru_cache(maxsize=None)
def field(n: int) -> FieldContext:
    """The (cached, shared) context for Q(2cos(pi/n))."""
    return FieldContext(n)


def _xgcd_inverse(a: list, m: list) -> list:
    """Inverse of polynomial a modulo m over Q (Fraction coefficient lists, low->high)."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_(x, y):
        x = list(x)
        q = [Fraction(0)] * max(len(x) - len(y) + 1, 1)
        while len(x) >= len(y) and x:
            c = x[-1] / y[-1]
            k = len(x) - len(y)
            q[k] = c
            for j, yj in enumerate(y):
                x[k + j] -= c * yj
            trim(x)
        return trim(q), x

    def sub_mul(p, q, r):  # p - q*r
        out = list(p) + [Fraction(0)] * max(0, len(q) + len(r) - 1 - len(p))
        for i, qi in enumerate(q):
            if qi:
                for j, rj in enumerate(r):
                    out[i + j] -= qi * rj
        return trim(out)

    r0, r1 = trim([Fraction(x) for x in m]), trim([Fraction(x) for x in a])
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, sub_mul(t0, q, t1)
    if len(r0) != 1:
        raise ArithmeticError("element not invertible modulo the minimal polynomial")
    c = r0[0]
    return [x / c for x in t0]


class FieldElement:
    """Element of Q(lambda), immutable, always reduced and in lowest terms."""

    __slots__ = ("ctx", "num", "den")

    @classmethod
    def _make(cls, ctx: FieldContext, num, den: int) -> "FieldElement":
        if den < 0:
            num, den = [-x for x in num], -den
        g = den
        for x in num:
            if g == 1:
                break
            g = gcd(g, x)
        if g != 1:
            num = [x // g for x in num]
            den //= g
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.num = tuple(num)
        obj.den = den
        return obj

    # structure

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_integral(self) -> bool:
        return self.den == 1

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def sign(self) -> int:
        if self.is_zero():
            return 0
        return self.ctx.sign_of(self.num)

    def __float__(self):
        return self.ctx.approx(self.num, None, self.den)

    def floor(self) -> int:
        """Exact floor of the real value."""
        if self.is_rational():
            return self.num[0] // self.den
        lo, _ = self.ctx.interval(self.num, None, START_PREC)
        k = lo // (self.den << START_PREC)
        while (self - k).sign() < 0:
            k -= 1
        while (self - (k + 1)).sign() >= 0:
            k += 1
        return k

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if isinstance(other, QuadExtElement):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.n, self.num, self.den))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("L" if k == 1 else f"L^{k}")
                parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts) if parts else "0"

    # arithmetic

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ValueError("elements from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_int(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.den == self.den:
            return FieldElement._make(self.ctx, [x + y for x, y in zip(self.num, o.num)], self.den)
        return FieldElement._make(
            self.ctx, [x * o.den + y * self.den for x, y in zip(self.num, o.num)], self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._make(self.ctx, [-x for x in self.num], self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement._make(self.ctx, [x * other for x in self.num], self.den)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.num, o.num
        d = self.ctx.d
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return FieldElement._make(self.ctx, self.ctx._reduce(prod), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(lambda)")
        if self.is_rational():
            return self.ctx.from_int(Fraction(self.den, self.num[0]))
        inv = _xgcd_inverse(list(self.num), list(self.ctx.min_poly))
        return self.ctx.element(inv) * self.den

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            if not o.num[0]:
                raise ZeroDivisionError("division by zero in Q(lambda)")
            return FieldElement._make(self.ctx, [x * o.den for x in self.num], self.den * o.num[0])
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ctx.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def is_rational(x: FieldElement) -> bool:
    return x.is_rational()


class QuadExtElement:
    """a + s*b with a, b in Q(lambda) and s = sin(pi/n), s^2 = (4 - lambda^2)/4."""

    __slots__ = ("a", "b")

    def __init__(self, a: FieldElement, b: FieldElement):
        self.a = a
        self.b = b

    @property
    def ctx(self) -> FieldContext:
        return self.a.ctx

    def _lift(self, other):
        if isinstance(other, QuadExtElement):
            return other
        if isinstance(other, FieldElement):
            return QuadExtElement(other, other.ctx.zero)
        if isinstance(other, (int, Fraction)):
            return QuadExtElement(self.ctx.from_int(other), self.ctx.zero)
        return None

    def is_zero(self) -> bool:
        # s is not in Q(lambda), so a + s b = 0 forces a = b = 0
        return self.a.is_zero() and self.b.is_zero()

    def in_base_field(self) -> bool:
        return self.b.is_zero()

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.b.is_zero():
            return self.a.sign()
        if self.a.is_zero():
            return self.b.sign()
        a, b = self.a, self.b
        return self.ctx.sign_of([x * b.den for x in a.num], [y * a.den for y in b.num])

    def __float__(self):
        a, b = self.a, self.b
        return self.ctx.approx([x * b.den for x in a.num], [y * a.den for y in b.num], a.den * b.den)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b.is_zero():
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __repr__(self):
        return f"QuadExtElement({self.a} + s*({self.b}))"

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExtElement(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElement(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExtElement(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        if b1.is_zero() and b2.is_zero():
            return QuadExtElement(a1 * a2, b1)
        real = a1 * a2
        if not (b1.is_zero() or b2.is_zero()):
            real = real + self.ctx.s_squared * (b1 * b2)
        return QuadExtElement(real, a1 * b2 + a2 * b1)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExtElement":
        return QuadExtElement(self.a, -self.b)

    def norm(self) -> FieldElement:
        """a^2 - s^2 b^2, the norm down to Q(lambda)."""
        return self.a * self.a - self.ctx.s_squared * (self.b * self.b)

    def inverse(self) -> "QuadExtElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(lambda)(s)")
        if self.b.is_zero():
            return QuadExtElement(self.a.inverse(), self.b)
        inv_norm = self.norm().inverse()
        return QuadExtElement(self.a * inv_norm, -self.b * inv_norm)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.b.is_zero():
            return QuadExtElement(self.a / o.a, self.b / o.a)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()


def encode(x) -> dict:
    """JSON form: coefficient strings over 1, lambda, ... plus a float approximation."""
    if isinstance(x, FieldElement):
        return {"a": [str(c) for c in x.coeffs], "approx": float(x)}
    if isinstance(x, QuadExtElement):
        return {"a": [str(c) for c in x.a.coeffs], "b": [str(c) for c in x.b.coeffs], "approx": float(x)}
    raise TypeError(f"cannot encode {type(x).__name__}")


def sign(x) -> int:
    """Exact sign (-1, 0, 1) of a FieldElement or QuadExtElement under the real embedding."""
    return x.sign()
