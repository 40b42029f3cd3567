"""Exact number types used by the trace and torus computations.

* :class:`GaussInt` -- elements of Z[i].
* :class:`ClearedValue` -- elements of Z[i][1/(1+i)], stored as num/(1+i)^e
  in canonical form.  Every Frobenius trace is one of these.
* integer polynomials as plain tuples of coefficients (lowest degree first),
  cyclotomic polynomials and fast exact cyclotomic values.
* :class:`QuadSurd` -- exact elements a + b*sqrt(D) of a real quadratic field.
* :class:`RealInterval` -- certified real enclosures on top of mpmath's
  interval context, plus integer isolation with precision doubling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

import mpmath
from mpmath.ctx_iv import MPIntervalContext


# ---------------------------------------------------------------- Z[i]

@dataclass(frozen=True, slots=True)
class GaussInt:
    re: int
    im: int = 0

    @staticmethod
    def coerce(z) -> "GaussInt":
        if isinstance(z, GaussInt):
            return z
        if isinstance(z, int):
            return GaussInt(z, 0)
        if isinstance(z, complex) and z.real.is_integer() and z.imag.is_integer():
            return GaussInt(int(z.real), int(z.imag))
        raise TypeError(f"cannot view {z!r} as a Gaussian integer")

    def __add__(self, o):
        o = GaussInt.coerce(o)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = GaussInt.coerce(o)
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussInt.coerce(o) - self

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __mul__(self, o):
        o = GaussInt.coerce(o)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a Gaussian integer")
        r, b = GaussInt(1), self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __bool__(self):
        return bool(self.re or self.im)

    def __eq__(self, o):
        if isinstance(o, int):
            return self.im == 0 and self.re == o
        if isinstance(o, GaussInt):
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def divexact(self, o) -> "GaussInt":
        """self / o, raising if the quotient is not in Z[i]."""
        o = GaussInt.coerce(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by 0 in Z[i]")
        p = self * o.conj()
        if p.re % n or p.im % n:
            raise ArithmeticError(f"{o} does not divide {self}")
        return GaussInt(p.re // n, p.im // n)

    def __complex__(self):
        return complex(self.re, self.im)

    def __repr__(self):
        return f"GaussInt({self.re}, {self.im})"

    def __str__(self):
        return _fmt_gauss(self.re, self.im)


I = GaussInt(0, 1)
ONE_PLUS_I = GaussInt(1, 1)


def i_power(k: int) -> GaussInt:
    return (GaussInt(1), GaussInt(0, 1), GaussInt(-1), GaussInt(0, -1))[k % 4]


def _fmt_gauss(a, b) -> str:
    if b == 0:
        return str(a)
    bs = {1: "i", -1: "-i"}.get(b, f"{b}i")
    if a == 0:
        return bs
    return f"{a}{bs}" if b < 0 else f"{a}+{bs}"


# ---------------------------------------------------------------- Z[i][1/(1+i)]

def _div_1pi(a: int, b: int) -> tuple[int, int]:
    # (a+bi)/(1+i) = ((a+b) + (b-a)i)/2, exact when a = b mod 2
    return (a + b) // 2, (b - a) // 2


def _mul_1pi_pow(z: GaussInt, k: int) -> GaussInt:
    # (1+i)^2 = 2i, so peel off pairs cheaply
    q, r = divmod(k, 2)
    z = (z * i_power(q)) if q else z
    z = GaussInt(z.re << q, z.im << q) if q else z
    if r:
        z = GaussInt(z.re - z.im, z.re + z.im)
    return z


@dataclass(frozen=True, slots=True)
class ClearedValue:
    """num / (1+i)^denom_exp in canonical form (use :func:`cleared_normalize`)."""

    num: GaussInt
    denom_exp: int = 0

    @staticmethod
    def of(z) -> "ClearedValue":
        if isinstance(z, ClearedValue):
            return z
        if isinstance(z, Fraction):
            return from_gauss_rational(z, Fraction(0))
        return cleared_normalize(GaussInt.coerce(z), 0)

    def __add__(self, o):
        o = ClearedValue.of(o)
        e = max(self.denom_exp, o.denom_exp)
        a = _mul_1pi_pow(self.num, e - self.denom_exp)
        b = _mul_1pi_pow(o.num, e - o.denom_exp)
        return cleared_normalize(a + b, e)

    __radd__ = __add__

    def __neg__(self):
        return ClearedValue(-self.num, self.denom_exp)

    def __sub__(self, o):
        return self + (-ClearedValue.of(o))

    def __rsub__(self, o):
        return ClearedValue.of(o) - self

    def __mul__(self, o):
        o = ClearedValue.of(o)
        return cleared_normalize(self.num * o.num, self.denom_exp + o.denom_exp)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        return cleared_normalize(self.num ** k, self.denom_exp * k)

    def conj(self) -> "ClearedValue":
        # conj(1+i) = -i (1+i)
        return cleared_normalize(self.num.conj() * i_power(self.denom_exp), self.denom_exp)

    def __eq__(self, o):
        if isinstance(o, (int, GaussInt, Fraction)):
            o = ClearedValue.of(o)
        if isinstance(o, ClearedValue):
            return self.num == o.num and self.denom_exp == o.denom_exp
        return NotImplemented

    def __hash__(self):
        return hash((self.num.re, self.num.im, self.denom_exp))

    def __bool__(self):
        return bool(self.num)

    def to_gauss_rational(self) -> tuple[Fraction, Fraction]:
        """(re, im) as exact rationals."""
        e = self.denom_exp
        # 1/(1+i)^e = (1-i)^e / 2^e
        z = self.num * (GaussInt(1, -1) ** e)
        return Fraction(z.re, 1 << e), Fraction(z.im, 1 << e)

    def __complex__(self):
        re, im = self.to_gauss_rational()
        return complex(float(re), float(im))

    def sort_key(self):
        re, im = self.to_gauss_rational()
        return (re, im)

    def rational_str(self) -> str:
        """Reduced form such as ``(-7+2i)/2`` or ``14``."""
        re, im = self.to_gauss_rational()
        den = math.lcm(re.denominator, im.denominator)
        a, b = int(re * den), int(im * den)
        body = _fmt_gauss(a, b)
        if den == 1:
            return body
        if a and b:
            body = f"({body})"
        return f"{body}/{den}"

    def __str__(self):
        return self.rational_str()

    def __repr__(self):
        return f"ClearedValue({self.long_str()})"

    def long_str(self) -> str:
        return f"{self.num.re}{self.num.im:+d}i over (1+i)^{self.denom_exp}"


def cleared_normalize(num: GaussInt, e: int) -> ClearedValue:
    if e < 0:
        raise ValueError("denominator exponent must be >= 0")
    if not num:
        return ClearedValue(GaussInt(0), 0)
    a, b = num.re, num.im
    # strip factors of 2 = -i(1+i)^2 first
    if e >= 2:
        k = min(_v2(a), _v2(b), e // 2)
        if k:
            a >>= k
            b >>= k
            # 2^k = (-i)^k (1+i)^{2k}; we dropped 2^k but only (1+i)^{2k}
            z = GaussInt(a, b) * i_power(-k)
            a, b = z.re, z.im
            e -= 2 * k
    while e and not (a - b) & 1:
        a, b = _div_1pi(a, b)
        e -= 1
    return ClearedValue(GaussInt(a, b), e)


def _v2(a: int) -> int:
    if a == 0:
        return 1 << 30
    return (a & -a).bit_length() - 1


def abs_square(v: ClearedValue) -> Fraction:
    return Fraction(v.num.norm(), 1 << v.denom_exp)


def from_gauss_rational(re: Fraction, im: Fraction) -> ClearedValue:
    """Embed (re + im i) if its denominator is a power of two."""
    re, im = Fraction(re), Fraction(im)
    den = math.lcm(re.denominator, im.denominator)
    k = den.bit_length() - 1
    if den != 1 << k:
        raise ValueError("denominator is not a power of 2")
    # x / 2^k = x i^k / (1+i)^{2k}
    z = GaussInt(int(re * den), int(im * den)) * i_power(k)
    return cleared_normalize(z, 2 * k)


# ---------------------------------------------------------------- integer polynomials

IntPoly = tuple  # coefficients, lowest degree first; () is zero


def poly_trim(c) -> IntPoly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(p: IntPoly, q: IntPoly) -> IntPoly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p: IntPoly, q: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Division by a monic (or unit-leading) q over Z."""
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead = q[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have leading coefficient +-1")
    r = list(poly_trim(p))
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return (), tuple(r)
    quo = [0] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq] * lead
        quo[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return poly_trim(quo), poly_trim(r[:dq])


def eval_poly_int(p: IntPoly, m: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * m + c
    return acc


def eval_poly_gauss(p: IntPoly, z) -> GaussInt:
    z = GaussInt.coerce(z)
    acc = GaussInt(0)
    for c in reversed(p):
        acc = acc * z + c
    return acc


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    mu, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            mu = -mu
        p += 1
    return -mu if n > 1 else mu


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=256)
def cyclotomic_poly(n: int) -> IntPoly:
    """Phi_n via the Mobius product of (X^{n/d} - 1)^{mu(d)}."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num, den = (1,), (1,)
    for d in divisors(n):
        mu = mobius(d)
        if mu == 0:
            continue
        f = (-1,) + (0,) * (n // d - 1) + (1,)
        if mu == 1:
            num = poly_mul(num, f)
        else:
            den = poly_mul(den, f)
    q, r = poly_divmod(num, den)
    assert not r
    return q


def cyclotomic_value(n: int, z):
    """Phi_n(z) exactly for an int or GaussInt z, without building Phi_n.

    Uses prod (z^{n/d} - 1)^{mu(d)}; falls back to the polynomial when a
    factor z^{n/d} - 1 vanishes (z a root of unity).
    """
    gauss = isinstance(z, GaussInt)
    num = GaussInt(1) if gauss else 1
    den = GaussInt(1) if gauss else 1
    for d in divisors(n):
        mu = mobius(d)
        if mu == 0:
            continue
        f = z ** (n // d) - 1
        if not f:
            p = cyclotomic_poly(n)
            return eval_poly_gauss(p, z) if gauss else eval_poly_int(p, z)
        if mu == 1:
            num = num * f
        else:
            den = den * f
    if gauss:
        return num.divexact(den)
    q, r = divmod(num, den)
    assert r == 0
    return q


# ---------------------------------------------------------------- Q(sqrt D)

@dataclass(frozen=True)
class QuadSurd:
    """a + b*sqrt(D) with rational a, b and squarefree D > 1."""

    a: Fraction
    b: Fraction
    D: int

    @staticmethod
    def make(a, b, D) -> "QuadSurd":
        return QuadSurd(Fraction(a), Fraction(b), D)

    def _chk(self, o):
        if isinstance(o, (int, Fraction)):
            return QuadSurd(Fraction(o), Fraction(0), self.D)
        if o.D != self.D:
            raise ValueError("mixing different quadratic fields")
        return o

    def __add__(self, o):
        o = self._chk(o)
        return QuadSurd(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.D)

    def __sub__(self, o):
        return self + (-self._chk(o))

    def __mul__(self, o):
        o = self._chk(o)
        return QuadSurd(self.a * o.a + self.D * self.b * o.b,
                        self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def conj(self):
        return QuadSurd(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero in Q(sqrt D)")
        c = self.conj()
        return QuadSurd(c.a / n, c.b / n, self.D)

    def __truediv__(self, o):
        return self * self._chk(o).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r, base = QuadSurd(Fraction(1), Fraction(0), self.D), self
        while k:
            if k & 1:
                r = r * base
            base = base * base
            k >>= 1
        return r

    def sign(self) -> int:
        """Exact sign of a + b sqrt(D)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa or sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with D b^2
        c = self.a * self.a - self.D * self.b * self.b
        cs = (c > 0) - (c < 0)
        return sa * cs

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.b == 0 and self.a == o
        if isinstance(o, QuadSurd):
            return (self.a, self.b, self.D) == (o.a, o.b, o.D)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.D))

    def __lt__(self, o):
        return (self - self._chk(o)).sign() < 0

    def __le__(self, o):
        return (self - self._chk(o)).sign() <= 0

    def to_interval(self, prec: int = 128) -> "RealInterval":
        ctx = iv_context(prec)
        v = ctx.mpf(_frac_iv(ctx, self.a)) + _frac_iv(ctx, self.b) * ctx.sqrt(self.D)
        return RealInterval(v, prec)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt({self.D})"
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt({self.D})"


# ---------------------------------------------------------------- intervals

DEFAULT_PRECISION = 128
PRECISION_CAP = 1 << 20


class IsolationError(ArithmeticError):
    """An interval product never isolated a single integer."""


@lru_cache(maxsize=64)
def iv_context(prec: int) -> MPIntervalContext:
    ctx = MPIntervalContext()
    ctx.prec = prec
    return ctx


def _frac_iv(ctx, x: Fraction):
    x = Fraction(x)
    return ctx.mpf(x.numerator) / x.denominator


def _mpf_to_fraction(x) -> Fraction:
    # read the raw tuple; converting through mpmath.mpf would round to mp.prec
    sign, man, exp, _ = x
    if not man and exp:
        raise ArithmeticError("interval endpoint is not finite")
    m = -int(man) if sign else int(man)
    e = int(exp)
    return Fraction(m << e) if e >= 0 else Fraction(m, 1 << -e)


class RealInterval:
    """Closed real interval with outward-rounded endpoints.

    Thin wrapper over an mpmath interval at a fixed working precision.
    """

    __slots__ = ("v", "prec")

    def __init__(self, v, prec: int = DEFAULT_PRECISION):
        self.v = v
        self.prec = prec

    @property
    def ctx(self):
        return iv_context(self.prec)

    @classmethod
    def point(cls, x, prec: int = DEFAULT_PRECISION) -> "RealInterval":
        ctx = iv_context(prec)
        if isinstance(x, Fraction):
            return cls(_frac_iv(ctx, x), prec)
        if isinstance(x, QuadSurd):
            return x.to_interval(prec)
        return cls(ctx.mpf(x), prec)

    @classmethod
    def hull(cls, lo, hi, prec: int = DEFAULT_PRECISION) -> "RealInterval":
        ctx = iv_context(prec)
        a = _frac_iv(ctx, Fraction(lo))
        b = _frac_iv(ctx, Fraction(hi))
        return cls(ctx.mpf([a.a, b.b]), prec)

    def _wrap(self, o):
        if isinstance(o, RealInterval):
            return o.v
        if isinstance(o, Fraction):
            return _frac_iv(self.ctx, o)
        return self.ctx.mpf(o)

    def __add__(self, o):
        return RealInterval(self.v + self._wrap(o), self.prec)

    __radd__ = __add__

    def __sub__(self, o):
        return RealInterval(self.v - self._wrap(o), self.prec)

    def __rsub__(self, o):
        return RealInterval(self._wrap(o) - self.v, self.prec)

    def __mul__(self, o):
        return RealInterval(self.v * self._wrap(o), self.prec)

    __rmul__ = __mul__

    def __truediv__(self, o):
        return RealInterval(self.v / self._wrap(o), self.prec)

    def __neg__(self):
        return RealInterval(-self.v, self.prec)

    def __pow__(self, k: int):
        return RealInterval(self.v ** k, self.prec)

    def sqrt(self):
        return RealInterval(self.ctx.sqrt(self.v), self.prec)

    def cos(self):
        return RealInterval(self.ctx.cos(self.v), self.prec)

    @property
    def lower(self) -> Fraction:
        return _mpf_to_fraction(self.v._mpi_[0])

    @property
    def upper(self) -> Fraction:
        return _mpf_to_fraction(self.v._mpi_[1])

    def contains(self, x) -> bool:
        if isinstance(x, RealInterval):
            return self.lower <= x.lower and x.upper <= self.upper
        x = Fraction(x)
        return self.lower <= x <= self.upper

    def certainly_ge(self, o) -> bool:
        lo = o.upper if isinstance(o, RealInterval) else Fraction(o)
        return self.lower >= lo

    def certainly_gt(self, o) -> bool:
        lo = o.upper if isinstance(o, RealInterval) else Fraction(o)
        return self.lower > lo

    def isolate_integer(self) -> int | None:
        """The unique integer inside, if exactly one and width < 1."""
        lo, hi = self.lower, self.upper
        if hi - lo >= 1:
            return None
        c = math.ceil(lo)
        return c if c <= hi else None

    def __repr__(self):
        return f"RealInterval([{mpmath.nstr(self.v.a, 15)}, {mpmath.nstr(self.v.b, 15)}], prec={self.prec})"


RealLike = Union[int, Fraction, RealInterval]


def certified_integer(build: Callable[[int], RealInterval], prec: int = DEFAULT_PRECISION,
                      cap: int = PRECISION_CAP) -> int:
    """Evaluate ``build(prec)`` with doubling precision until it isolates an integer."""
    while prec <= cap:
        r = build(prec).isolate_integer()
        if r is not None:
            return r
        prec *= 2
    raise IsolationError(f"no integer isolated below {cap} bits")
