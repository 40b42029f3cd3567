"""The integer products P_{2,a}(n), P_{3,a}(n) and the real products f_n^{(alpha mod delta)}.

Each P has an exact evaluation (a norm or resultant) and a certified
interval evaluation of its defining cosine product; the two are compared
by the callers and tests.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

from ..exactnum import (GaussInt, QuadSurd, RealInterval, certified_integer,
                        cyclotomic_poly, cyclotomic_value, iv_context)
from .numtheory import jacobi, phi, prime_divisors


def _odd(n: int) -> None:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"n = {n} must be a positive odd integer")


# ---------- P_{2,a}

def p2(n: int, a: int) -> int:
    """Exact P_{2,a}(n) as |Phi_n(+-eps + i)|^2 with eps = (2|n)."""
    _odd(n)
    if a not in (1, 3):
        raise ValueError("a must be 1 or 3")
    eps = jacobi(2, n)
    z = GaussInt(eps if a == 1 else -eps, 1)
    return cyclotomic_value(n, z).norm()


def _p2_terms(n: int, a: int) -> list[int]:
    return [k for k in range(a, 8 * n, 8) if gcd(k, n) == 1]


def p2_interval(n: int, a: int, prec: int) -> RealInterval:
    _odd(n)
    ctx = iv_context(prec)
    r2 = 2 * ctx.sqrt(2)
    v = ctx.mpf(1)
    for k in _p2_terms(n, a):
        v *= 3 - r2 * ctx.cos(ctx.pi * k / (4 * n))
    return RealInterval(v, prec)


def p2_certified(n: int, a: int) -> int:
    start = 3 * len(_p2_terms(n, a)) + 64
    return certified_integer(lambda prec: p2_interval(n, a, prec), start)


# ---------- P_{3,a}

def _p3_terms(n: int, a: int) -> list[int]:
    return [k for k in range(a, 12 * n, 12) if gcd(k, n) == 1]


def p3_interval(n: int, a: int, prec: int) -> RealInterval:
    _odd(n)
    ctx = iv_context(prec)
    r3 = 2 * ctx.sqrt(3)
    v = ctx.mpf(1)
    for k in _p3_terms(n, a):
        v *= 4 - r3 * ctx.cos(ctx.pi * k / (6 * n))
    return RealInterval(v, prec)


def p3_certified(n: int, a: int) -> int:
    start = 3 * len(_p3_terms(n, a)) + 64
    return certified_integer(lambda prec: p3_interval(n, a, prec), start)


def _resultant_quadratic(poly, s: int, p: int) -> int:
    """Res(poly, X^2 - sX + p) for monic poly, via reduction to c0 + c1 X."""
    u, v = 0, 0
    for c in reversed(poly):
        # (u + vX) X = -p v + (u + s v) X
        u, v = -p * v + c, u + s * v
    return u * u + s * u * v + p * v * v


def p3_resultant(n: int, a: int) -> int:
    """Fast path for 3 not dividing n: Res(Phi_n, X^2 -+ 3 eps X + 3)."""
    _odd(n)
    if n % 3 == 0:
        raise ValueError("the resultant path needs 3 not dividing n")
    eps = jacobi(3, n)
    s = 3 * eps if a == 1 else -3 * eps
    return _resultant_quadratic(cyclotomic_poly(n), s, 3)


def p3(n: int, a: int, certify: bool = False) -> int:
    _odd(n)
    if a not in (1, 5):
        raise ValueError("a must be 1 or 5")
    if n % 3:
        val = p3_resultant(n, a)
        if certify and p3_certified(n, a) != val:
            raise ArithmeticError(f"resultant and interval disagree for n={n}, a={a}")
        return val
    return p3_certified(n, a)


def p3_pair(n: int) -> tuple[int, int]:
    """(P_{3,1}(n), P_{3,5}(n)) with the product certificate checked."""
    _odd(n)
    target = cyclotomic_value(6 * n, 3)
    if n % 3:
        a, b = p3_resultant(n, 1), p3_resultant(n, 5)
    else:
        a = p3_certified(n, 1)
        b, r = divmod(target, a)
        if r:
            raise ArithmeticError(f"P_3,1({n}) = {a} does not divide Phi_{6 * n}(3)")
        if not p3_interval(n, 5, 3 * len(_p3_terms(n, 5)) + 64).contains(b):
            # fall back to a full certified evaluation before giving up
            if p3_certified(n, 5) != b:
                raise ArithmeticError(f"P_3,5({n}) fails its interval check")
    if a * b != target:
        raise ArithmeticError(f"P_3,1 * P_3,5 != Phi_{6 * n}(3) for n={n}")
    return a, b


# ---------- f_n^{(alpha mod delta)}

_HALF_CHORDS = {
    # |1 - zeta_delta^b|^2 as a + b sqrt(D), keyed by (delta, b mod delta)
    (8, 1): (2, -1, 2), (8, 7): (2, -1, 2), (8, 3): (2, 1, 2), (8, 5): (2, 1, 2),
    (12, 1): (2, -1, 3), (12, 11): (2, -1, 3), (12, 5): (2, 1, 3), (12, 7): (2, 1, 3),
}


def _as_interval(x, prec: int) -> RealInterval:
    if isinstance(x, RealInterval):
        return x
    return RealInterval.point(x, prec)


def f_factor_count(n: int, delta: int) -> int:
    """Number of roots in the product, 2 phi(delta n) / phi(delta)."""
    return 2 * phi(delta * n) // phi(delta)


def f_eval(n: int, alpha: int, delta: int, x, prec: int = 256) -> RealInterval:
    """Certified value of prod (x - zeta_{delta n}^a) over a = +-alpha mod delta."""
    if gcd(alpha, delta) != 1:
        raise ValueError("alpha must be a unit mod delta")
    if (2 * alpha) % delta == 0:
        raise ValueError("alpha and -alpha must be distinct mod delta")
    N = delta * n
    ctx = iv_context(prec)
    xv = _as_interval(x, prec).v
    v = ctx.mpf(1)
    for a in range(alpha % delta, N, delta):
        if gcd(a, N) == 1:
            # (x - z)(x - conj z) for the pair a, -a
            v *= xv * xv - 2 * xv * ctx.cos(2 * ctx.pi * a / N) + 1
    return RealInterval(v, prec)


def _radical_part(n: int, delta: int) -> list[int]:
    """Primes of m = n / gcd(n, delta^infinity)."""
    dp = set(prime_divisors(delta))
    return [p for p in prime_divisors(n) if p not in dp]


def _chord(delta: int, b: int) -> QuadSurd:
    try:
        a, c, D = _HALF_CHORDS[(delta, b % delta)]
    except KeyError:
        raise ValueError(f"no closed form for delta={delta}") from None
    return QuadSurd.make(a, c, D)


def f_at_one_lemma(n: int, alpha: int, delta: int) -> QuadSurd:
    """Subset product over the primes of m for f_n(1)."""
    primes = _radical_part(n, delta)
    val = _chord(delta, alpha) ** 0
    for k in range(len(primes) + 1):
        for S in combinations(primes, k):
            b = alpha
            for p in S:
                b = b * pow(p, -1, delta)
            val = val * _chord(delta, b) ** (1 if k % 2 == 0 else -1)
    return val


def f_at_one_closed(n: int, alpha: int, delta: int) -> QuadSurd:
    """Specialized closed form for (delta, alpha) in (8,1), (8,3), (12,1), (12,5)."""
    if (delta, alpha) not in ((8, 1), (8, 3), (12, 1), (12, 5)):
        raise ValueError("closed form only for (8,1), (8,3), (12,1), (12,5)")
    primes = _radical_part(n, delta)
    base = QuadSurd.make(1, 1, 2) if delta == 8 else QuadSurd.make(2, 1, 3)
    if any(p % delta in (1, delta - 1) for p in primes):
        return base ** 0
    e = 1 << len(primes)
    return base ** (-e if alpha == 1 else e)


def increasing_lemma_holds(n: int, alpha: int, delta: int, x, prec: int = 256) -> bool:
    """f_n(x) >= f_n(1) ((x+1)/2)^(2 phi(delta n)/phi(delta)), certified for x > 1.

    The inequality is strict for x > 1, so an interval comparison decides it.
    """
    xi = _as_interval(x, prec)
    if not xi.certainly_gt(1):
        raise ValueError("x must be certainly > 1")
    lhs = f_eval(n, alpha, delta, x, prec)
    scale = ((xi + 1) / 2) ** f_factor_count(n, delta)
    rhs = f_at_one_closed(n, alpha, delta).to_interval(prec) * scale
    return lhs.certainly_ge(rhs)


def f_at_one_certified(n: int, alpha: int, delta: int, prec: int = 256) -> bool:
    """Closed form, subset product and the interval product at x = 1 all agree."""
    closed = f_at_one_closed(n, alpha, delta)
    if closed != f_at_one_lemma(n, alpha, delta):
        return False
    iv = f_eval(n, alpha, delta, 1, prec)
    return (closed - iv.lower).sign() >= 0 and (closed - iv.upper).sign() <= 0
