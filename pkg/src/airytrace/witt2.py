"""Length-2 Witt vectors over binary fields and the character psi2.

W_2(F_2) is identified with Z/4 by [a, b] -> a^2 + 2b, and psi2 sends the
class c to i^c.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactnum import GaussInt, i_power
from .gf2m import FieldCtx, vec_frobenius, vec_pow, vec_trace


@dataclass(frozen=True)
class Witt2:
    ctx: FieldCtx
    a: int
    b: int

    def __post_init__(self):
        self.ctx.check(self.a)
        self.ctx.check(self.b)

    def __add__(self, other: "Witt2") -> "Witt2":
        return w_add(self, other)

    def __neg__(self) -> "Witt2":
        return w_neg(self)


def _same_field(u: Witt2, v: Witt2) -> FieldCtx:
    if u.ctx != v.ctx:
        raise ValueError("Witt vectors over different fields")
    return u.ctx


def w_add(u: Witt2, v: Witt2) -> Witt2:
    ctx = _same_field(u, v)
    return Witt2(ctx, u.a ^ v.a, u.b ^ v.b ^ ctx.mul(u.a, v.a))


def w_neg(u: Witt2) -> Witt2:
    return Witt2(u.ctx, u.a, u.b ^ u.ctx.square(u.a))


def w_scale(u: Witt2, k: int) -> Witt2:
    """k * u for k >= 0 by repeated addition (double-and-add)."""
    r = Witt2(u.ctx, 0, 0)
    while k:
        if k & 1:
            r = w_add(r, u)
        u = w_add(u, u)
        k >>= 1
    return r


def ghost_class(a: int, b: int) -> int:
    """Class in Z/4 of a Witt vector [a, b] over F_2."""
    return (a + 2 * b) % 4


def w_trace_fold(ctx: FieldCtx, u: Witt2) -> int:
    """Reference Witt trace: add up the d Frobenius conjugates."""
    acc = Witt2(ctx, 0, 0)
    a, b = u.a, u.b
    for _ in range(ctx.degree):
        acc = w_add(acc, Witt2(ctx, a, b))
        a, b = ctx.square(a), ctx.square(b)
    assert acc.a in (0, 1) and acc.b in (0, 1)
    return ghost_class(acc.a, acc.b)


def cross_term(ctx: FieldCtx, a: int) -> int:
    """sum over i < j of a^(2^i) a^(2^j), which lies in F_2."""
    d = ctx.degree
    s = 0
    for k in range(1, (d + 1) // 2):
        s ^= ctx.trace_to_f2(ctx.pow(a, 1 + (1 << k)))
    if d % 2 == 0 and d >= 2:
        h = d // 2
        c = ctx.pow(a, 1 + (1 << h))
        acc = 0
        for _ in range(h):
            acc ^= c
            c = ctx.square(c)
        assert acc in (0, 1)
        s ^= acc
    return s


def w_trace(ctx: FieldCtx, u: Witt2) -> int:
    """Trace from W_2(k) to W_2(F_2) = Z/4, via the closed form."""
    ta = ctx.trace_to_f2(u.a)
    tb = ctx.trace_to_f2(u.b) ^ cross_term(ctx, u.a)
    return ghost_class(ta, tb)


def psi2(c: int) -> GaussInt:
    return i_power(c)


def vec_w_trace_parts(ctx: FieldCtx, a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(Tr a, cross term of a) for an array of first coordinates."""
    d = ctx.degree
    ta = vec_trace(ctx, a)
    cross = np.zeros_like(a)
    for k in range(1, (d + 1) // 2):
        cross ^= vec_trace(ctx, vec_pow(ctx, a, 1 + (1 << k)))
    if d % 2 == 0 and d >= 2:
        h = d // 2
        c = vec_pow(ctx, a, 1 + (1 << h))
        acc = np.zeros_like(a)
        for i in range(h):
            acc ^= vec_frobenius(ctx, c, i)
        if np.any(acc > 1):
            raise AssertionError("half trace left F_2")
        cross ^= acc
    return ta, cross
