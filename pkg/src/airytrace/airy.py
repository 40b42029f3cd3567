"""Sheaf specifications and single-point Frobenius traces.

A polynomial over F_2 is given by its set of exponents.  For the descent
G(r) the polynomial must have the shape f(x) = f1(x^t(q)), and f1 is kept
alongside.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

import numpy as np

from .exactnum import ClearedValue, GaussInt, cleared_normalize, i_power
from .gf2m import MAX_VECTOR_DEGREE, FieldCtx, vec_mul_const, vec_pow, vec_trace
from .witt2 import Witt2, psi2, vec_w_trace_parts, w_trace

# exponent -> coefficient (a residue of the working field), or a bare exponent set
PolyLike = Union[Iterable[int], Mapping[int, int]]


def t_of_q(n: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    return (1 << (2 * n + 1)) + 1 - (1 << (n + 1))


@dataclass(frozen=True)
class SheafSpec:
    n: int
    f_exps: tuple[int, ...]
    f1_exps: tuple[int, ...] | None = None
    form: str = "F"
    r: int = 1
    label: str = field(default="custom", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.form not in ("F", "G"):
            raise ValueError("form must be 'F' or 'G'")
        if len(set(self.f_exps)) != len(self.f_exps):
            raise ValueError("repeated exponent in f")
        if max(self.f_exps) != self.degree_f:
            raise ValueError(f"deg f must be (q0+1)t(q) = {self.degree_f}")
        if self.f1_exps is not None:
            want = sorted(e * self.t for e in self.f1_exps)
            if want != sorted(self.f_exps):
                raise ValueError("f1 does not match f")
        if self.form == "G":
            if self.f1_exps is None:
                raise ValueError("descent needs f = f1(x^t(q))")
            if self.r < 1 or self.t % self.r:
                raise ValueError(f"r={self.r} does not divide t(q)={self.t}")

    @property
    def q(self) -> int:
        return 1 << (2 * self.n + 1)

    @property
    def q0(self) -> int:
        return 1 << self.n

    @property
    def t(self) -> int:
        return t_of_q(self.n)

    @property
    def rank(self) -> int:
        return self.q0 * (self.q - 1)

    @property
    def degree_f(self) -> int:
        return (self.q0 + 1) * self.t

    @property
    def s(self) -> int:
        return self.t // self.r

    @property
    def monomials(self) -> int:
        return len(self.f_exps)

    def descent(self, r: int) -> "SheafSpec":
        return SheafSpec(self.n, self.f_exps, self.f1_exps, "G", r, self.label)

    def as_F(self) -> "SheafSpec":
        return SheafSpec(self.n, self.f_exps, self.f1_exps, "F", 1, self.label)

    def summary(self) -> dict:
        return {"n": self.n, "label": self.label, "form": self.form, "r": self.r,
                "f_exps": list(self.f_exps)}


def _from_f1(n: int, f1: Iterable[int], label: str) -> SheafSpec:
    f1 = tuple(sorted(f1))
    t = t_of_q(n)
    return SheafSpec(n, tuple(e * t for e in f1), f1, "F", 1, label)


def suzuki_standard(n: int) -> SheafSpec:
    return _from_f1(n, [1 + (1 << i) for i in range(1, n + 1)], "standard")


def infg_family(n: int) -> SheafSpec:
    return _from_f1(n, [1 + (1 << (n - 2 * i)) for i in range((n - 1) // 2 + 1)], "infg")


def monomial(n: int) -> SheafSpec:
    return _from_f1(n, [1 + (1 << n)], "monomial")


def g8() -> SheafSpec:
    """The descent of the q = 8 sheaf along t -> t^5."""
    return suzuki_standard(1).descent(5)


def random_spec(n: int, rng: random.Random, density: float = 0.5,
                max_terms: int = 12, shaped: bool = False) -> SheafSpec:
    """Random f over F_2 of the right degree with f(0) = 0.

    With ``shaped`` the result has the form f1(x^t(q)) and so admits descents.
    """
    if shaped:
        top = (1 << n) + 1
        lower = [e for e in range(1, top) if rng.random() < density][:max_terms]
        return _from_f1(n, lower + [top], "random-shaped")
    deg = (1 << n) + 1
    deg *= t_of_q(n)
    pool = range(1, deg)
    k = min(max_terms, len(pool))
    lower = rng.sample(pool, rng.randint(0, k))
    return SheafSpec(n, tuple(sorted(lower + [deg])), None, "F", 1, "random")


# ---------- scalar evaluation

def _terms(p: PolyLike) -> list[tuple[int, int]]:
    if isinstance(p, Mapping):
        return [(e, c) for e, c in p.items() if c]
    return [(e, 1) for e in p]


def poly_eval(ctx: FieldCtx, p: PolyLike, x: int) -> int:
    acc = 0
    for e, c in _terms(p):
        if c >= ctx.order or c < 0:
            raise ValueError(f"coefficient {c:#x} does not lie in F_2^{ctx.degree}")
        acc ^= ctx.mul(c, ctx.pow(x, e))
    return acc


def trace_L(a_poly: PolyLike, b_poly: PolyLike, ctx: FieldCtx, x: int) -> GaussInt:
    """Trace of Frobenius at x on the rank-one sheaf of the Witt vector [a, b]."""
    u = Witt2(ctx, poly_eval(ctx, a_poly, x), poly_eval(ctx, b_poly, x))
    return psi2(w_trace(ctx, u))


def clear(raw: GaussInt, n: int, d: int) -> ClearedValue:
    """-raw / (1 - (-1)^n i)^d as a canonical cleared value."""
    if n % 2:
        return cleared_normalize(-raw, d)
    # 1 - i = -i (1 + i)
    return cleared_normalize(-raw * i_power(d), d)


def raw_sum_scalar(spec: SheafSpec, ctx: FieldCtx, t: int) -> GaussInt:
    """Reference raw sum over x in k, one Witt trace at a time."""
    ctx.check(t)
    tq = spec.t
    acc = [0, 0, 0, 0]
    for x in ctx.elements():
        a = ctx.pow(x, tq)
        b = poly_eval(ctx, spec.f_exps, x) ^ ctx.mul(t, x)
        acc[w_trace(ctx, Witt2(ctx, a, b))] += 1
    return GaussInt(acc[0] - acc[2], acc[1] - acc[3])


def raw_sum_descent_scalar(spec: SheafSpec, ctx: FieldCtx, u: int) -> GaussInt:
    if u == 0:
        raise ValueError("the descent lives on G_m; t = 0 is not allowed")
    ctx.check(u)
    us = ctx.inverse(ctx.pow(u, spec.s))
    acc = [0, 0, 0, 0]
    for x in ctx.elements():
        y = ctx.mul(ctx.pow(x, spec.t), us)
        b = poly_eval(ctx, spec.f1_exps, y) ^ x
        acc[w_trace(ctx, Witt2(ctx, y, b))] += 1
    return GaussInt(acc[0] - acc[2], acc[1] - acc[3])


# ---------- vectorized per-point sums

def _vec_poly(ctx: FieldCtx, exps: Iterable[int], x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    n = ctx.order - 1
    for e in exps:
        if e == 0:
            out ^= 1
        else:
            # x^e only depends on e mod (2^d - 1) for x != 0
            out ^= vec_pow(ctx, x, (e - 1) % n + 1)
    return out


def _class_sum(cls: np.ndarray) -> GaussInt:
    h = np.bincount(cls, minlength=4)
    return GaussInt(int(h[0] - h[2]), int(h[1] - h[3]))


def witt_classes(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ta, cross = vec_w_trace_parts(ctx, a)
    tb = vec_trace(ctx, b) ^ cross
    return (ta + 2 * tb) & 3


def _use_vector(ctx: FieldCtx) -> bool:
    return 4 <= ctx.degree <= MAX_VECTOR_DEGREE


def raw_sum(spec: SheafSpec, ctx: FieldCtx, t: int) -> GaussInt:
    if not _use_vector(ctx):
        return raw_sum_scalar(spec, ctx, t)
    ctx.check(t)
    x = np.arange(ctx.order, dtype=np.int64)
    a = vec_pow(ctx, x, spec.t)
    b = _vec_poly(ctx, spec.f_exps, x) ^ vec_mul_const(ctx, x, t)
    return _class_sum(witt_classes(ctx, a, b))


def raw_sum_descent(spec: SheafSpec, ctx: FieldCtx, u: int) -> GaussInt:
    if not _use_vector(ctx):
        return raw_sum_descent_scalar(spec, ctx, u)
    if u == 0:
        raise ValueError("the descent lives on G_m; t = 0 is not allowed")
    ctx.check(u)
    x = np.arange(ctx.order, dtype=np.int64)
    us = ctx.inverse(ctx.pow(u, spec.s))
    y = vec_mul_const(ctx, vec_pow(ctx, x, spec.t), us)
    b = _vec_poly(ctx, spec.f1_exps, y) ^ x
    return _class_sum(witt_classes(ctx, y, b))


def trace_F(spec: SheafSpec, ctx: FieldCtx, t: int) -> ClearedValue:
    if spec.form != "F":
        raise ValueError("trace_F needs an F-form spec")
    return clear(raw_sum(spec, ctx, t), spec.n, ctx.degree)


def trace_G(spec: SheafSpec, ctx: FieldCtx, t: int) -> ClearedValue:
    if spec.form != "G":
        raise ValueError("trace_G needs a descent spec")
    return clear(raw_sum_descent(spec, ctx, t), spec.n, ctx.degree)


def trace_F_scalar(spec: SheafSpec, ctx: FieldCtx, t: int) -> ClearedValue:
    return clear(raw_sum_scalar(spec, ctx, t), spec.n, ctx.degree)


def trace_G_scalar(spec: SheafSpec, ctx: FieldCtx, t: int) -> ClearedValue:
    return clear(raw_sum_descent_scalar(spec, ctx, t), spec.n, ctx.degree)


def f2_traces_predicted(spec: SheafSpec) -> tuple[ClearedValue, ClearedValue]:
    """Traces at t = 0, 1 over F_2 read off the parity of A - n.

    A is the number of monomials of f; needs f(0) = 0.
    """
    if spec.form != "F":
        raise ValueError("needs an F-form spec")
    if 0 in spec.f_exps:
        raise ValueError("f(0) must be 0")
    minus = -1 if spec.n % 2 else 1
    rot = ClearedValue.of(GaussInt(0, -minus))
    m1 = ClearedValue.of(-1)
    if (spec.monomials - spec.n) % 2:
        return m1, rot
    return rot, m1
