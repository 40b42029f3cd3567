"""Linearized kernels and the quadratic-form evaluation of |trace at 0|^2.

When f = f1(x^t(q)) and x -> x^t(q) permutes k, the trace at 0 only sees
the Witt vector V(x) = [x, x R(x)] with R additive.  V is additive up to
[0, <x, y>], so |trace|^2 collapses onto the radical of Tr <x, y>.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from sympy import jacobi_symbol

from .airy import SheafSpec, infg_family, t_of_q, trace_F
from .exactnum import ClearedValue, GaussInt, abs_square
from .gf2m import FieldCtx, make_field
from .witt2 import Witt2, psi2, w_trace


@dataclass(frozen=True)
class LinearizedPoly:
    """x -> sum over e in exps of c_e x^(2^e); coefficients default to 1."""

    exps: tuple[int, ...]
    coeffs: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(set(self.exps)) != len(self.exps):
            raise ValueError("repeated exponent")
        if any(e < 0 for e in self.exps):
            raise ValueError("exponents must be >= 0")
        if self.coeffs is not None and len(self.coeffs) != len(self.exps):
            raise ValueError("one coefficient per exponent")

    @classmethod
    def of(cls, exps: Iterable[int] | Mapping[int, int] | "LinearizedPoly") -> "LinearizedPoly":
        if isinstance(exps, LinearizedPoly):
            return exps
        if isinstance(exps, Mapping):
            items = sorted(exps.items())
            return cls(tuple(e for e, _ in items), tuple(c for _, c in items))
        return cls(tuple(sorted(exps)))

    @property
    def over_f2(self) -> bool:
        return self.coeffs is None or all(c == 1 for c in self.coeffs)

    def __call__(self, ctx: FieldCtx, x: int) -> int:
        acc = 0
        cs = self.coeffs or (1,) * len(self.exps)
        for e, c in zip(self.exps, cs):
            acc ^= ctx.mul(c, ctx.frobenius(x, e))
        return acc

    def images(self, ctx: FieldCtx) -> list[int]:
        """Images of the polynomial basis 1, X, ..., X^(d-1)."""
        return [self(ctx, 1 << j) for j in range(ctx.degree)]

    def adjoint_exps(self, d: int) -> tuple[int, ...]:
        """Exponents of the adjoint map for the trace form on F_(2^d), with repeats."""
        if not self.over_f2:
            raise ValueError("adjoint exponents only make sense over F_2")
        return tuple(sorted((-e) % d for e in self.exps))


def _kernel_of_images(images: list[int]) -> list[int]:
    pivots: dict[int, tuple[int, int]] = {}
    basis = []
    for j, img in enumerate(images):
        v, c = img, 1 << j
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = (v, c)
                break
            pv, pc = pivots[top]
            v ^= pv
            c ^= pc
        if not v:
            basis.append(c)
    return basis


def linearized_kernel(ctx: FieldCtx, E) -> list[int]:
    """F_2-basis of the kernel of x -> sum x^(2^e) on the field of ctx."""
    return _kernel_of_images(LinearizedPoly.of(E).images(ctx))


def span(basis: list[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [v ^ b for v in out]
    return out


def pairing(ctx: FieldCtx, R, x: int, y: int) -> int:
    R = LinearizedPoly.of(R)
    return ctx.mul(x, y) ^ ctx.mul(x, R(ctx, y)) ^ ctx.mul(y, R(ctx, x))


def pairing_radical(ctx: FieldCtx, R) -> list[int]:
    """Radical of (x, y) -> Tr <x, y>, by elimination on the Gram matrix."""
    R = LinearizedPoly.of(R)
    d = ctx.degree
    rows = [sum(ctx.trace_to_f2(pairing(ctx, R, 1 << i, 1 << j)) << j for j in range(d))
            for i in range(d)]
    return _kernel_of_images(rows)


def radical_exps(R, d: int) -> tuple[int, ...]:
    """E' with radical(Tr <,>) = ker of E' on F_(2^d).

    Tr(x R(y)) = Tr(y R*(x)), so the radical is ker(x + R(x) + R*(x));
    exponents that appear twice cancel.
    """
    R = LinearizedPoly.of(R)
    count: dict[int, int] = {0: 1}
    for e in list(R.exps) + list(R.adjoint_exps(d)):
        count[e % d] = count.get(e % d, 0) + 1
    return tuple(sorted(e for e, c in count.items() if c % 2))


def r_of_spec(spec: SheafSpec) -> LinearizedPoly:
    """R with f1(x) = x R(x); every f1 exponent must be 1 + 2^e."""
    if spec.f1_exps is None:
        raise ValueError("spec is not of the form f1(x^t(q))")
    exps = []
    for a in spec.f1_exps:
        e = (a - 1).bit_length() - 1
        if a < 2 or (1 << e) + 1 != a:
            raise ValueError(f"f1 exponent {a} is not of the form 1 + 2^e")
        exps.append(e)
    return LinearizedPoly.of(exps)


def quadratic_sum_via_kernel(ctx: FieldCtx, R) -> int:
    """sum over x in k of psi2(Tr [x, x R(x)]), times its conjugate, over #k."""
    R = LinearizedPoly.of(R)
    ker = span(pairing_radical(ctx, R))
    acc = GaussInt(0, 0)
    for x in ker:
        acc = acc + psi2(w_trace(ctx, Witt2(ctx, x, ctx.mul(x, R(ctx, x)))))
    if acc.im or acc.re not in (0, len(ker)):
        raise ArithmeticError(f"kernel sum {acc} is neither 0 nor #Ker = {len(ker)}")
    return acc.re


def quadratic_sum_direct(ctx: FieldCtx, R) -> Fraction:
    """Same quantity by summing over all of k (reference)."""
    R = LinearizedPoly.of(R)
    acc = GaussInt(0, 0)
    for x in ctx.elements():
        acc = acc + psi2(w_trace(ctx, Witt2(ctx, x, ctx.mul(x, R(ctx, x)))))
    return Fraction(acc.norm(), ctx.order)


def abs_trace0_sq_via_kernel(spec: SheafSpec, ctx: FieldCtx, cross_check: bool = True) -> int:
    """|trace at 0|^2 as a character sum over the radical."""
    if gcd(spec.t, ctx.order - 1) != 1:
        raise ValueError(f"x -> x^{spec.t} is not a bijection of F_2^{ctx.degree}")
    val = quadratic_sum_via_kernel(ctx, r_of_spec(spec))
    if cross_check:
        direct = abs_square(trace_F(spec.as_F(), ctx, 0))
        if direct != val:
            raise ArithmeticError(f"kernel value {val} != direct |trace|^2 {direct}")
    return val


def predict_closed_forms(n: int) -> tuple[ClearedValue, ClearedValue]:
    """Predicted traces at t = 0 and t = 1 over F_q for the standard f."""
    if n < 1:
        raise ValueError("n must be >= 1")
    eps = int(jacobi_symbol(2, 2 * n + 1))
    return ClearedValue.of(GaussInt(0, -eps * (1 << n))), ClearedValue.of(-1)


def kernel_sizes(n: int) -> tuple[int, int]:
    """(#Ker(F_q), #Ker(F_q^2)) for E = {0, ..., 2n}."""
    E = range(2 * n + 1)
    k1 = make_field(2 * n + 1)
    k2 = make_field(4 * n + 2)
    return 1 << len(linearized_kernel(k1, E)), 1 << len(linearized_kernel(k2, E))


@dataclass
class KernelVerdict:
    n: int
    degree: int
    kernel_size: int
    value: int | None
    expected: str
    ok: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def kerprime_check(n: int) -> KernelVerdict:
    ctx = make_field(2 * n + 1)
    basis = linearized_kernel(ctx, range(2 * n - 1))
    return KernelVerdict(n, ctx.degree, 1 << len(basis), None, "{0}", not basis)


def traces_f0c_check(n: int) -> KernelVerdict:
    if n < 2:
        raise ValueError("n must be >= 2")
    m = 2 * (n // 2) + 1
    ctx = make_field(m)
    spec = infg_family(n)
    direct = abs_square(trace_F(spec, ctx, 0))
    via = abs_trace0_sq_via_kernel(spec, ctx, cross_check=False)
    half = 1 << (m - 1)
    ok = direct == via and direct in (0, half) and direct != 1
    ker = 1 << len(pairing_radical(ctx, r_of_spec(spec)))
    return KernelVerdict(n, m, ker, int(direct), f"0 or {half}", ok)


def frob0_qsq_check(n: int) -> tuple[int, int, Fraction, int]:
    """(#Ker(F_q), #Ker(F_q^2), direct |trace_0|^2, kernel value) over F_(q^2)."""
    from .airy import suzuki_standard

    spec = suzuki_standard(n)
    ctx = make_field(4 * n + 2)
    kq, kq2 = kernel_sizes(n)
    direct = abs_square(trace_F(spec, ctx, 0))
    via = abs_trace0_sq_via_kernel(spec, ctx, cross_check=False)
    return kq, kq2, direct, via


__all__ = [
    "LinearizedPoly", "linearized_kernel", "span", "pairing", "pairing_radical",
    "radical_exps", "r_of_spec", "quadratic_sum_via_kernel", "quadratic_sum_direct", "abs_trace0_sq_via_kernel", "predict_closed_forms",
    "kernel_sizes", "KernelVerdict", "kerprime_check", "traces_f0c_check",
    "frob0_qsq_check", "t_of_q",
]
