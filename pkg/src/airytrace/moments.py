"""Moment-bound arithmetic for the fourth moment of the q = 8 descent.

All quantities are exact rationals; sqrt(q) must be an integer.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

RANK_G8 = 14
SLOPE_G8 = Fraction(3, 14)
Q_M4 = 1 << 18
THRESHOLD = Fraction(3999, 1000)

# I(0) candidates for the q = 8 descent, as multiplicities of chi^0..chi^4
M4_CANDIDATES = {
    "-1+3Reg": (2, 3, 3, 3, 3),
    "4*1+2Reg": (6, 2, 2, 2, 2),
    "9*1+Reg": (10, 1, 1, 1, 1),
    "14*1": (14, 0, 0, 0, 0),
}


@dataclass(frozen=True)
class MabInput:
    q_field: int
    M_ab: Fraction
    Swan: int
    C: int
    D_inv: int | None = None

    def __post_init__(self):
        if min(self.q_field, self.Swan, self.C) < 0 or self.M_ab < 0:
            raise ValueError("all inputs must be non-negative")
        if self.D_inv is not None and self.D_inv < 0:
            raise ValueError("D must be non-negative")


def _exact_sqrt(q: int) -> int:
    s = math.isqrt(q)
    if s * s != q:
        raise ValueError(f"q = {q} is not a perfect square")
    return s


def mab_bound(inp: MabInput) -> Fraction:
    """Right-hand side of the moment estimate.

    Without D this is the weakened form (qM + (Swan+M-C) sqrt q + (Swan+M))/(q-1);
    with D it is (qM + A sqrt q + (B-A))/(q-1), B = Swan+M, A = B+M-C-D.
    """
    q, M = inp.q_field, Fraction(inp.M_ab)
    rq = _exact_sqrt(q)
    B = inp.Swan + M
    if inp.D_inv is None:
        A = inp.Swan + M - inp.C
        return (q * M + A * rq + B) / (q - 1)
    A = B + M - inp.C - inp.D_inv
    return (q * M + A * rq + (B - A)) / (q - 1)


def swan_bound(rank: int = RANK_G8, slope: Fraction = SLOPE_G8, power: int = 4) -> Fraction:
    """rank(K) * biggest slope, with K of rank rank^power."""
    return Fraction(rank ** power) * slope


def i0_invariant_dim_m22(mults, r: int) -> int:
    """Invariant dimension of phi^2 conj(phi)^2 for phi = sum mults[j] chi^j on mu_r."""
    mults = list(mults)
    if len(mults) != r or any(m < 0 for m in mults):
        raise ValueError("need r non-negative multiplicities")
    # phi * conj(phi) has multiplicity c[s] = sum_k m[k+s] m[k] on chi^s
    c = [sum(mults[(k + s) % r] * mults[k] for k in range(r)) for s in range(r)]
    dim = sum(c[s] * c[(-s) % r] for s in range(r))
    # (1/r) sum_j |phi(zeta^j)|^4 must agree
    approx = sum(abs(sum(m * cmath.exp(2j * math.pi * j * k / r)
                         for k, m in enumerate(mults))) ** 4 for j in range(r)) / r
    if abs(approx - dim) > 1e-6 * max(1, dim):
        raise ArithmeticError(f"character average {approx} is not the integer {dim}")
    return dim


@dataclass
class M4Verdict:
    swan: Fraction
    candidate_dims: dict[str, int]
    min_dim: int
    rhs: Fraction
    rhs_printed: Fraction
    contradiction: bool
    notes: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"Swan bound: 14^4 * 3/14 = {self.swan}"]
        for k, v in self.candidate_dims.items():
            out.append(f"dim K^I(0) for {k}: {v}")
        out.append(f"least candidate dimension: {self.min_dim}")
        out.append(f"bound at M22 = 2: {self.rhs} ~ {float(self.rhs):.6f}")
        out.append(f"bound as printed (550/511 and 8332/262143): {self.rhs_printed} "
                   f"~ {float(self.rhs_printed):.6f}")
        out.append(f"3.999 <= bound is false for both: "
                   f"{'contradiction confirmed' if self.contradiction else 'NO contradiction'}")
        out.extend(self.notes)
        return out


def corollary_m4_check(M: Fraction = Fraction(2)) -> M4Verdict:
    dims = {k: i0_invariant_dim_m22(v, 5) for k, v in M4_CANDIDATES.items()}
    cmin = min(dims.values())
    swan = swan_bound()
    if swan.denominator != 1:
        raise ArithmeticError("Swan bound is not an integer")
    rhs = mab_bound(MabInput(Q_M4, M, int(swan), cmin))
    q = Q_M4 - 1
    printed = (1 + Fraction(1, q)) * 2 + Fraction(550, 511) + Fraction(8332, q)
    ok = rhs < THRESHOLD and printed < THRESHOLD
    notes = [f"constant term Swan + M = {int(swan) + M} (printed as 8332)"]
    return M4Verdict(swan, dims, cmin, rhs, printed, ok, notes)
