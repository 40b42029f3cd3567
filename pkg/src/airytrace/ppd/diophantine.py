"""The three quadratic equations in D = 2^n (2^(2n+1) - 1), and the phi(n) lower bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .numtheory import omega, phi

PHI_BOUND_EXCEPTIONS = (1, 3, 9, 15, 21, 33, 45, 75, 105, 165, 195)


def eqns_D(n: int) -> int:
    return (1 << n) * ((1 << (2 * n + 1)) - 1)


def _sqrt_exact(v: int) -> int | None:
    r = isqrt(v)
    return r if r * r == v else None


def solve_exact(n: int) -> dict[str, list[int]]:
    """Positive solutions x of each equation, found through perfect squares."""
    D = eqns_D(n)
    out: dict[str, list[int]] = {"i": [], "ii": [], "iii": []}
    # (i) x^2 = D + 1
    r = _sqrt_exact(D + 1)
    if r:
        out["i"].append(r)
    # (ii) (2x - 1)^2 = 8D + 1
    r = _sqrt_exact(8 * D + 1)
    if r and r % 2 == 1 and (r + 1) // 2 >= 1:
        out["ii"].append((r + 1) // 2)
    # (iii) (2x - 1)^2 = 8D + 9
    r = _sqrt_exact(8 * D + 9)
    if r and r % 2 == 1:
        out["iii"].append((r + 1) // 2)
    return out


def solve_brute(n: int) -> dict[str, list[int]]:
    """Exhaustive search over 1 <= x <= ceil(sqrt(2D)) + 2; only for small n."""
    D = eqns_D(n)
    top = isqrt(2 * D) + 3
    out: dict[str, list[int]] = {"i": [], "ii": [], "iii": []}
    for x in range(1, top + 1):
        if x * x - 1 == D:
            out["i"].append(x)
        t = x * (x - 1) // 2
        if t == D:
            out["ii"].append(x)
        if t - 1 == D:
            out["iii"].append(x)
    return out


@dataclass
class EqnsVerdict:
    n: int
    D: int
    solutions: dict[str, list[int]]
    ok: bool
    notes: list[str] = field(default_factory=list)


def diophantine_check(n: int, brute_max_n: int = 8) -> EqnsVerdict:
    """No solutions for n >= 2; for n = 1 only equation (iii), with x = 6."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sol = solve_exact(n)
    notes = []
    if n <= brute_max_n:
        if solve_brute(n) != sol:
            raise ArithmeticError(f"square test and search disagree at n={n}")
        notes.append("matched exhaustive search")
    if n == 1:
        ok = sol == {"i": [], "ii": [], "iii": [6]}
    else:
        ok = not any(sol.values())
    return EqnsVerdict(n, eqns_D(n), sol, ok, notes)


def phi_bounds_check(n: int) -> tuple[bool, bool]:
    """(phi(n)^7 >= n^6, phi(n)^10 >= 2^(22 omega(n))), in exact integers."""
    f = phi(n)
    return f ** 7 >= n ** 6, f ** 10 >= 1 << (22 * omega(n))


def phi_bounds_violations(n_max: int) -> list[int]:
    """Odd n <= n_max, outside the exception list, where a bound fails."""
    return [n for n in range(1, n_max + 1, 2)
            if n not in PHI_BOUND_EXCEPTIONS and not all(phi_bounds_check(n))]
