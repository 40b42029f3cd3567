"""Counts of units of Z/n in residue classes mod m."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .numtheory import omega, phi


def coprime_residue_count(n: int, m: int, a: int) -> int:
    """#{1 <= k <= n : gcd(k, n) = 1, k = a mod m}."""
    return sum(1 for k in range(a % m or m, n + 1, m) if gcd(k, n) == 1) if n >= 1 else 0


def equi_check(n: int, m: int) -> bool:
    """|N_a - phi(n)/m| < 2^omega(n) for every residue a mod m."""
    if gcd(m, n) != 1:
        raise ValueError("m and n must be coprime")
    mean = Fraction(phi(n), m)
    bound = 1 << omega(n)
    return all(abs(coprime_residue_count(n, m, a) - mean) < bound for a in range(m))


def equi2_check(n: int) -> bool:
    """|N_a - phi(n)/8| < 2^(omega(n)-1) for a mod 12 prime to 3; n odd, 3 | n."""
    if n % 2 == 0 or n % 3:
        raise ValueError("n must be odd and divisible by 3")
    mean = Fraction(phi(n), 8)
    bound = Fraction(1 << omega(n), 2)
    return all(abs(coprime_residue_count(n, 12, a) - mean) < bound
               for a in range(12) if a % 3)
