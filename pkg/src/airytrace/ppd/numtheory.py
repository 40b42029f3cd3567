"""Integer helpers: orders, Jacobi symbols, and primitive prime divisor certificates."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import factorint, isprime, jacobi_symbol, n_order, primefactors, totient


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    return int(jacobi_symbol(a % n, n))


def multiplicative_order(a: int, m: int) -> int:
    if m < 1 or gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    if m == 1:
        return 1
    return int(n_order(a, m))


def phi(n: int) -> int:
    return int(totient(n))


def omega(n: int) -> int:
    return len(primefactors(n))


def prime_divisors(n: int) -> list[int]:
    return [int(p) for p in primefactors(n)]


def strip_primes(n: int, primes) -> int:
    for p in primes:
        while n % p == 0:
            n //= p
    return n


@dataclass
class PpdCertificate:
    base: int
    m: int
    cofactor: int          # every prime factor of this has order exactly m
    ell: int | None        # an explicit such prime, when one was found
    ell_order: int | None

    @property
    def certified(self) -> bool:
        return self.cofactor > 1


def certify_ppd(base: int, m: int, N: int, factor_limit: int = 10**6,
                full_factor_bits: int = 200) -> PpdCertificate:
    """Certify that N has a prime factor l with ord_l(base) = m.

    Every prime dividing some base^(m/p) - 1 is removed from N by repeated
    gcds; if what is left, R, is > 1 and divides base^m - 1, each prime
    factor of R has order exactly m.  An explicit prime is then looked up.
    """
    R = abs(N)
    for p in prime_divisors(m):
        g = pow(base, m // p) - 1
        while True:
            h = gcd(R, g)
            if h == 1:
                break
            R //= h
    if R > 1 and pow(base, m, R) != 1:
        raise ArithmeticError(f"cofactor {R} does not divide {base}^{m}-1")
    ell = None
    if R > 1:
        if isprime(R):
            ell = R
        else:
            # a prime of order m is 1 mod m
            k = 1
            while 1 + m * k <= factor_limit:
                c = 1 + m * k
                if R % c == 0 and isprime(c):
                    ell = c
                    break
                k += 1
            if ell is None and R.bit_length() <= full_factor_bits:
                ell = int(min(factorint(R)))
    order = multiplicative_order(base, ell) if ell else None
    if order is not None and order != m:
        raise ArithmeticError(f"prime {ell} has order {order}, not {m}")
    return PpdCertificate(base, m, R, ell, order)
