"""Arithmetic in binary fields F_{2^d}, d <= 30.

Elements are Python ints holding the coefficient bits of the residue
polynomial in the basis 1, X, ..., X^{d-1}.  Addition is XOR.  A
:class:`FieldCtx` carries the modulus together with the trace machinery
(the trace mask of the basis, and the Hankel rows that linearize the
pairing ``(t, x) -> Tr(t*x)``).

Scalar arithmetic goes through log/antilog lists once they are built
(``ctx.tables()``, allowed for d <= 20); the vectorized numpy helpers at the
bottom of the module are what the census engine uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

MAX_DEGREE = 30
MAX_TABLE_DEGREE = 20
MAX_VECTOR_DEGREE = 26


class FieldError(ValueError):
    """Bad field parameters: degree out of range or reducible modulus."""


# ---------- polynomials over F_2 packed in ints

def clmul(a: int, b: int) -> int:
    """Carry-less product of two F_2[X] polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def is_irreducible(m: int) -> bool:
    """Rabin-style certificate: gcd(X^{2^i} - X, m) = 1 for i <= deg/2.

    Together with deg(m) = d this proves m has no factor of degree <= d/2.
    """
    d = m.bit_length() - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = 0b10
    y = x
    for _ in range(d // 2):
        y = poly_mod(clmul(y, y), m)
        if poly_gcd(m, y ^ x) != 1:
            return False
    return True


def least_irreducible(d: int) -> int:
    """Lexicographically least irreducible of degree d with nonzero constant term."""
    for m in range((1 << d) | 1, 1 << (d + 1), 2):
        if is_irreducible(m):
            return m
    raise FieldError(f"no irreducible polynomial of degree {d}")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _parity(v: int) -> int:
    return v.bit_count() & 1


# ---------- the field context

@dataclass(frozen=True, eq=False)
class FieldCtx:
    degree: int
    modulus: int
    trace_bits: int = field(init=False, repr=False)
    hankel: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        d, m = self.degree, self.modulus
        if not 1 <= d <= MAX_DEGREE:
            raise FieldError(f"degree {d} outside 1..{MAX_DEGREE}")
        if m.bit_length() != d + 1:
            raise FieldError(f"modulus {m:#x} does not have degree {d}")
        if not is_irreducible(m):
            raise FieldError(f"modulus {m:#x} is reducible over F_2")
        # traces of X^k for k <= 2d-2, by summing Frobenius orbits
        tr = []
        xk = 1
        for _ in range(2 * d - 1):
            tr.append(self._slow_trace(xk))
            xk = poly_mod(xk << 1, m)
        object.__setattr__(self, "trace_bits", sum(tr[j] << j for j in range(d)))
        rows = tuple(sum(tr[i + j] << j for j in range(d)) for i in range(d))
        object.__setattr__(self, "hankel", rows)

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.degree == other.degree
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.degree, self.modulus))

    @property
    def order(self) -> int:
        return 1 << self.degree

    def _slow_trace(self, a: int) -> int:
        s, y = 0, a
        for _ in range(self.degree):
            s ^= y
            y = poly_mod(clmul(y, y), self.modulus)
        assert s in (0, 1), "trace left F_2"
        return s

    # ----- scalar arithmetic

    def check(self, a: int) -> int:
        if not 0 <= a < (1 << self.degree):
            raise ValueError(f"{a:#x} is not a residue of F_2^{self.degree}")
        return a

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        t = self.__dict__.get("_tables")
        if t is not None:
            exp, log = t
            return exp[log[a] + log[b]]
        return poly_mod(clmul(a, b), self.modulus)

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inverse(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        t = self.__dict__.get("_tables")
        if t is not None:
            exp, log = t
            return exp[(log[a] * e) % (self.order - 1)]
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return self.pow(a, self.order - 2)

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(2^i)."""
        i %= self.degree
        for _ in range(i):
            a = self.mul(a, a)
        return a

    def trace_to_f2(self, a: int) -> int:
        return _parity(a & self.trace_bits)

    def trace_mask(self, x: int) -> int:
        """m(x) with Tr(t*x) == parity(t & m(x)) for every t."""
        m = 0
        i = 0
        while x:
            if x & 1:
                m ^= self.hankel[i]
            x >>= 1
            i += 1
        return m

    def elements(self) -> range:
        return range(self.order)

    # ----- tables

    @cached_property
    def generator(self) -> int:
        n = self.order - 1
        if n == 1:
            return 1
        ps = _prime_factors(n)
        for g in range(2, self.order):
            if all(self._pow_plain(g, n // p) != 1 for p in ps):
                return g
        raise FieldError("no generator found")  # pragma: no cover

    def _pow_plain(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = poly_mod(clmul(r, a), self.modulus)
            a = poly_mod(clmul(a, a), self.modulus)
            e >>= 1
        return r

    def tables(self) -> tuple[list[int], list[int]]:
        """Scalar antilog (doubled, no reduction needed) and log lists.

        Installing them switches mul/pow to table lookups.
        """
        t = self.__dict__.get("_tables")
        if t is None:
            if self.degree > MAX_TABLE_DEGREE:
                raise FieldError(f"log tables limited to d <= {MAX_TABLE_DEGREE}")
            exp_v, log_v = self.vec_tables()
            n = self.order - 1
            exp = np.concatenate([exp_v[:n], exp_v[:n]]).tolist()
            log = log_v.tolist()
            t = (exp, log)
            self.__dict__["_tables"] = t
        return t

    @property
    def has_tables(self) -> bool:
        return "_tables" in self.__dict__

    def vec_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(antilog, log) as int64 arrays; log[0] is -1."""
        t = self.__dict__.get("_vec_tables")
        if t is None:
            if self.degree > MAX_VECTOR_DEGREE:
                raise FieldError(f"vector tables limited to d <= {MAX_VECTOR_DEGREE}")
            n = self.order - 1
            g = self.generator
            exp = np.empty(max(n, 1), dtype=np.int64)
            exp[0] = 1
            filled, gl = 1, g
            while filled < n:
                take = min(filled, n - filled)
                exp[filled:filled + take] = vec_mul_const(self, exp[:take], gl)
                gl = self._pow_plain(gl, 2)
                filled += take
            log = np.full(self.order, -1, dtype=np.int64)
            log[exp[:n]] = np.arange(n, dtype=np.int64)
            t = (exp, log)
            self.__dict__["_vec_tables"] = t
        return t


def make_field(d: int, modulus: int | None = None) -> FieldCtx:
    """Field context for F_{2^d}; default modulus is the least irreducible."""
    if not 1 <= d <= MAX_DEGREE:
        raise FieldError(f"degree {d} outside 1..{MAX_DEGREE}")
    if modulus is None:
        modulus = least_irreducible(d)
    return FieldCtx(d, modulus)


def field_from_hex(text: str) -> FieldCtx:
    """Field from a modulus given in hex (e.g. ``0x25`` for X^5+X^2+1)."""
    m = int(text, 16)
    return make_field(m.bit_length() - 1, m)


def gram_rank_f2(rows: list[int]) -> int:
    """Rank over F_2 of a matrix given as int bit-rows."""
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        top = 1 << (pivot.bit_length() - 1)
        rows = [r ^ pivot if r & top else r for r in rows]
        rows = [r for r in rows if r]
    return rank


# ---------- vectorized helpers (numpy int64 arrays of residues)

def vec_parity(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    for s in (16, 8, 4, 2, 1):
        v ^= v >> s
    return v & 1


def vec_linear(images: list[int] | tuple[int, ...], x: np.ndarray) -> np.ndarray:
    """Apply the F_2-linear map sending basis bit i to images[i]."""
    out = np.zeros_like(x)
    for i, img in enumerate(images):
        if img:
            out ^= np.where((x >> i) & 1, img, 0)
    return out


def vec_mul_const(ctx: FieldCtx, x: np.ndarray, c: int) -> np.ndarray:
    imgs = []
    y = c
    for _ in range(ctx.degree):
        imgs.append(y)
        y = poly_mod(y << 1, ctx.modulus)
    return vec_linear(imgs, x)


def vec_trace(ctx: FieldCtx, x: np.ndarray) -> np.ndarray:
    return vec_parity(x & ctx.trace_bits)


def vec_trace_mask(ctx: FieldCtx, x: np.ndarray) -> np.ndarray:
    return vec_linear(ctx.hankel, x)


def vec_pow(ctx: FieldCtx, x: np.ndarray, e: int) -> np.ndarray:
    """x^e elementwise for e >= 1."""
    if e < 1:
        raise ValueError("exponent must be positive")
    exp, log = ctx.vec_tables()
    n = ctx.order - 1
    lx = log[x]
    y = exp[(lx * (e % n)) % n]
    return np.where(x == 0, 0, y)


def vec_mul(ctx: FieldCtx, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    exp, log = ctx.vec_tables()
    n = ctx.order - 1
    z = exp[(log[x] + log[y]) % n]
    return np.where((x == 0) | (y == 0), 0, z)


def vec_frobenius(ctx: FieldCtx, x: np.ndarray, i: int) -> np.ndarray:
    imgs = [ctx.frobenius(1 << j, i) for j in range(ctx.degree)]
    return vec_linear(imgs, x)
