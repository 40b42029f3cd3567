"""Full-field trace censuses.

For t in k the raw sum is sum_x i^{c0(x)} (-1)^{Tr(t x)} where
c0(x) is the class of the Witt trace of [x^t(q), f(x)].  Writing
Tr(t x) = parity(t & m(x)) with the linear bijection m = trace_mask, the raw
sums at all t at once are a Walsh-Hadamard transform of the function
w = m(x) -> i^{c0(x)}.  The naive path evaluates each t separately and is
kept as the oracle.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable

import numpy as np

from .airy import SheafSpec, _vec_poly, clear, trace_G, witt_classes
from .exactnum import ClearedValue, GaussInt, abs_square
from .gf2m import MAX_VECTOR_DEGREE, FieldCtx, vec_parity, vec_pow, vec_trace_mask

CHECKPOINT_VERSION = 1
NAIVE_MAX_DEGREE = 20


class CheckpointError(RuntimeError):
    pass


@dataclass
class PrecompTable:
    c0: np.ndarray    # class in Z/4 of the t-independent part, indexed by x
    mask: np.ndarray  # trace mask m(x)

    def exponent(self, x: int, t: int) -> int:
        return (int(self.c0[x]) + 2 * (int(self.mask[x] & t).bit_count() & 1)) % 4


def precompute(spec: SheafSpec, ctx: FieldCtx) -> PrecompTable:
    if spec.form != "F":
        raise ValueError("precompute needs an F-form spec")
    if ctx.degree > MAX_VECTOR_DEGREE:
        raise MemoryError(f"census tables are limited to d <= {MAX_VECTOR_DEGREE}")
    x = np.arange(ctx.order, dtype=np.int64)
    a = vec_pow(ctx, x, spec.t)
    b = _vec_poly(ctx, spec.f_exps, x)
    c0 = witt_classes(ctx, a, b).astype(np.int8)
    return PrecompTable(c0, vec_trace_mask(ctx, x))


# ---------- reports

@dataclass
class CensusReport:
    degree: int
    modulus: int
    spec: dict
    entries: list[tuple[ClearedValue, int]]
    domain: str
    provenance: str
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def as_dict(self) -> dict[ClearedValue, int]:
        return dict(self.entries)

    def multiset_str(self) -> dict[str, int]:
        return {str(v): m for v, m in self.entries}

    def m22(self) -> Fraction:
        return empirical_moment(self, 2, 2)[0]

    def to_json(self) -> dict:
        m = self.m22()
        return {
            "n": self.spec.get("n"),
            "degree": self.degree,
            "modulus": hex(self.modulus),
            "sheaf": self.spec.get("form", "F"),
            "spec": self.spec,
            "domain": self.domain,
            "provenance": self.provenance,
            "entries": [{"re": v.num.re, "im": v.num.im, "denom_exp": v.denom_exp,
                         "value": str(v), "mult": c} for v, c in self.entries],
            "m22": {"num": m.numerator, "den": m.denominator,
                    "decimal": decimal_string(m, 30)},
            "seconds": round(self.seconds, 3),
        }


def _sorted_entries(counts: dict[ClearedValue, int]) -> list[tuple[ClearedValue, int]]:
    return sorted(counts.items(), key=lambda kv: kv[0].sort_key())


def _aggregate_raw(re: np.ndarray, im: np.ndarray, n: int, d: int) -> dict[ClearedValue, int]:
    pairs, counts = np.unique(np.stack([re, im], axis=1), axis=0, return_counts=True)
    out: dict[ClearedValue, int] = {}
    for (a, b), c in zip(pairs.tolist(), counts.tolist()):
        v = clear(GaussInt(a, b), n, d)
        out[v] = out.get(v, 0) + c
    return out


# ---------- fast path

def wht_inplace(re: np.ndarray, im: np.ndarray) -> None:
    """Unnormalized Walsh-Hadamard transform of re + i*im, exact in int64."""
    n = re.shape[0]
    h = 1
    while h < n:
        for arr in (re, im):
            v = arr.reshape(-1, 2, h)
            x = v[:, 0, :].copy()
            y = v[:, 1, :]
            v[:, 0, :] += y
            v[:, 1, :] = x - y
        h *= 2


def raw_all_wht(spec: SheafSpec, ctx: FieldCtx, table: PrecompTable | None = None):
    """(re, im) arrays of the raw sums indexed by t."""
    table = table if table is not None else precompute(spec, ctx)
    re = np.zeros(ctx.order, dtype=np.int64)
    im = np.zeros(ctx.order, dtype=np.int64)
    c = table.c0.astype(np.int64)
    # s(m(x)) = i^{c0(x)}
    re[table.mask] = np.where(c == 0, 1, np.where(c == 2, -1, 0))
    im[table.mask] = np.where(c == 1, 1, np.where(c == 3, -1, 0))
    wht_inplace(re, im)
    return re, im


def census_wht(spec: SheafSpec, ctx: FieldCtx, domain: str = "k*") -> CensusReport:
    start = time.perf_counter()
    re, im = raw_all_wht(spec, ctx)
    parseval = int(np.sum(re * re + im * im))
    if parseval != 1 << (2 * ctx.degree):
        raise AssertionError(f"Parseval check failed: {parseval}")
    lo = 1 if domain == "k*" else 0
    counts = _aggregate_raw(re[lo:], im[lo:], spec.n, ctx.degree)
    return CensusReport(ctx.degree, ctx.modulus, spec.summary(), _sorted_entries(counts),
                        domain, "wht", time.perf_counter() - start)


# ---------- naive path

_worker_state: dict = {}


def _init_worker(c0, mask):
    _worker_state["c0"] = c0.astype(np.int64)
    _worker_state["mask"] = mask


def _raw_chunk(ts: np.ndarray, c0: np.ndarray, mask: np.ndarray):
    re = np.empty(len(ts), dtype=np.int64)
    im = np.empty(len(ts), dtype=np.int64)
    for j, t in enumerate(ts.tolist()):
        e = (c0 + 2 * vec_parity(mask & t)) & 3
        h = np.bincount(e, minlength=4)
        re[j] = h[0] - h[2]
        im[j] = h[1] - h[3]
    return re, im


def _chunk_counts(args):
    lo, hi = args
    ts = np.arange(lo, hi, dtype=np.int64)
    re, im = _raw_chunk(ts, _worker_state["c0"], _worker_state["mask"])
    pairs, counts = np.unique(np.stack([re, im], 1), axis=0, return_counts=True)
    return lo, [[a, b, c] for (a, b), c in zip(pairs.tolist(), counts.tolist())]


def spec_hash(spec: SheafSpec, ctx: FieldCtx) -> str:
    blob = json.dumps({"spec": spec.summary(), "modulus": ctx.modulus}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _read_checkpoint(path: str, header: dict) -> dict[int, list]:
    done: dict[int, list] = {}
    if not os.path.exists(path):
        return done
    with open(path) as fh:
        lines = [ln for ln in fh if ln.strip()]
    if not lines:
        return done
    got = json.loads(lines[0])
    if got.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"checkpoint version {got.get('version')} != {CHECKPOINT_VERSION}")
    for key in ("d", "spec_hash", "chunk"):
        if got.get(key) != header[key]:
            raise CheckpointError(f"checkpoint {key} mismatch: {got.get(key)} != {header[key]}")
    for ln in lines[1:]:
        rec = json.loads(ln)
        done[rec["lo"]] = rec["counts"]
    return done


def census_naive(spec: SheafSpec, ctx: FieldCtx, domain: str = "k*", threads: int = 1,
                 checkpoint: str | None = None, chunk: int = 256) -> CensusReport:
    if ctx.degree > NAIVE_MAX_DEGREE:
        raise ValueError(f"naive census limited to d <= {NAIVE_MAX_DEGREE}")
    start = time.perf_counter()
    table = precompute(spec, ctx)
    lo0 = 1 if domain == "k*" else 0
    chunks = [(lo, min(lo + chunk, ctx.order)) for lo in range(lo0, ctx.order, chunk)]
    header = {"version": CHECKPOINT_VERSION, "d": ctx.degree,
              "spec_hash": spec_hash(spec, ctx), "chunk": chunk}
    done = _read_checkpoint(checkpoint, header) if checkpoint else {}
    fh = None
    if checkpoint:
        fresh = not os.path.exists(checkpoint) or os.path.getsize(checkpoint) == 0
        fh = open(checkpoint, "a")
        if fresh:
            fh.write(json.dumps(header) + "\n")
    todo = [c for c in chunks if c[0] not in done]
    try:
        if threads > 1 and len(todo) > 1:
            with ProcessPoolExecutor(threads, initializer=_init_worker,
                                     initargs=(table.c0, table.mask)) as pool:
                results = pool.map(_chunk_counts, todo)
                for lo, counts in results:
                    done[lo] = counts
                    if fh:
                        fh.write(json.dumps({"lo": lo, "counts": counts}) + "\n")
                        fh.flush()
        else:
            _init_worker(table.c0, table.mask)
            for c in todo:
                lo, counts = _chunk_counts(c)
                done[lo] = counts
                if fh:
                    fh.write(json.dumps({"lo": lo, "counts": counts}) + "\n")
                    fh.flush()
    finally:
        if fh:
            fh.close()
    raw: dict[tuple[int, int], int] = {}
    for counts in done.values():
        for a, b, c in counts:
            raw[(a, b)] = raw.get((a, b), 0) + c
    out: dict[ClearedValue, int] = {}
    for (a, b), c in raw.items():
        v = clear(GaussInt(a, b), spec.n, ctx.degree)
        out[v] = out.get(v, 0) + c
    return CensusReport(ctx.degree, ctx.modulus, spec.summary(), _sorted_entries(out),
                        domain, "naive", time.perf_counter() - start)


# ---------- descents

def census_for_G(spec_G: SheafSpec, ctx: FieldCtx) -> CensusReport:
    """Census of a descent over k^x."""
    if spec_G.form != "G":
        raise ValueError("census_for_G needs a descent spec")
    start = time.perf_counter()
    if gcd(spec_G.r, ctx.order - 1) == 1:
        # t -> t^r permutes k^x and F(t) = G(t^r)
        rep = census_wht(spec_G.as_F(), ctx, "k*")
        rep.spec = spec_G.summary()
        rep.provenance = "wht-reindexed"
        rep.seconds = time.perf_counter() - start
        return rep
    out: dict[ClearedValue, int] = {}
    for u in range(1, ctx.order):
        v = trace_G(spec_G, ctx, u)
        out[v] = out.get(v, 0) + 1
    return CensusReport(ctx.degree, ctx.modulus, spec_G.summary(), _sorted_entries(out),
                        "k*", "direct", time.perf_counter() - start)


# ---------- moments

def decimal_string(x: Fraction, digits: int) -> str:
    """Truncated decimal expansion with ``digits`` digits after the point."""
    sign = "-" if x < 0 else ""
    x = abs(x)
    q, r = divmod(x.numerator, x.denominator)
    frac = []
    for _ in range(digits):
        r *= 10
        dgt, r = divmod(r, x.denominator)
        frac.append(str(dgt))
    return f"{sign}{q}." + "".join(frac)


def empirical_moment(report: CensusReport, a: int, b: int) -> tuple[Fraction, str]:
    """(1/#domain) sum |T|^{2a} over the domain, for a == b."""
    if a != b:
        raise ValueError("use empirical_moment_complex for a != b")
    total = report.total
    if total == 0:
        raise ValueError("empty census")
    s = sum(m * abs_square(v) ** a for v, m in report.entries)
    val = Fraction(s, total)
    return val, decimal_string(val, 30)


def empirical_moment_complex(report: CensusReport, a: int, b: int) -> tuple[Fraction, Fraction]:
    """(1/#domain) sum T^a conj(T)^b as an exact Gaussian rational."""
    acc = ClearedValue.of(0)
    for v, m in report.entries:
        acc = acc + (v ** a) * (v.conj() ** b) * m
    re, im = acc.to_gauss_rational()
    return re / report.total, im / report.total


def merge_reports(reports: Iterable[CensusReport]) -> dict[ClearedValue, int]:
    out: dict[ClearedValue, int] = {}
    for r in reports:
        for v, m in r.entries:
            out[v] = out.get(v, 0) + m
    return out

