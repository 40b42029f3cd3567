"""Primitive prime divisors of Suzuki and Ree torus orders."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from ..exactnum import cyclotomic_value
from .numtheory import PpdCertificate, certify_ppd
from .products import p2, p3_pair


def suzuki_t(n: int) -> tuple[int, int]:
    """(t^-(q), t^+(q)) for q = 2^n, n odd."""
    q, r = 1 << n, 1 << ((n + 1) // 2)
    return q - r + 1, q + r + 1


def ree_t(n: int) -> tuple[int, int]:
    """(t^-(q), t^+(q)) for q = 3^n, n odd."""
    q, r = 3 ** n, 3 ** ((n + 1) // 2)
    return q - r + 1, q + r + 1


def suzuki_phi24(n: int) -> tuple[int, int]:
    """(Phi'_24, Phi''_24) for q = 2^n."""
    q, r = 1 << n, 1 << ((n + 1) // 2)
    return q * q + q * r + q + r + 1, q * q - q * r + q - r + 1


@dataclass
class ToriReport:
    family: str
    n: int
    P: dict[str, int]
    t_minus: int
    t_plus: int
    checks: dict[str, bool] = field(default_factory=dict)
    ppd: dict[str, dict] = field(default_factory=dict)
    phi24: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "P": {k: str(v) for k, v in self.P.items()},
                "t_minus": str(self.t_minus), "t_plus": str(self.t_plus),
                "checks": self.checks, "ppd": self.ppd,
                "phi24": {k: str(v) for k, v in self.phi24.items()}}


def _cert_json(c: PpdCertificate) -> dict:
    d = asdict(c)
    d["cofactor"] = str(d["cofactor"])
    d["certified"] = c.certified
    return d


def verify_tori(family: str, n: int, with_ppd: bool = True) -> ToriReport:
    """Products, identities, divisibility and ppd certificates for one odd n.

    Checks whose hypotheses need n large enough (P > 2n and the ppd of t^-)
    are only recorded when the corresponding theorem applies.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    if family == "suzuki":
        lo, hi = p2(n, 1), p2(n, 3)
        names = ("P21", "P23")
        tm, tp = suzuki_t(n)
        target, base, m, n_min = cyclotomic_value(4 * n, 2), 2, 4 * n, 7
    elif family == "ree":
        lo, hi = p3_pair(n)
        names = ("P31", "P35")
        tm, tp = ree_t(n)
        target, base, m, n_min = cyclotomic_value(6 * n, 3), 3, 6 * n, 3
    else:
        raise ValueError(f"unknown family {family!r}")
    rep = ToriReport(family, n, {names[0]: lo, names[1]: hi}, tm, tp)
    rep.checks["product"] = lo * hi == target
    rep.checks["divides_t_minus"] = tm % lo == 0
    rep.checks["divides_t_plus"] = tp % hi == 0
    if n >= n_min:
        rep.checks["P_gt_2n"] = lo > 2 * n and hi > 2 * n
    if with_ppd:
        if n >= n_min:
            c = certify_ppd(base, m, lo)
            rep.ppd[names[0]] = _cert_json(c)
            rep.checks["ppd_in_" + names[0]] = c.certified and c.ell is not None
        c = certify_ppd(base, m, tp)
        rep.ppd["t_plus"] = _cert_json(c)
        rep.checks["ppd_in_t_plus"] = c.certified
        c = certify_ppd(base, m, tm)
        rep.ppd["t_minus"] = _cert_json(c)
        if n >= n_min:
            rep.checks["ppd_in_t_minus"] = c.certified
    return rep


def verify_suzuki2(n: int) -> ToriReport:
    """The Phi'_24 / Phi''_24 factorizations and their ppd(2, 12n)."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    tm, tp = suzuki_t(n)
    tm3, tp3 = suzuki_t(3 * n)
    ph1, ph2 = suzuki_phi24(n)
    rep = ToriReport("suzuki2", n, {}, tm, tp, phi24={"phi_prime": ph1, "phi_double_prime": ph2})
    rep.checks["t_minus_q3"] = tm3 == tp * ph2
    rep.checks["t_plus_q3"] = tp3 == tm * ph1
    c = certify_ppd(2, 12 * n, ph1)
    rep.ppd["phi_prime"] = _cert_json(c)
    rep.checks["ppd_in_phi_prime"] = c.certified
    c = certify_ppd(2, 12 * n, ph2)
    rep.ppd["phi_double_prime"] = _cert_json(c)
    if n >= 3:
        rep.checks["ppd_in_phi_double_prime"] = c.certified
    return rep


def _sweep_one(args):
    family, n = args
    if family == "suzuki":
        a, b = p2(n, 1), p2(n, 3)
        tm, tp = suzuki_t(n)
        target = cyclotomic_value(4 * n, 2)
    else:
        a, b = p3_pair(n)
        tm, tp = ree_t(n)
        target = cyclotomic_value(6 * n, 3)
    ok = a > 2 * n and b > 2 * n and a * b == target and tm % a == 0 and tp % b == 0
    return n, ok


def sweep(family: str, n_max: int, n_min: int | None = None, threads: int = 1) -> dict[int, bool]:
    """P > 2n plus the exact identities for every odd n in [n_min, n_max]."""
    if n_min is None:
        n_min = 7 if family == "suzuki" else 3
    ns = [(family, n) for n in range(n_min | 1, n_max + 1, 2)]
    if threads > 1:
        with ProcessPoolExecutor(threads) as pool:
            return dict(pool.map(_sweep_one, ns, chunksize=8))
    return dict(map(_sweep_one, ns))
