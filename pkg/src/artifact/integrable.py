"""Tau functions built from double factorial Schur functions, and KP checks.

Times follow the convention p_k = k t_k, so xi(t; z) = sum_k t_k z^k and the
shift t +- [z^{-1}] adds +- z^{-k}/k to t_k.  ``TauSeries`` stores the
t-series; ``to_times``/``to_powersums`` convert in both directions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .currents import PowersumSpec
from .fock import Partition, partition
from .ring import Coef, PSeries, series_exp
from .schur import dfs
from .shifted import ParamEnv

__all__ = [
    "TauSeries",
    "to_times",
    "to_powersums",
    "tau_from_partition",
    "derivative",
    "hirota",
    "hirota_kp_check",
    "bilinear_residue_check",
    "toda_tau",
]


def _rescale(f: PSeries, src: str, dst: str, invert: bool) -> PSeries:
    terms = {}
    for m, c in f.terms.items():
        w = 1
        mono = []
        for fam, k in m:
            if fam == src:
                w *= k
                mono.append((dst, k))
            else:
                mono.append((fam, k))
        terms[tuple(mono)] = c / w if invert else c * w
    return PSeries(f.trunc, terms)


def to_times(f: PSeries, src: str = "p", dst: str = "t") -> PSeries:
    """Rewrite a p-series in times: p_k -> k t_k."""
    return _rescale(f, src, dst, invert=False)


def to_powersums(f: PSeries, src: str = "t", dst: str = "p") -> PSeries:
    """Inverse of ``to_times``: t_k -> p_k / k."""
    return _rescale(f, src, dst, invert=True)


@dataclass
class TauSeries:
    series: PSeries
    lam: Partition = ()
    charge: int = 0
    family: str = "t"

    @property
    def trunc(self) -> int:
        return self.series.trunc

    def constant_term(self) -> Coef:
        return self.series.constant_term()


def tau_from_partition(env: ParamEnv, lam: Sequence[int], D: int, charge: int = 0) -> TauSeries:
    """tau(t) = s_lam(t || alpha; beta), the group element |lam><vac| collapsed to charge 0."""
    lam = partition(lam)
    s = dfs(env, lam, (), PowersumSpec.series(D)).value
    return TauSeries(to_times(s), lam, charge)


# -- Hirota derivatives ------------------------------------------------------


def derivative(f: PSeries, var: Tuple[str, int], times: int = 1) -> PSeries:
    """d^times / d var^times; the result is exact up to weight trunc - times*k."""
    fam, k = var
    out = f
    for _ in range(times):
        terms: Dict[tuple, Coef] = {}
        for m, c in out.terms.items():
            n = m.count(var)
            if n == 0:
                continue
            mono = list(m)
            mono.remove(var)
            terms[tuple(mono)] = c * n
        out = PSeries(max(out.trunc - k, 0), terms)
    return out


def _split(orders: Dict[int, int]):
    """All sub-multi-indices i <= orders with their signed binomial weights."""
    items = sorted(orders.items())
    out = [({}, 1)]
    for k, n in items:
        nxt = []
        for part, w in out:
            for i in range(n + 1):
                q = dict(part)
                q[k] = i
                nxt.append((q, w * comb(n, i) * (-1) ** (n - i)))
        out = nxt
    return out


def hirota(f: PSeries, g: PSeries, orders: Dict[int, int], family: str = "t") -> PSeries:
    """prod_k D_k^{n_k} f.g = prod_k d/dy_k^{n_k} f(t + y) g(t - y) at y = 0.

    Expanding the shift definition with the Leibniz rule gives
    sum_i prod_k C(n_k, i_k) (-1)^(n_k - i_k) d^i f * d^(n - i) g.
    """
    weight = sum(k * n for k, n in orders.items())
    D = min(f.trunc, g.trunc) - weight
    if D < 0:
        raise ValueError("truncation too small for a Hirota operator of weight %d" % weight)
    total = PSeries(D)
    for part, w in _split(orders):
        df, dg = f, g
        for k, n in orders.items():
            i = part[k]
            if i:
                df = derivative(df, (family, k), i)
            if n - i:
                dg = derivative(dg, (family, k), n - i)
        total = total + df.truncate(D) * dg.truncate(D) * w
    return total


@dataclass
class Report:
    """A verification outcome in the structured form the CLI prints."""

    claim: str
    parameters: dict
    max_degree: int
    residual: List[dict] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.residual

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "parameters": self.parameters,
            "max_degree": self.max_degree,
            "residual": self.residual,
            "runtime": round(self.runtime, 3),
        }


def _residual_terms(f: PSeries) -> List[dict]:
    return [{"monomial": [list(v) for v in m], "coeff": str(c)} for m, c in f.items()]


def kp_residual(tau: TauSeries) -> PSeries:
    """(D_1^4 + 3 D_2^2 - 4 D_1 D_3) tau.tau through weight trunc - 4."""
    f = tau.series
    fam = tau.family
    return hirota(f, f, {1: 4}, fam) + hirota(f, f, {2: 2}, fam) * 3 - hirota(f, f, {1: 1, 3: 1}, fam) * 4


def hirota_kp_check(tau: TauSeries, D: Optional[int] = None) -> Report:
    """Whether the first KP equation in Hirota form holds through weight D - 4."""
    start = time.perf_counter()
    if D is None:
        D = tau.trunc
    if D < 4:
        raise ValueError("the KP check needs a truncation of at least 4")
    if D > tau.trunc:
        raise ValueError("tau is only known through weight %d" % tau.trunc)
    t = TauSeries(tau.series.truncate(D), tau.lam, tau.charge, tau.family)
    res = kp_residual(t)
    return Report("KP Hirota equation", {"lambda": list(tau.lam), "D": D}, D - 4,
                  _residual_terms(res), time.perf_counter() - start)


def _keep_weight(f: PSeries, W: int, families: Sequence[str]) -> PSeries:
    terms = {m: c for m, c in f.terms.items() if sum(k for fam, k in m if fam in families) <= W}
    return PSeries(f.trunc, terms)


def _shifted_tau(tau: PSeries, x_sign: int, u_sign: int, W: int) -> PSeries:
    """tau(t + x_sign x + u_sign [u]) with u = 1/z, kept to total weight W."""
    images = {}
    for k in range(1, W + 1):
        images[("t", k)] = PSeries(W, {
            (("t", k),): Coef(1),
            (("x", k),): Coef(x_sign),
            (("u", 1),) * k: Coef(u_sign, k),
        })
    out = tau.substitute(images)
    return _keep_weight(out, W, ("t", "x", "u"))


def bilinear_residue_check(env: ParamEnv, lam: Sequence[int], D: int, cutoff: Optional[int] = None) -> Report:
    """Formal residue of e^{xi(t - t'; z)} tau(t - [1/z]) tau(t' + [1/z]) at t, t' = t +- x.

    With u = 1/z the product tau(t + x - [u]) tau(t - x + [u]) is a series
    in u, and e^{xi(2x; z)} = sum_m E_m z^m with E_m of x-weight m, so the
    z^{-1} coefficient is sum_m E_m [u^{m+1}].  Terms are kept through
    total (t, x) weight D, which needs tau through weight D + 1 and
    u-degrees up to ``cutoff`` (default D + 2).
    """
    start = time.perf_counter()
    lam = partition(lam)
    if cutoff is None:
        cutoff = D + 2
    W = max(D + 1, cutoff)
    tau = tau_from_partition(env, lam, W).series
    a = _shifted_tau(tau, 1, -1, W)
    b = _shifted_tau(tau, -1, 1, W)
    ab = _keep_weight(a * b, 2 * W, ("t", "x", "u"))
    by_u: Dict[int, Dict[tuple, Coef]] = {}
    for m, c in ab.terms.items():
        j = sum(1 for fam, _ in m if fam == "u")
        rest = tuple(v for v in m if v[0] != "u")
        by_u.setdefault(j, {})[rest] = c
    kernel = series_exp(PSeries(W, {(("x", k),): Coef(2) for k in range(1, W + 1)}))
    residue = PSeries(W)
    for m in range(0, cutoff):
        e_m = PSeries(W, {mono: c for mono, c in kernel.terms.items() if sum(k for _, k in mono) == m})
        part = by_u.get(m + 1)
        if part is None or e_m.is_zero():
            continue
        residue = residue + e_m * PSeries(W, part)
    residue = _keep_weight(residue, D, ("t", "x"))
    return Report("KP bilinear identity residue", {"lambda": list(lam), "D": D, "cutoff": cutoff}, D,
                  _residual_terms(residue), time.perf_counter() - start)


def toda_tau(env: ParamEnv, lam: Sequence[int], mu: Sequence[int], n: int, n_prime: int, D: int):
    """(tau(t_+), tau(t_-), product) for G = |lam>_(n) <mu|_(n).

    The product lives in families ``t`` (for t_+) and ``s`` (for t_-) and
    vanishes unless n' = n.
    """
    lam, mu = partition(lam), partition(mu)
    plus = tau_from_partition(env, lam, D, n)
    minus_series = to_times(dfs(env, mu, (), PowersumSpec.series(D)).value, "p", "s")
    minus = TauSeries(minus_series, mu, n, "s")
    if n != n_prime:
        return plus, minus, PSeries(D)
    return plus, minus, plus.series * minus.series
