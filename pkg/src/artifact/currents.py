"""Deformed currents, half vertex operators and the deformed shift.

J_k = sum_{i,j} A_ij^k :psi_i psi*_j:.  Off the diagonal the term moves a
particle from site j to site i; the diagonal is the normal-ordered count
sum_{occupied i>0} c_i^k - sum_{empty i<=0} c_i^k with c = beta for k > 0
and c = alpha for k < 0.

Every sum here is finite because the parameters have finite support.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .fock import (
    FockVector,
    Ket,
    Partition,
    apply_psi,
    contains,
    maya_occupied,
    move_particle,
    partition,
    particles,
    partitions_of,
    z_factor,
)
from .ring import Coef, PSeries
from .shifted import ParamEnv

__all__ = [
    "elementary",
    "complete",
    "coeff_A",
    "apply_J",
    "matrix_element_J",
    "PowersumSpec",
    "apply_H",
    "matrix_element_H",
    "phi_psi",
    "shift_vacuum",
    "deformed_shift",
    "vacuum_bra_shift",
]


def elementary(vals: Sequence[Coef], upto: int) -> List[Coef]:
    """[e_0, ..., e_upto] of the listed values."""
    e = [Coef(1)] + [Coef(0)] * upto
    for v in vals:
        if v.is_zero():
            continue
        for r in range(upto, 0, -1):
            if not e[r - 1].is_zero():
                e[r] = e[r] + e[r - 1] * v
    return e


def complete(vals: Sequence[Coef], upto: int) -> List[Coef]:
    """[h_0, ..., h_upto] of the listed values."""
    h = [Coef(1)] + [Coef(0)] * upto
    for v in vals:
        if v.is_zero():
            continue
        for s in range(1, upto + 1):
            h[s] = h[s] + h[s - 1] * v
    return h


def coeff_A(env: ParamEnv, i: int, j: int, k: int) -> Coef:
    """The current coefficient A_ij^k in closed symmetric-function form."""
    key = ("A", i, j, k)
    hit = env.cache.get(key)
    if hit is not None:
        return hit
    val = _coeff_A(env, i, j, k)
    env.cache[key] = val
    return val


def _coeff_A(env: ParamEnv, i: int, j: int, k: int) -> Coef:
    if k == 0:
        return Coef(1 if i == j else 0)
    if i == j:
        return env.beta(i) ** k if k > 0 else env.alpha(i) ** (-k)
    a, b = env.alpha, env.beta
    if k > 0:
        if j < i:
            return Coef(0)
        # sum over r - s = j - i - k of e_r(-alpha_(i,j)) h_s(beta_[i,j])
        ea = [-a(t) for t in range(i + 1, j)]
        hb = [b(t) for t in range(i, j + 1)]
        s_lo = max(0, k - (j - i))
        s_hi = k - 1
        if s_lo > s_hi:
            return Coef(0)
        e = elementary(ea, s_hi + j - i - k)
        h = complete(hb, s_hi)
        total = Coef(0)
        for s in range(s_lo, s_hi + 1):
            r = s + j - i - k
            if r < len(e) and not e[r].is_zero() and not h[s].is_zero():
                total = total + e[r] * h[s]
    else:
        kk = -k
        if j > i:
            return Coef(0)
        # sum over r - s = j - i + kk of h_r(alpha_[j,i]) e_s(-beta_(j,i))
        ha = [a(t) for t in range(j, i + 1)]
        eb = [-b(t) for t in range(j + 1, i)]
        s_lo = max(0, i - j - kk)
        s_hi = i - j - 1
        if s_lo > s_hi:
            return Coef(0)
        e = elementary(eb, s_hi)
        h = complete(ha, s_hi + j - i + kk)
        total = Coef(0)
        for s in range(s_lo, s_hi + 1):
            r = s + j - i + kk
            if r >= 0 and not e[s].is_zero() and not h[r].is_zero():
                total = total + h[r] * e[s]
    if total.is_zero():
        return total
    return (1 - a(j) * b(j)) * total


def _nonzero_count(env: ParamEnv, which: str) -> int:
    key = ("nz", which)
    hit = env.cache.get(key)
    if hit is None:
        hit = len(env.support(which))
        env.cache[key] = hit
    return hit


def diagonal_J(env: ParamEnv, k: int, ket: Ket) -> Coef:
    """Normal-ordered diagonal of J_k on a basis ket."""
    c = env.beta if k > 0 else env.alpha
    kk = abs(k)
    lo, hi = env.window
    total = Coef(0)
    for i in range(max(lo, 1), hi + 1):
        if maya_occupied(ket, i):
            v = c(i)
            if not v.is_zero():
                total = total + v ** kk
    for i in range(lo, min(hi, 0) + 1):
        if not maya_occupied(ket, i):
            v = c(i)
            if not v.is_zero():
                total = total - v ** kk
    return total


def _J_moves(env: ParamEnv, k: int, ket: Ket) -> List[Tuple[Ket, int, int, int]]:
    """Off-diagonal moves of J_k on a ket as (new ket, sign, dest, src).

    Only positions are computed here; coefficients are looked up later so
    that pruned kets never pay for their (possibly large) A-coefficient.
    """
    key = ("moves", k, ket)
    hit = env.cache.get(key)
    if hit is not None:
        return hit
    out = []
    occ, floor = particles(ket)
    lam, m = ket
    if k > 0:
        reach = k + _nonzero_count(env, "alpha")
        pairs = [(src, dest) for src in occ for dest in range(src - 1, max(src - reach, floor) - 1, -1)]
    else:
        reach = -k + _nonzero_count(env, "beta")
        top = m + (lam[0] if lam else 0)
        empties = [i for i in range(floor + 1, top + reach + 1) if not maya_occupied(ket, i)]
        lowest_empty = empties[0] if empties else floor + 1
        pairs = [(src, dest) for src in range(lowest_empty - reach, top + 1) if maya_occupied(ket, src)
                 for dest in range(src + 1, src + reach + 1)]
    for src, dest in pairs:
        if maya_occupied(ket, dest):
            continue
        mv = move_particle(ket, src, dest)
        if mv is not None:
            out.append((mv[1], mv[0], dest, src))
    env.cache[key] = out
    return out


def _J_column(env: ParamEnv, k: int, ket: Ket, keep: Optional[Callable[[Ket], bool]] = None) -> Dict[Ket, Coef]:
    out: Dict[Ket, Coef] = {}
    if keep is None or keep(ket):
        d = diagonal_J(env, k, ket)
        if not d.is_zero():
            out[ket] = d
    for new, sgn, dest, src in _J_moves(env, k, ket):
        if keep is not None and not keep(new):
            continue
        a = coeff_A(env, dest, src, k)
        if a.is_zero():
            continue
        out[new] = out.get(new, Coef(0)) + (a if sgn > 0 else -a)
    return {kt: c for kt, c in out.items() if not c.is_zero()}


def apply_J(env: ParamEnv, k: int, v: FockVector, keep: Optional[Callable[[Ket], bool]] = None) -> FockVector:
    """J_k v for nonzero k.  ``keep`` optionally prunes output kets."""
    if k == 0:
        raise ValueError("J_0 is not part of the deformed current family used here")
    out: Dict[Ket, Coef] = {}
    for ket, c in v.terms.items():
        for new, a in _J_column(env, k, ket, keep).items():
            t = a * c
            if new in out:
                out[new] = out[new] + t
            else:
                out[new] = t
    return FockVector._raw({kt: c for kt, c in out.items() if not c.is_zero()})


def matrix_element_J(env: ParamEnv, mu: Sequence[int], nu: Sequence[int], lam: Sequence[int], m: int = 0,
                     negative: bool = False) -> Coef:
    """<mu|_m J_{nu_1} J_{nu_2} ... |lam>_m (parts applied right to left).

    With ``negative`` the currents are J_{-nu_i}.
    """
    v = FockVector.basis(lam, m)
    for part in reversed(list(nu)):
        v = apply_J(env, -part if negative else part, v)
        if v.is_zero():
            break
    return v.coeff(mu, m)


# -- half vertex operators ----------------------------------------------------


class PowersumSpec:
    """Either symbolic p_k up to weighted degree ``trunc`` or p_k = sum x^k - (-y)^k."""

    __slots__ = ("trunc", "pairs", "family")

    def __init__(self, trunc: Optional[int] = None, pairs: Optional[Sequence[Tuple[object, object]]] = None,
                 family: str = "p"):
        if (trunc is None) == (pairs is None):
            raise ValueError("give exactly one of a truncation order or variable pairs")
        if trunc is not None and trunc < 0:
            raise ValueError("truncation order must be nonnegative")
        self.trunc = trunc
        self.pairs = None if pairs is None else [(Coef(x), Coef(y)) for x, y in pairs]
        self.family = family

    @classmethod
    def series(cls, trunc: int, family: str = "p") -> "PowersumSpec":
        return cls(trunc=trunc, family=family)

    @classmethod
    def specialized(cls, pairs) -> "PowersumSpec":
        return cls(pairs=pairs)

    @property
    def is_series(self) -> bool:
        return self.trunc is not None

    def power_sum(self, k: int) -> Coef:
        total = Coef(0)
        for x, y in self.pairs:
            total = total + x ** k - (-y) ** k
        return total


def _ordered_partitions(D: int) -> List[Partition]:
    """All partitions of size <= D, each after its prefix (parts non-increasing)."""
    out = [()]
    for n in range(1, D + 1):
        out.extend(partitions_of(n))
    return sorted(out, key=lambda p: (len(p), p))


def _series_action(env: ParamEnv, sign: int, D: int, v: FockVector, keep, family: str) -> Dict[Ket, PSeries]:
    vecs: Dict[Partition, FockVector] = {(): v}
    acc: Dict[Ket, Dict] = {}

    def add(nu, w):
        z = z_factor(nu)
        mono = tuple((family, k) for k in nu)
        for ket, c in w.terms.items():
            acc.setdefault(ket, {})[mono] = c / z if z != 1 else c

    add((), v)
    for nu in _ordered_partitions(D):
        if not nu:
            continue
        prev = vecs.get(nu[:-1])
        if prev is None or prev.is_zero():
            continue
        w = apply_J(env, sign * nu[-1], prev, keep)
        if w.is_zero():
            continue
        vecs[nu] = w
        add(nu, w)
    return {ket: PSeries(D, terms) for ket, terms in acc.items()}


def _check_terminates(env: ParamEnv, sign: int):
    if sign > 0 and not env.is_zero("beta"):
        raise ValueError("specialized e^{H+} does not terminate unless beta = 0; use series mode (a truncation order)")
    if sign < 0 and not env.is_zero("alpha"):
        raise ValueError("specialized e^{H-} does not terminate unless alpha = 0; use series mode (a truncation order)")


def apply_H(env: ParamEnv, sign: int, spec: PowersumSpec, v: FockVector,
            keep: Optional[Callable[[Ket], bool]] = None):
    """e^{H_sign(p)} v.

    Series mode returns {ket: PSeries}; specialized mode returns a
    FockVector and is only available where the sum is finite.
    """
    sign = 1 if sign > 0 else -1
    if spec.is_series:
        return _series_action(env, sign, spec.trunc, v, keep, spec.family)
    _check_terminates(env, sign)
    if sign < 0:
        raise ValueError("e^{H-} v has infinite support; ask for a matrix element instead")
    D = max((sum(k[0]) for k in v.terms), default=0)
    series = _series_action(env, sign, D, v, keep, "p")
    values = {("p", k): spec.power_sum(k) for k in range(1, D + 1)}
    return FockVector({ket: s.specialize(values) for ket, s in series.items()})


def matrix_element_H(env: ParamEnv, sign: int, spec: PowersumSpec, bra: Sequence[int], ket: Sequence[int],
                     m: int = 0):
    """<bra|_m e^{H_sign(p)} |ket>_m as a PSeries or (specialized) a Coef."""
    sign = 1 if sign > 0 else -1
    bra, ket = partition(bra), partition(ket)
    if sign > 0:
        keep = lambda kt: contains(kt[0], bra)
    else:
        keep = lambda kt: contains(bra, kt[0])
    v = FockVector.basis(ket, m)
    if not keep((ket, m)):
        return PSeries(spec.trunc) if spec.is_series else Coef(0)
    if spec.is_series:
        out = _series_action(env, sign, spec.trunc, v, keep, spec.family)
        return out.get((bra, m), PSeries(spec.trunc))
    _check_terminates(env, sign)
    D = abs(sum(ket) - sum(bra))
    out = _series_action(env, sign, D, v, keep, "p")
    s = out.get((bra, m))
    if s is None:
        return Coef(0)
    return s.specialize({("p", k): spec.power_sum(k) for k in range(1, D + 1)})


# -- deformed shift -----------------------------------------------------------


def phi_psi(env: ParamEnv, i: int, direction: int = 1) -> List[Tuple[int, Coef]]:
    """phi(psi_i) (direction +1) or phi^{-1}(psi_i) (direction -1) as [(site, coeff)]."""
    a, b = env.alpha, env.beta
    out = []
    if direction > 0:
        if not a(i).is_zero():
            out.append((i, a(i)))
        c = 1 - a(i) * b(i)
        j = 0
        while True:
            if not c.is_zero():
                out.append((i + j + 1, c))
            j += 1
            c = c * (-b(i + j))
            if c.is_zero():
                break
    else:
        if not b(i).is_zero():
            out.append((i, b(i)))
        c = 1 - a(i) * b(i)
        j = 0
        while True:
            if not c.is_zero():
                out.append((i - j - 1, c))
            j += 1
            c = c * (-a(i - j))
            if c.is_zero():
                break
    return out


def shift_vacuum(env: ParamEnv, m: int) -> FockVector:
    """Sigma|0>_m = sum_k (-1)^k beta_{m+1}...beta_{m+k} |k>_{m+1}."""
    out = {((), m + 1): Coef(1)}
    c = Coef(1)
    k = 0
    while True:
        k += 1
        c = c * (-env.beta(m + k))
        if c.is_zero():
            break
        out[((k,), m + 1)] = c
    return FockVector(out)


def vacuum_bra_shift(env: ParamEnv, m: int) -> FockVector:
    """<0|_m Sigma = sum_k alpha_m ... alpha_{m-k+1} <1^k|_{m-1}, as a vector of bras."""
    out = {((), m - 1): Coef(1)}
    c = Coef(1)
    k = 0
    while True:
        k += 1
        c = c * env.alpha(m - k + 1)
        if c.is_zero():
            break
        out[((1,) * k, m - 1)] = c
    return FockVector(out)


def _apply_phi(env: ParamEnv, i: int, direction: int, w: FockVector) -> FockVector:
    total = FockVector()
    for site, c in phi_psi(env, i, direction):
        total = total + apply_psi(site, w).scale(c)
    return total


def _shift_ket(env: ParamEnv, ket: Ket, direction: int, depth: int) -> FockVector:
    lam, m = ket
    occ, floor = particles(ket)
    if direction > 0:
        base = floor - depth
        word = list(occ) + list(range(floor, base, -1))
        w = shift_vacuum(env, base)
    else:
        lo = env.window[0]
        base = min(lo, floor) - 1 - depth
        word = list(occ) + list(range(floor, base, -1))
        w = FockVector.basis((), base - 1)
    for site in reversed(word):
        w = _apply_phi(env, site, direction, w)
        if w.is_zero():
            break
    return w


def deformed_shift(env: ParamEnv, v: FockVector, direction: int = 1, depth: int = 0) -> FockVector:
    """Sigma^{+1} or Sigma^{-1} applied to v.

    Each ket is written as creation operators over a shifted vacuum; the
    operators are conjugated by phi^{+-1} and the vacuum is shifted.  For
    direction +1 the vacuum is |0>_{m-len(lam)-depth} and its image comes
    from the vacuum formula.  For direction -1 the vacuum sits below the
    parameter window, where Sigma^{-1}|0>_L = |0>_{L-1} because beta_L = 0.
    """
    direction = 1 if direction > 0 else -1
    out = FockVector()
    for ket, c in v.terms.items():
        key = ("shift", direction, depth, ket)
        img = env.cache.get(key)
        if img is None:
            img = _shift_ket(env, ket, direction, depth)
            env.cache[key] = img
        out = out + img.scale(c)
    return out
