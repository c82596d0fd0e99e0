"""Six-vertex row transfer matrices and their closed forms.

Columns are the sites of the Maya diagram.  The top edge of column j is
occupied when the ket has a particle at j, the bottom edge when the bra
has one.  In model + particles travel toward lower columns along the
horizontal line; in model - toward higher columns.  Either way the
low-side horizontal edge is fixed by the other three edges (ice rule),
so a single scan from high columns downward finds the unique state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .fock import (
    Partition,
    cells,
    conjugate,
    contains,
    maya_occupied,
    part,
    partition,
    subpartitions,
)
from .ring import Coef, expand_product
from .shifted import ParamEnv, bar_power, contour_integral, lambda_m_xy, semi_power

__all__ = [
    "VertexConfig",
    "Ribbon",
    "RibbonDecomp",
    "vertex_label",
    "forced_low_side",
    "boltzmann_weight",
    "column_window",
    "row_state",
    "rtm_coeff",
    "rtm_factors",
    "rtm_expansion",
    "rtm_multi",
    "single_particle",
    "wick_det",
    "ribbon_decompose",
    "one_var_dfs",
    "rpp_sum",
    "reverse_plane_partitions",
    "skew_pieri_coeff",
    "skew_pieri_terms",
    "skew_pieri_sides",
    "pieri_prefactor",
    "pieri_skew_bound",
    "current_window_matrix",
    "format_state",
]


@dataclass(frozen=True)
class VertexConfig:
    """Edge occupancies around one crossing (True means occupied)."""

    top: bool
    bottom: bool
    high: bool
    low: bool
    column: int
    charge: int = 0
    sign: int = 1


def forced_low_side(top: bool, bottom: bool, high: bool, sign: int = 1) -> Optional[bool]:
    """The low-side edge allowed by the ice rule, or None if no value works."""
    if sign > 0:
        n = int(top) + int(high) - int(bottom)
    else:
        n = int(bottom) + int(high) - int(top)
    if n in (0, 1):
        return bool(n)
    return None


def vertex_label(cfg: VertexConfig) -> Optional[str]:
    """Table name of the local configuration, None if it breaks the ice rule."""
    t, b, h, lo = cfg.top, cfg.bottom, cfg.high, cfg.low
    if forced_low_side(t, b, h, cfg.sign) is not lo:
        return None
    if t == b and h == lo:
        if not t and not h:
            return "a1"
        if t and h:
            return "a2"
        return "b1" if t else "b2"
    if cfg.sign > 0:
        return "c1" if h else "c2"
    return "d1" if h else "d2"


def _table_weight(label: str, sign: int, a: Coef, b: Coef, x: Coef, y: Coef) -> Coef:
    # model - uses the same table with the roles of alpha and beta exchanged
    if sign < 0:
        a, b = b, a
    if label == "a1":
        return 1 - b * x
    if label == "a2":
        return y + a
    if label == "b1":
        return 1 + b * y
    if label == "b2":
        return x - a
    if label in ("c1", "d2"):
        return x + y
    return 1 - a * b


def _normalizer(env: ParamEnv, j: int, sign: int, x: Coef, y: Coef) -> Coef:
    c = env.beta(j) if sign > 0 else env.alpha(j)
    if c.is_zero():
        return Coef(1)
    # threshold at column 0 for every charge, so <0|T|0>_m = e^{Lambda_m} holds for all m
    return 1 - c * x if j > 0 else 1 + c * y


def boltzmann_weight(env: ParamEnv, cfg: VertexConfig, x, y) -> Coef:
    """Normalized weight of one crossing; 0 when the ice rule fails."""
    label = vertex_label(cfg)
    if label is None:
        return Coef(0)
    x, y = Coef(x), Coef(y)
    j = cfg.column
    w = _table_weight(label, cfg.sign, env.alpha(j), env.beta(j), x, y)
    return w / _normalizer(env, j, cfg.sign, x, y)


def column_window(env: ParamEnv, bra: Partition, ket: Partition, m: int) -> Tuple[int, int]:
    """Columns where the state or the weights can differ from 1."""
    L = max(len(bra), len(ket))
    top = max(part(bra, 1), part(ket, 1), 0)
    lo, hi = min(m - L - 1, -1), max(m + top + 1, 1)
    wlo, whi = env.window
    if wlo <= whi:
        lo, hi = min(lo, wlo - 1), max(hi, whi + 1)
    return lo, hi


def row_state(env: ParamEnv, bra: Sequence[int], ket: Sequence[int], m: int, sign: int = 1
              ) -> Optional[List[VertexConfig]]:
    """The unique state with the given boundaries, high columns first, or None."""
    bra, ket = partition(bra), partition(ket)
    sign = 1 if sign > 0 else -1
    lo, hi = column_window(env, bra, ket, m)
    high = False
    out = []
    for j in range(hi, lo - 1, -1):
        t = maya_occupied((ket, m), j)
        b = maya_occupied((bra, m), j)
        low = forced_low_side(t, b, high, sign)
        if low is None:
            return None
        out.append(VertexConfig(t, b, high, low, j, m, sign))
        high = low
    if high:
        return None
    return out


def rtm_factors(env: ParamEnv, bra: Sequence[int], ket: Sequence[int], m: int, x, y, sign: int = 1
                ) -> Optional[List[Coef]]:
    """Column weights of the unique state that differ from 1 (None if no state)."""
    state = row_state(env, bra, ket, m, sign)
    if state is None:
        return None
    out = []
    for cfg in state:
        w = boltzmann_weight(env, cfg, x, y)
        if w.is_zero():
            return None
        if not w.is_one():
            out.append(w)
    return out


def rtm_coeff(env: ParamEnv, bra: Sequence[int], ket: Sequence[int], m: int, x, y, sign: int = 1) -> Coef:
    """<bra|_m T_sign(x/y) |ket>_m by the column scan."""
    fs = rtm_factors(env, bra, ket, m, x, y, sign)
    if fs is None:
        return Coef(0)
    out = Coef(1)
    for w in fs:
        out = out * w
    return out


def rtm_expansion(env: ParamEnv, bra: Sequence[int], ket: Sequence[int], m: int, x: str, y: str, D: int,
                  sign: int = 1) -> Coef:
    """Taylor expansion of the scan value in (x, y) to total degree D."""
    fs = rtm_factors(env, bra, ket, m, env.symbol(x), env.symbol(y), sign)
    if fs is None:
        return Coef(0)
    return expand_product(fs, [x, y], D)


def format_state(env: ParamEnv, bra: Sequence[int], ket: Sequence[int], m: int, x, y, sign: int = 1) -> List[dict]:
    """Column-by-column listing of the unique state (empty if there is none)."""
    state = row_state(env, bra, ket, m, sign) or []
    rows = []
    for cfg in state:
        rows.append({
            "column": cfg.column,
            "top": int(cfg.top),
            "bottom": int(cfg.bottom),
            "high": int(cfg.high),
            "low": int(cfg.low),
            "vertex": vertex_label(cfg),
            "weight": str(boltzmann_weight(env, cfg, x, y)),
        })
    return rows


def _between(bra: Partition, ket: Partition, sign: int) -> List[Partition]:
    if sign > 0:
        return [nu for nu in subpartitions(ket) if contains(nu, bra)]
    return [nu for nu in subpartitions(bra) if contains(nu, ket)]


def rtm_multi(env: ParamEnv, bra: Sequence[int], ket: Sequence[int], m: int,
              rows: Sequence[Tuple[object, object]], sign: int = 1) -> Coef:
    """<bra| T(x_n/y_n) ... T(x_1/y_1) |ket>, the first row acting first."""
    bra, ket = partition(bra), partition(ket)
    if sign > 0 and not contains(ket, bra):
        return Coef(0)
    if sign < 0 and not contains(bra, ket):
        return Coef(0)
    if not rows:
        return Coef(1 if bra == ket else 0)
    mids = _between(bra, ket, sign)
    cur: Dict[Partition, Coef] = {ket: Coef(1)}
    for r, (x, y) in enumerate(rows):
        last = r == len(rows) - 1
        targets = [bra] if last else mids
        nxt: Dict[Partition, Coef] = {}
        for nu, c in cur.items():
            for kap in targets:
                if sign > 0 and not contains(nu, kap):
                    continue
                if sign < 0 and not contains(kap, nu):
                    continue
                w = rtm_coeff(env, kap, nu, m, x, y, sign)
                if w.is_zero():
                    continue
                nxt[kap] = nxt.get(kap, Coef(0)) + w * c
        cur = nxt
    return cur.get(bra, Coef(0))


def single_particle(env: ParamEnv, p: int, q: int, m: int, x, y, sign: int = 1) -> Coef:
    """<p-m|_m T |q-m>_m from the one-particle closed form.

    Model + needs q >= p >= m, model - needs p >= q >= m; otherwise 0.
    """
    x, y = Coef(x), Coef(y)
    if sign > 0:
        if not q >= p >= m:
            return Coef(0)
        c, d = env.beta, env.alpha
        lo, hi = p, q
        pre = lambda_m_xy(env, m - 1, x, y, "beta")
    else:
        if not p >= q >= m:
            return Coef(0)
        c, d = env.alpha, env.beta
        lo, hi = q, p
        pre = lambda_m_xy(env, m - 1, x, y, "alpha")
    if p == q:
        return pre * (1 + c(q) * y) / (1 - c(q) * x)
    val = (1 - env.alpha(q) * env.beta(q)) * (x + y) / ((1 - c(p) * x) * (1 - c(q) * x))
    for j in range(lo + 1, hi):
        val = val * (x - d(j)) / (1 - c(j) * x)
    return pre * val


def _det(mat: List[List[Coef]]) -> Coef:
    """Fraction-free elimination is not needed at these sizes; Laplace on rows."""
    n = len(mat)
    if n == 0:
        return Coef(1)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = Coef(0)
    for col in range(n):
        a = mat[0][col]
        if a.is_zero():
            continue
        minor = [row[:col] + row[col + 1:] for row in mat[1:]]
        t = a * _det(minor)
        total = total + t if col % 2 == 0 else total - t
    return total


def wick_det(env: ParamEnv, bra: Sequence[int], ket: Sequence[int], m: int, x, y, sign: int = 1,
             k: Optional[int] = None) -> Coef:
    """Determinant of one-particle coefficients over a common sea.

    The k highest particles of each side move over the sea at or below
    m - k.  Every entry carries the vacuum factor of that sea, so the
    determinant is divided by k - 1 copies of it.
    """
    bra, ket = partition(bra), partition(ket)
    need = max(len(bra), len(ket))
    if k is None:
        k = need
    if k < need:
        raise ValueError("k must be at least the longer partition length")
    if k == 0:
        return lambda_m_xy(env, m, x, y, "beta" if sign > 0 else "alpha")
    c = m - k + 1
    pb = [part(bra, i) + m - i + 1 for i in range(1, k + 1)]
    pk = [part(ket, i) + m - i + 1 for i in range(1, k + 1)]
    mat = [[single_particle(env, pb[i], pk[j], c, x, y, sign) for j in range(k)] for i in range(k)]
    vac = lambda_m_xy(env, m - k, x, y, "beta" if sign > 0 else "alpha")
    return _det(mat) / vac ** (k - 1)


# -- ribbons -----------------------------------------------------------------


@dataclass(frozen=True)
class Ribbon:
    cells: Tuple[Tuple[int, int], ...]
    lo: int  # content interval [lo, hi)
    hi: int
    height: int


@dataclass(frozen=True)
class RibbonDecomp:
    ribbons: Tuple[Ribbon, ...]
    has_block: bool


def _skew_cells(lam: Partition, mu: Partition) -> List[Tuple[int, int]]:
    return [(i, j) for i, j in cells(lam) if j > part(mu, i)]


def ribbon_decompose(lam: Sequence[int], mu: Sequence[int]) -> RibbonDecomp:
    """Connected components of lam/mu, or the 2x2-block marker."""
    lam, mu = partition(lam), partition(mu)
    if not contains(lam, mu):
        raise ValueError("mu is not contained in lam")
    skew = set(_skew_cells(lam, mu))
    for i, j in skew:
        if {(i + 1, j), (i, j + 1), (i + 1, j + 1)} <= skew:
            return RibbonDecomp((), True)
    seen = set()
    ribbons = []
    for start in sorted(skew):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            i, j = stack.pop()
            comp.append((i, j))
            for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                if nb in skew and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        cont = [j - i for i, j in comp]
        rows = {i for i, _ in comp}
        ribbons.append(Ribbon(tuple(sorted(comp)), min(cont), max(cont) + 1, len(rows) - 1))
    ribbons.sort(key=lambda r: r.lo)
    return RibbonDecomp(tuple(ribbons), False)


def _ribbon_weight(env: ParamEnv, r: Ribbon, x: Coef, y: Coef, dual: bool) -> Coef:
    a, b = (env.beta, env.alpha) if dual else (env.alpha, env.beta)
    i, j = r.lo, r.hi
    w = (1 - env.alpha(j) * env.beta(j)) if not dual else (1 - env.alpha(i) * env.beta(i))
    w = w * (x + y) / ((1 - b(i) * x) * (1 + b(j) * y))
    cs = set(r.cells)
    for (ri, ci) in r.cells:
        c = ci - ri
        if (ri, ci - 1) in cs:
            w = w * (x - a(c)) / (1 - b(c) * x)
        elif (ri + 1, ci) in cs:
            w = w * (y + a(c)) / (1 + b(c) * y)
    return w


def one_var_dfs(env: ParamEnv, lam: Sequence[int], mu: Sequence[int], x, y, dual: bool = False) -> Coef:
    """s_{lam/mu} (or its dual) at one variable pair, from the ribbon formula."""
    lam, mu = partition(lam), partition(mu)
    dec = ribbon_decompose(lam, mu)
    if dec.has_block:
        return Coef(0)
    x, y = Coef(x), Coef(y)
    c = env.alpha if dual else env.beta
    lc = conjugate(lam)
    ell = max(len(lam), part(lam, 1))
    out = Coef(1)
    for k in range(1, ell + 1):
        num = (1 - c(k - part(lc, k)) * x) * (1 + c(part(lam, k) - k + 1) * y)
        den = (1 + c(1 - k) * y) * (1 - c(k) * x)
        out = out * num / den
    for r in dec.ribbons:
        out = out * _ribbon_weight(env, r, x, y, dual)
    return out


def reverse_plane_partitions(lam: Sequence[int], mu: Sequence[int], n: int) -> Iterable[Tuple[Partition, ...]]:
    """Chains mu = nu_0 <= nu_1 <= ... <= nu_n = lam whose steps have no 2x2 block.

    These are the reverse plane partitions of lam/mu with entries 1..n and
    every level set a disjoint union of ribbons.
    """
    lam, mu = partition(lam), partition(mu)
    mids = [nu for nu in subpartitions(lam) if contains(nu, mu)]

    def rec(cur, left):
        if left == 1:
            if not ribbon_decompose(lam, cur).has_block:
                yield (lam,)
            return
        for nu in mids:
            if contains(nu, cur) and not ribbon_decompose(nu, cur).has_block:
                for rest in rec(nu, left - 1):
                    yield (nu,) + rest

    if n == 0:
        if lam == mu:
            yield ()
        return
    for chain in rec(mu, n):
        yield (mu,) + chain


def rpp_sum(env: ParamEnv, lam: Sequence[int], mu: Sequence[int], rows: Sequence[Tuple[object, object]],
            dual: bool = False) -> Coef:
    """Sum over ribbon-level reverse plane partitions of per-level weights."""
    total = Coef(0)
    for chain in reverse_plane_partitions(lam, mu, len(rows)):
        w = Coef(1)
        for lvl, (x, y) in enumerate(rows):
            w = w * one_var_dfs(env, chain[lvl + 1], chain[lvl], x, y, dual)
            if w.is_zero():
                break
        total = total + w
    if not rows:
        return Coef(1 if partition(lam) == partition(mu) else 0)
    return total


# -- skew Pieri ----------------------------------------------------------------


def skew_pieri_coeff(env: ParamEnv, k: int, lam: Sequence[int], mu: Sequence[int], nu: Sequence[int],
                     eta: Sequence[int], kind: str = "h", var: str = "z") -> Coef:
    """Residue coefficient of s_{lam/eta} in h_k s_{mu/nu} (or e_k s_{mu/nu}).

    The integrand is a rational function of z; its residues are taken at
    the beta poles of the shifted power factor (0 stands for any vanishing
    beta).  For the e kind the normalizing factor is 1 - alpha_{1-k} beta_{1-k},
    the one that makes the integrand dual to the e generating basis.
    """
    lam, mu, nu, eta = map(partition, (lam, mu, nu, eta))
    if not contains(lam, mu) or not contains(nu, eta):
        return Coef(0)
    z = env.symbol(var)
    if kind == "h":
        b0 = env.beta(0)
        f = one_var_dfs(env, nu, eta, b0, -z, dual=True)
        if f.is_zero():
            return f
        g = one_var_dfs(env, lam, mu, z, -b0, dual=True)
        if g.is_zero():
            return g
        f = f * g * semi_power(env.alpha, k - 1, z) / bar_power(env.beta, k + 1, z, shift=-1)
        poles = [env.beta(j) for j in range(0, k + 1)]
        norm = 1 - env.alpha(k) * env.beta(k)
    elif kind == "e":
        b1 = env.beta(1)
        f = one_var_dfs(env, nu, eta, z, -b1, dual=True)
        if f.is_zero():
            return f
        g = one_var_dfs(env, lam, mu, b1, -z, dual=True)
        if g.is_zero():
            return g
        f = f * g * bar_power(env.beta, -k - 1, z, shift=1) / semi_power(env.alpha, 1 - k, z)
        poles = [env.beta(j) for j in range(1 - k, 2)]
        norm = 1 - env.alpha(1 - k) * env.beta(1 - k)
    else:
        raise ValueError("kind must be 'h' or 'e'")
    return norm * contour_integral(f, poles, var)


def pieri_prefactor(env: ParamEnv, k: int, kind: str) -> Coef:
    """Scalar in front of the coefficient sum: 1 for h, (-1)^k (1-a_1 b_1)/(1-a_{1-k} b_{1-k}) for e."""
    if kind == "h":
        return Coef(1)
    a, b = env.alpha, env.beta
    return Coef((-1) ** k) * (1 - a(1) * b(1)) / (1 - a(1 - k) * b(1 - k))


def pieri_skew_bound(env: ParamEnv, D: int) -> int:
    """Largest |lam/eta| whose one-pair function can reach total degree D.

    Each ribbon carries a factor x + y and every cell with a predecessor in
    its ribbon and vanishing alpha at its content carries x or y, so a
    ribbon of size r has degree at least r - N_alpha and at least 1.  The
    number of ribbons is at most the degree, so |lam/eta| <= D (1 + N_alpha).
    """
    return D * (1 + len(env.support("alpha")))


def skew_pieri_terms(env: ParamEnv, k: int, mu: Sequence[int], nu: Sequence[int], kind: str = "h",
                     max_skew: int = 4) -> Dict[Tuple[Partition, Partition], Coef]:
    """Nonzero coefficients over (lam, eta) with |lam/eta| <= max_skew.

    Both lam/mu and lam/eta must be free of 2x2 blocks; other terms vanish
    at one variable pair.
    """
    from .fock import partitions_upto

    mu, nu = partition(mu), partition(nu)
    out = {}
    for eta in subpartitions(nu):
        if ribbon_decompose(nu, eta).has_block:
            continue
        for lam in partitions_upto(sum(eta) + max_skew):
            if not contains(lam, mu) or not contains(lam, eta):
                continue
            if ribbon_decompose(lam, mu).has_block or ribbon_decompose(lam, eta).has_block:
                continue
            c = skew_pieri_coeff(env, k, lam, mu, nu, eta, kind)
            if not c.is_zero():
                out[(lam, eta)] = c
    return out


def skew_pieri_sides(env: ParamEnv, k: int, mu: Sequence[int], nu: Sequence[int], kind: str, x, y, D: int,
                     extra: int = 0) -> Tuple[Coef, Coef]:
    """Both sides of the Pieri identity at one pair x/y, expanded to total degree D.

    Left: h_k s_{mu/nu} (or e_k s_{mu/nu}).  Right: the prefactor times the
    coefficient sum over lam, eta.  The sum is infinite for symbolic
    parameters, but only |lam/eta| <= pieri_skew_bound contributes below
    degree D + 1; ``extra`` widens that cut.
    """
    from .ring import ratfn_expand

    xs, ys = str(x), str(y)
    single = (k,) if kind == "h" else (1,) * k
    left = one_var_dfs(env, single, (), x, y) * one_var_dfs(env, mu, nu, x, y) if contains(mu, nu) else Coef(0)
    left = ratfn_expand(left, [xs, ys], D)
    terms = skew_pieri_terms(env, k, mu, nu, kind, pieri_skew_bound(env, D) + extra)
    right = Coef(0)
    for (lam, eta), c in terms.items():
        s = one_var_dfs(env, lam, eta, x, y)
        if not s.is_zero():
            right = right + ratfn_expand(c * s, [xs, ys], D)
    right = ratfn_expand(pieri_prefactor(env, k, kind) * right, [xs, ys], D)
    return left, right


# -- current matrices on a window ----------------------------------------------


def current_window_matrix(env: ParamEnv, k: int, p: int, q: int) -> List[List[Coef]]:
    """Upper-triangular matrix (A_ij^k) for p <= i <= j <= q."""
    from .currents import coeff_A

    n = q - p + 1
    return [[coeff_A(env, p + i, p + j, k) if j >= i else Coef(0) for j in range(n)] for i in range(n)]
