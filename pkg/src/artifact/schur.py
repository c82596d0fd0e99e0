"""Double factorial Schur functions and the identities relating them.

Every function takes a ``PowersumSpec``.  In series mode values are
``PSeries`` truncated at its order; in specialized mode
(p_k = sum over pairs of x^k - (-y)^k) values are exact ``Coef``s, computed
through the row transfer matrices of the lattice module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .currents import PowersumSpec, apply_H, coeff_A, matrix_element_H
from .fock import (
    FockVector,
    Partition,
    conjugate,
    contains,
    frobenius,
    part,
    partition,
    s_set,
    size,
    subpartitions,
    t_set,
)
from .lattice import rtm_multi
from .ring import Coef, PSeries, series_exp
from .shifted import ParamEnv, delta_m, lambda_m_xy

__all__ = [
    "DFSResult",
    "dfs",
    "dfs_dual",
    "hk_shifted",
    "ek_shifted",
    "xi_series",
    "xi_pair_series",
    "lambda_series",
    "exp_xi",
    "exp_lambda",
    "jacobi_trudi",
    "giambelli",
    "mn_expand",
    "omega_apply",
    "rescale_family",
    "substitute_sum",
    "supersym_powersum",
    "involution_factor",
    "dual_factor",
    "cauchy_sides",
    "branching_sides",
    "skew_pieri_vertex_sides",
    "determinant",
    "series_to_json",
    "series_from_json",
]

Value = Union[PSeries, Coef]


@dataclass(frozen=True)
class DFSResult:
    """A skew function value together with how it was computed."""

    lam: Partition
    mu: Partition
    mode: str  # "series" or "specialized"
    value: Value
    route: str  # definition | jacobi_trudi | giambelli | lattice | mn_recursion
    trunc: Optional[int] = None

    def __eq__(self, other):
        if isinstance(other, DFSResult):
            return self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash((self.lam, self.mu, self.mode))


def _mode(spec: PowersumSpec) -> str:
    return "series" if spec.is_series else "specialized"


def _zero(spec: PowersumSpec) -> Value:
    return PSeries(spec.trunc) if spec.is_series else Coef(0)


def _one(spec: PowersumSpec) -> Value:
    return PSeries.const(spec.trunc) if spec.is_series else Coef(1)


# -- the definitions ---------------------------------------------------------


def _dfs_value(env: ParamEnv, lam: Partition, mu: Partition, spec: PowersumSpec) -> Value:
    if not contains(lam, mu):
        return _zero(spec)
    if spec.is_series:
        key = ("dfs", lam, mu, spec.trunc, spec.family)
        hit = env.cache.get(key)
        if hit is None:
            hit = matrix_element_H(env, 1, spec, mu, lam, 0)
            env.cache[key] = hit
        return hit
    return rtm_multi(env, mu, lam, 0, spec.pairs, 1)


def dfs(env: ParamEnv, lam: Sequence[int], mu: Sequence[int] = (), spec: PowersumSpec = None) -> DFSResult:
    """s_{lam/mu}(p || alpha; beta) = <mu| e^{H_+(p)} |lam>.

    Zero unless mu is contained in lam.
    """
    lam, mu = partition(lam), partition(mu)
    route = "definition" if spec.is_series else "lattice"
    return DFSResult(lam, mu, _mode(spec), _dfs_value(env, lam, mu, spec), route, spec.trunc)


def _dual_value(env: ParamEnv, lam: Partition, mu: Partition, spec: PowersumSpec) -> Value:
    if not contains(lam, mu):
        return _zero(spec)
    if spec.is_series:
        key = ("dual", lam, mu, spec.trunc, spec.family)
        hit = env.cache.get(key)
        if hit is None:
            hit = matrix_element_H(env, -1, spec, lam, mu, 0)
            env.cache[key] = hit
        return hit
    return rtm_multi(env, lam, mu, 0, spec.pairs, -1)


def dfs_dual(env: ParamEnv, lam: Sequence[int], mu: Sequence[int] = (), spec: PowersumSpec = None) -> DFSResult:
    """The dual function <lam| e^{H_-(p)} |mu>."""
    lam, mu = partition(lam), partition(mu)
    route = "definition" if spec.is_series else "lattice"
    return DFSResult(lam, mu, _mode(spec), _dual_value(env, lam, mu, spec), route, spec.trunc)


def hk_shifted(env: ParamEnv, k: int, shift: int, spec: PowersumSpec) -> Value:
    """h_k with both parameter sequences shifted by sigma^shift; zero for k < 0."""
    if k < 0:
        return _zero(spec)
    if k == 0:
        return _one(spec)
    return _dfs_value(env.shift(shift), (k,), (), spec)


def ek_shifted(env: ParamEnv, k: int, shift: int, spec: PowersumSpec) -> Value:
    if k < 0:
        return _zero(spec)
    if k == 0:
        return _one(spec)
    return _dfs_value(env.shift(shift), (1,) * k, (), spec)


# -- exponential prefactors ----------------------------------------------------


def xi_series(D: int, z, family: str = "p") -> PSeries:
    """xi(p; z) = sum_k p_k z^k / k."""
    z = Coef(z)
    return PSeries(D, {((family, k),): z ** k / k for k in range(1, D + 1)})


def xi_pair_series(D: int, fam1: str = "p", fam2: str = "q") -> PSeries:
    """xi(p; p') = sum_k p_k p'_k / k, truncated at D in each family."""
    return PSeries(D, {((fam1, k), (fam2, k)): Coef(1, k) for k in range(1, D + 1)})


def lambda_series(env: ParamEnv, m: int, D: int, which: str = "beta", family: str = "p") -> PSeries:
    """Lambda_m(p | c) = sum_k (p_k / k) Delta_m(k | c)."""
    return PSeries(D, {((family, k),): delta_m(env, k, m, which) / k for k in range(1, D + 1)})


def exp_xi(spec: PowersumSpec, z, sign: int = 1) -> Value:
    """e^{sign * xi(p; z)}; at p = x/y this is prod ((1 + y z)/(1 - x z))^sign."""
    z = Coef(z)
    if spec.is_series:
        f = xi_series(spec.trunc, z, spec.family)
        return series_exp(f if sign > 0 else -f)
    out = Coef(1)
    for x, y in spec.pairs:
        out = out * (1 + y * z) / (1 - x * z)
    return out if sign > 0 else 1 / out


def exp_lambda(env: ParamEnv, m: int, spec: PowersumSpec, which: str = "beta") -> Value:
    if spec.is_series:
        return series_exp(lambda_series(env, m, spec.trunc, which, spec.family))
    out = Coef(1)
    for x, y in spec.pairs:
        out = out * lambda_m_xy(env, m, x, y, which)
    return out


# -- determinants ------------------------------------------------------------------


def determinant(mat: Sequence[Sequence[Value]], zero: Value) -> Value:
    """Laplace expansion along rows, memoized on the set of used columns."""
    n = len(mat)
    if n == 0:
        return zero + 1
    memo: Dict[Tuple[int, int], Value] = {}

    def minor(row: int, used: int) -> Value:
        if row == n:
            return zero + 1
        key = (row, used)
        if key in memo:
            return memo[key]
        total = zero
        sign = 1
        for c in range(n):
            if used >> c & 1:
                continue
            entry = mat[row][c]
            if not _is_zero(entry):
                rest = minor(row + 1, used | (1 << c))
                if not _is_zero(rest):
                    term = entry * rest
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return minor(0, 0)


def _is_zero(v: Value) -> bool:
    return v.is_zero()


def jacobi_trudi(env: ParamEnv, lam: Sequence[int], mu: Sequence[int] = (), spec: PowersumSpec = None,
                 n: Optional[int] = None, dual: bool = False) -> DFSResult:
    """Skew function from the (dual) Jacobi-Trudi determinant.

    The h-version is e^{Lambda_{-n}(p|beta)} det[e^{xi(p; beta_c)} h_{lam_i - mu_j - i + j}(sigma^c)]
    with c = mu_j - j + 1.  The dual version uses conjugate shapes, e_k and
    e^{Lambda_n} with c = j - mu'_j.
    """
    lam, mu = partition(lam), partition(mu)
    if not contains(lam, mu):
        return DFSResult(lam, mu, _mode(spec), _zero(spec), "jacobi_trudi", spec.trunc)
    if dual:
        rows, cols = conjugate(lam), conjugate(mu)
    else:
        rows, cols = lam, mu
    need = max(len(rows), len(cols))
    if n is None:
        n = need
    elif n < need:
        raise ValueError("determinant size %d is smaller than the needed %d" % (n, need))
    zero = _zero(spec)
    mat = []
    colfac = []
    for j in range(1, n + 1):
        if dual:
            c = j - part(cols, j)
            colfac.append(exp_xi(spec, env.beta(c), -1))
        else:
            c = part(cols, j) - j + 1
            colfac.append(exp_xi(spec, env.beta(c), 1))
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            k = part(rows, i) - part(cols, j) - i + j
            if dual:
                entry = ek_shifted(env, k, j - part(cols, j) - 1, spec)
            else:
                entry = hk_shifted(env, k, part(cols, j) - j + 1, spec)
            row.append(entry * colfac[j - 1] if not entry.is_zero() else zero)
        mat.append(row)
    pref = exp_lambda(env, n if dual else -n, spec)
    val = pref * determinant(mat, zero)
    return DFSResult(lam, mu, _mode(spec), val, "jacobi_trudi", spec.trunc)


def _hook(a: int, b: int) -> Partition:
    return (a + 1,) + (1,) * b


def giambelli(env: ParamEnv, lam: Sequence[int], spec: PowersumSpec) -> DFSResult:
    """det[s_{(a_i | b_j)}] over the Frobenius coordinates of lam."""
    lam = partition(lam)
    a, b = frobenius(lam)
    mat = [[_dfs_value(env, _hook(ai, bj), (), spec) for bj in b] for ai in a]
    return DFSResult(lam, (), _mode(spec), determinant(mat, _zero(spec)), "giambelli", spec.trunc)


# -- Murnaghan-Nakayama --------------------------------------------------------


def supersym_powersum(env: ParamEnv, k: int, S: Iterable[int], T: Iterable[int], which: str = "beta") -> Coef:
    """sum_{i in S} c_i^k - sum_{i in T} c_i^k."""
    c = env.seq(which)
    total = Coef(0)
    for i in S:
        total = total + c(i) ** k
    for i in T:
        total = total - c(i) ** k
    return total


def _positions(lam: Partition, rows: int) -> List[int]:
    return [part(lam, r) - r + 1 for r in range(1, rows + 1)]


def _from_positions(pos: Sequence[int]) -> Partition:
    pos = sorted(pos, reverse=True)
    return partition(p + r - 1 for r, p in enumerate(pos, 1))


def _move_bound(env: ParamEnv, k: int) -> int:
    # J_{-k} moves a particle up by at most k plus the number of nonzero beta
    return k + len(env.support("beta"))


def mn_expand(env: ParamEnv, k: int, lam: Sequence[int], direction: str = "multiply") -> List[Tuple[Partition, Coef]]:
    """p_k * s_lam (multiply) or k d/dp_k s_lam (differentiate) in the s-basis.

    Ribbons are added (multiply) or removed (differentiate); a ribbon with
    content interval [i, j) and r rows carries (-1)^(r-1) times A^{-k}_{j,i}
    or A^k_{i,j}.  The multiply list is finite because beta has finite support.
    """
    if k < 1:
        raise ValueError("k must be positive")
    lam = partition(lam)
    out: Dict[Partition, Coef] = {}
    if direction == "multiply":
        diag = supersym_powersum(env, k, s_set(lam), t_set(lam), "alpha")
        bound = _move_bound(env, k)
        rows = len(lam) + bound
        pos = _positions(lam, rows)
        occ = set(pos)
        for r, a in enumerate(pos):
            for b in range(a + 1, a + bound + 1):
                if b in occ:
                    continue
                c = coeff_A(env, b, a, -k)
                if c.is_zero():
                    continue
                between = sum(1 for p in occ if a < p < b)
                new = list(pos)
                new[r] = b
                nu = _from_positions(new)
                out[nu] = out.get(nu, Coef(0)) + (c if between % 2 == 0 else -c)
    elif direction == "differentiate":
        diag = supersym_powersum(env, k, s_set(lam), t_set(lam), "beta")
        rows = len(lam) + 1
        pos = _positions(lam, rows)
        occ = set(pos)
        floor = pos[-1]
        for r, a in enumerate(pos[:-1]):
            for b in range(floor + 1, a):
                if b in occ:
                    continue
                c = coeff_A(env, b, a, k)
                if c.is_zero():
                    continue
                between = sum(1 for p in occ if b < p < a)
                new = list(pos)
                new[r] = b
                nu = _from_positions(new)
                out[nu] = out.get(nu, Coef(0)) + (c if between % 2 == 0 else -c)
    else:
        raise ValueError("direction must be 'multiply' or 'differentiate'")
    if not diag.is_zero():
        out[lam] = out.get(lam, Coef(0)) + diag
    items = [(nu, c) for nu, c in out.items() if not c.is_zero()]
    return sorted(items, key=lambda t: (size(t[0]), t[0]))


# -- series operations -----------------------------------------------------------


def rescale_family(f: PSeries, family: str, fn: Callable[[int], int]) -> PSeries:
    """Multiply each variable (family, k) by the integer fn(k)."""
    terms = {}
    for m, c in f.terms.items():
        s = 1
        for fam, k in m:
            if fam == family:
                s *= fn(k)
        terms[m] = c * s
    return PSeries(f.trunc, terms)


def omega_apply(f: PSeries, family: str = "p") -> PSeries:
    """The involution p_k -> (-1)^(k+1) p_k."""
    return rescale_family(f, family, lambda k: 1 if k % 2 else -1)


def substitute_sum(f: PSeries, family: str, other: str) -> PSeries:
    """p_k -> p_k + q_k for every k (the coproduct used by branching)."""
    images = {}
    for m in f.terms:
        for fam, k in m:
            if fam == family and (fam, k) not in images:
                images[(fam, k)] = PSeries(f.trunc, {((family, k),): Coef(1), ((other, k),): Coef(1)})
    return f.substitute(images)


# -- identities -------------------------------------------------------------------


def _one_minus_ab(env: ParamEnv, i: int) -> Coef:
    return 1 - env.alpha(i) * env.beta(i)


def involution_factor(env: ParamEnv, lam: Sequence[int], mu: Sequence[int] = ()) -> Coef:
    """prod_i (1 - a b)_{lam_i - i + 1} / (1 - a b)_{mu_i - i + 1}."""
    lam, mu = partition(lam), partition(mu)
    out = Coef(1)
    for i in range(1, max(len(lam), len(mu)) + 1):
        out = out * _one_minus_ab(env, part(lam, i) - i + 1) / _one_minus_ab(env, part(mu, i) - i + 1)
    return out


def dual_factor(env: ParamEnv, lam: Sequence[int], mu: Sequence[int] = ()) -> Coef:
    """prod_i (1 - a b)_{i - lam'_i} / (1 - a b)_{i - mu'_i}."""
    lc, mc = conjugate(partition(lam)), conjugate(partition(mu))
    out = Coef(1)
    for i in range(1, max(len(lc), len(mc)) + 1):
        out = out * _one_minus_ab(env, i - part(lc, i)) / _one_minus_ab(env, i - part(mc, i))
    return out


def _dual_support(env: ParamEnv, nu: Partition, D: int) -> Dict[Partition, PSeries]:
    """Every lam with <lam| e^{H_-(q)} |nu> nonzero below q-degree D, with its value."""
    out = apply_H(env, -1, PowersumSpec.series(D, "q"), FockVector.basis(nu, 0))
    return {ket[0]: s for ket, s in out.items() if ket[1] == 0}


def _lift(f: PSeries, D: int) -> PSeries:
    return f if f.trunc == D else PSeries(D, f.terms)


def cauchy_sides(env: ParamEnv, mu: Sequence[int], nu: Sequence[int], D: int,
                 dual: bool = False) -> Tuple[PSeries, PSeries]:
    """Both sides of the skew Cauchy identity in families p and q (q stands for p').

    left  = sum_lam s_{lam/mu}(p) shat_{lam/nu}(+-q)
    right = e^{+-xi(p;q)} sum_lam shat_{mu/lam}(+-q) s_{nu/lam}(p)

    The left sum runs over the support of e^{H_-(q)}|nu> at q-degree <= D,
    which contains every lam that can contribute below that truncation.
    """
    mu, nu = partition(mu), partition(nu)
    sgn = -1 if dual else 1
    p_spec = PowersumSpec.series(D, "p")
    q_spec = PowersumSpec.series(D, "q")

    def hat_q(f: PSeries) -> PSeries:
        return rescale_family(f, "q", lambda k: -1) if dual else f

    left = PSeries(D)
    for lam, shat in sorted(_dual_support(env, nu, D).items()):
        if not contains(lam, mu):
            continue
        s = _dfs_value(env, lam, mu, p_spec)
        left = left + s * hat_q(shat)
    right = PSeries(D)
    for lam in subpartitions(mu):
        if not contains(nu, lam):
            continue
        shat = _dual_value(env, mu, lam, q_spec)
        s = _dfs_value(env, nu, lam, p_spec)
        right = right + hat_q(shat) * s
    kernel = series_exp(xi_pair_series(D, "p", "q") * sgn)
    return left, kernel * right


def branching_sides(env: ParamEnv, lam: Sequence[int], mu: Sequence[int], D: int) -> Tuple[PSeries, PSeries]:
    """s_{lam/mu}(p + q) against sum_nu s_{lam/nu}(p) s_{nu/mu}(q)."""
    lam, mu = partition(lam), partition(mu)
    p_spec = PowersumSpec.series(D, "p")
    q_spec = PowersumSpec.series(D, "q")
    left = substitute_sum(_dfs_value(env, lam, mu, p_spec), "p", "q")
    right = PSeries(D)
    for nu in subpartitions(lam):
        if contains(nu, mu):
            right = right + _dfs_value(env, lam, nu, p_spec) * _dfs_value(env, nu, mu, q_spec)
    # s(p) is only known through weight D, so compare through total weight D
    return _total_weight_at_most(left, D), _total_weight_at_most(right, D)


def _total_weight_at_most(f: PSeries, D: int) -> PSeries:
    return PSeries(f.trunc, {m: c for m, c in f.terms.items() if sum(k for _, k in m) <= D})


def skew_pieri_vertex_sides(env: ParamEnv, mu: Sequence[int], nu: Sequence[int], D: int,
                            sign: int = 1) -> Tuple[PSeries, PSeries]:
    """Both sides of the skew-Pieri generating formula in families p and q (q = p').

    left  = sum_{lam, eta} shat_{nu/eta}(-+p) s_{lam/eta}(q) shat_{lam/mu}(+-p)
    right = e^{+-xi(p;q)} s_{mu/nu}(q)
    """
    mu, nu = partition(mu), partition(nu)
    p_spec = PowersumSpec.series(D, "p")
    q_spec = PowersumSpec.series(D, "q")
    flip = lambda f: rescale_family(f, "p", lambda k: -1)
    out = apply_H(env, -1, p_spec, FockVector.basis(mu, 0))
    upper = {ket[0]: s for ket, s in out.items() if ket[1] == 0}
    left = PSeries(D)
    for eta in subpartitions(nu):
        outer = _dual_value(env, nu, eta, p_spec)
        outer = flip(outer) if sign > 0 else outer
        for lam, inner in sorted(upper.items()):
            if not contains(lam, eta):
                continue
            inner = inner if sign > 0 else flip(inner)
            left = left + outer * _dfs_value(env, lam, eta, q_spec) * inner
    kernel = series_exp(xi_pair_series(D, "p", "q") * sign)
    right = kernel * _dfs_value(env, mu, nu, q_spec) if contains(mu, nu) else PSeries(D)
    return left, right


# -- serialization ----------------------------------------------------------------


def series_to_json(f: PSeries) -> dict:
    """{"truncation": D, "terms": [{"p": [k1, k2, ...], "coeff": "..."}]} with sorted terms.

    Terms in other families carry their family name as the key.
    """
    terms = []
    for m, c in f.items():
        entry: Dict[str, object] = {}
        fams = sorted({fam for fam, _ in m}) or ["p"]
        for fam in fams:
            entry[fam] = sorted((k for g, k in m if g == fam), reverse=True)
        entry["coeff"] = str(c)
        terms.append(entry)
    return {"truncation": f.trunc, "terms": terms}


def series_from_json(doc: dict) -> PSeries:
    if not isinstance(doc, dict) or "truncation" not in doc or "terms" not in doc:
        raise ValueError("series document needs 'truncation' and 'terms'")
    terms = {}
    for t in doc["terms"]:
        mono = []
        for fam, ks in t.items():
            if fam == "coeff":
                continue
            mono.extend((fam, int(k)) for k in ks)
        terms[tuple(sorted(mono))] = Coef(t["coeff"])
    return PSeries(int(doc["truncation"]), terms)
