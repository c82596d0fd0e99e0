"""Identity suites shared by the command line and the acceptance tests.

Each suite returns a ``SuiteResult`` holding one ``Check`` per identity
instance.  Defaults are the full acceptance parameters; ``max_size``
shrinks the partition range for quick runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .currents import (
    PowersumSpec,
    apply_J,
    coeff_A,
    deformed_shift,
    matrix_element_H,
    phi_psi,
    shift_vacuum,
    vacuum_bra_shift,
)
from .fock import (
    FockVector,
    apply_psi,
    conjugate,
    contains,
    partition,
    partitions_in_box,
    partitions_upto,
    size,
    subpartitions,
)
from .integrable import bilinear_residue_check, hirota_kp_check, tau_from_partition
from .lattice import (
    current_window_matrix,
    one_var_dfs,
    rpp_sum,
    rtm_coeff,
    rtm_expansion,
    rtm_factors,
    rtm_multi,
    skew_pieri_sides,
    wick_det,
)
from .ring import Coef, PSeries
from .schur import (
    branching_sides,
    cauchy_sides,
    dfs,
    dfs_dual,
    dual_factor,
    giambelli,
    involution_factor,
    jacobi_trudi,
    mn_expand,
    omega_apply,
    skew_pieri_vertex_sides,
)
from .shifted import ParamEnv, bar_power, contour_integral, semi_power
from .tableaux import super_schur

__all__ = ["Check", "SuiteResult", "SUITES", "run_suite", "run_all"]


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: List[Check] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, bool(ok), detail))

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checks": len(self.checks),
            "failures": [{"name": c.name, "detail": c.detail} for c in self.failures],
            "runtime": round(self.runtime, 3),
        }


def _cap(n: int, max_size: Optional[int]) -> int:
    return n if max_size is None else min(n, max_size)


def _box(rows: int, cols: int, max_size: Optional[int]) -> List[Tuple[int, ...]]:
    return [lam for lam in partitions_in_box(rows, cols) if max_size is None or size(lam) <= max_size]


def _xy(env: ParamEnv, i: int = 0):
    if i == 0:
        return env.symbol("x"), env.symbol("y")
    return env.symbol("x%d" % i), env.symbol("y%d" % i)


# -- 1. the one-row lattice example ------------------------------------------------


def suite_lattice_example(max_size=None) -> SuiteResult:
    out = SuiteResult("lattice_example")
    env = ParamEnv.symbolic(-2, 6)
    x, y = _xy(env)
    a, b = env.alpha, env.beta
    expected = ((1 - a(5) * b(5)) / (1 - b(5) * x) * (x - a(4)) / (1 - b(4) * x) * (x - a(3)) / (1 - b(3) * x)
                * (x + y) / (1 - b(2) * x) * (1 - b(0) * x) / (1 + b(0) * y))
    got = rtm_coeff(env, (2,), (5,), 0, x, y, 1)
    out.add("scan (5)->(2)", got == expected, str(got))
    fs = rtm_factors(env, (2,), (5,), 0, x, y, 1)
    prod = Coef(1)
    for f in fs or []:
        prod = prod * f
    out.add("factor list product", prod == expected)
    out.add("wick determinant", wick_det(env, (2,), (5,), 0, x, y, 1) == expected)
    return out


# -- 2. p_k in the s-basis at beta = 0 ----------------------------------------------


def suite_pk_expansion(max_size=None) -> SuiteResult:
    out = SuiteResult("pk_expansion")
    env = ParamEnv.symbolic(-4, 5, beta=False)
    a = env.alpha
    got1 = dict(mn_expand(env, 1, (), "multiply"))
    out.add("p_1 = s_(1)", got1 == {(1,): Coef(1)}, str(got1))
    got2 = dict(mn_expand(env, 2, (), "multiply"))
    want2 = {(1,): a(0) + a(1), (1, 1): Coef(-1), (2,): Coef(1)}
    out.add("p_2 expansion", got2 == want2, str(got2))
    return out


# -- 3. J_k on |3,2,1> ------------------------------------------------------------------


def contour_A(env: ParamEnv, i: int, j: int, k: int) -> Coef:
    """A_ij^k (k > 0) as the residue at 0 of its defining integrand.

    The contour encloses 0 but none of the 1/beta poles.
    """
    if j < i:
        return Coef(0)
    z = env.symbol("z")
    f = (1 - env.alpha(j) * env.beta(j)) * bar_power(env.alpha, j - i - 1, z, i)
    f = f / semi_power(env.beta, j - i + 1, z, i - 1) / z ** k
    return contour_integral(f, [Coef(0)], "z")


def suite_jk_example(max_size=None, ks=(1, 2, 3)) -> SuiteResult:
    out = SuiteResult("jk_example")
    env = ParamEnv.symbolic(-4, 5)
    b = env.beta
    for k in ks:
        w = apply_J(env, k, FockVector.basis((3, 2, 1), 0))
        want = {
            (3, 2, 1): b(3) ** k + b(1) ** k - b(0) ** k - b(-2) ** k,
            (3, 2): coeff_A(env, -2, -1, k),
            (3, 1, 1): coeff_A(env, 0, 1, k),
            (2, 2, 1): coeff_A(env, 2, 3, k),
            (1, 1, 1): -coeff_A(env, 0, 3, k),
            (3,): -coeff_A(env, -2, 1, k),
            (1,): coeff_A(env, -2, 3, k),
        }
        got = {ket[0]: c for ket, c in w.terms.items()}
        out.add("k=%d support" % k, set(got) == set(want), str(sorted(got)))
        for lam, c in sorted(want.items()):
            out.add("k=%d coefficient on %s" % (k, lam), got.get(lam, Coef(0)) == c)
        for (i, j) in [(-2, -1), (0, 1), (2, 3), (0, 3), (-2, 1), (-2, 3)]:
            out.add("k=%d A_%d,%d by residues" % (k, i, j), coeff_A(env, i, j, k) == contour_A(env, i, j, k))
    return out


# -- 4. transfer matrix = Wick determinant = half vertex operator ---------------------


def suite_texph(max_size=None, box=3, window=(-4, 5), D=8, charges=(-1, 0, 1)) -> SuiteResult:
    out = SuiteResult("texph")
    env = ParamEnv.symbolic(*window)
    x, y = _xy(env)
    specials = {1: env.with_beta_zero(), -1: env.with_alpha_zero()}
    spec = PowersumSpec.series(D)
    values = {("p", k): x ** k - (-y) ** k for k in range(1, D + 1)}
    one_pair = PowersumSpec.specialized([(x, y)])
    for sign in (1, -1):
        env0 = specials[sign]
        for lam in _box(box, box, max_size):
            for mu in subpartitions(lam):
                bra, ket = (mu, lam) if sign > 0 else (lam, mu)
                for m in charges:
                    tag = "%s %s/%s m=%d" % ("+" if sign > 0 else "-", lam, mu, m)
                    scan = rtm_coeff(env, bra, ket, m, x, y, sign)
                    out.add("scan=wick " + tag, scan == wick_det(env, bra, ket, m, x, y, sign))
                    series = matrix_element_H(env, sign, spec, bra, ket, m)
                    lhs = series.specialize(values) if isinstance(series, PSeries) else Coef(0)
                    rhs = rtm_expansion(env, bra, ket, m, "x", "y", D, sign)
                    out.add("scan=vertex deg %d " % D + tag, lhs == rhs)
                    exact = matrix_element_H(env0, sign, one_pair, bra, ket, m)
                    out.add("scan=vertex exact " + tag, exact == rtm_coeff(env0, bra, ket, m, x, y, sign))
    return out


# -- 5. route agreement and Murnaghan-Nakayama consistency -------------------------------


def suite_routes(max_size=None, n=6, D=6, window=(-4, 5), mn_size=4, mn_k=3) -> SuiteResult:
    out = SuiteResult("routes")
    env = ParamEnv.symbolic(*window)
    spec = PowersumSpec.series(D)
    for lam in partitions_upto(_cap(n, max_size)):
        a = dfs(env, lam, (), spec)
        out.add("jacobi_trudi %s" % (lam,), a == jacobi_trudi(env, lam, (), spec))
        out.add("dual jacobi_trudi %s" % (lam,), a == jacobi_trudi(env, lam, (), spec, dual=True))
        out.add("giambelli %s" % (lam,), a == giambelli(env, lam, spec))
    env0 = env.with_beta_zero()
    for lam in partitions_upto(_cap(mn_size, max_size)):
        base = jacobi_trudi(env0, lam, (), spec).value
        for k in range(1, mn_k + 1):
            lhs = PSeries.var(D, k) * base
            rhs = PSeries(D)
            for nu, c in mn_expand(env0, k, lam, "multiply"):
                rhs = rhs + jacobi_trudi(env0, nu, (), spec).value * c
            out.add("multiply p_%d s_%s" % (k, lam), lhs == rhs)
            full = dfs(env0, lam, (), spec).value
            deriv = PSeries(D - k, {})
            for mono, c in full.terms.items():
                cnt = mono.count(("p", k))
                if cnt:
                    rest = list(mono)
                    rest.remove(("p", k))
                    deriv = deriv + PSeries(D - k, {tuple(rest): c * cnt * k})
            rhs = PSeries(D - k)
            for nu, c in mn_expand(env0, k, lam, "differentiate"):
                rhs = rhs + dfs(env0, nu, (), spec).value.truncate(D - k) * c
            out.add("differentiate %d d/dp_%d s_%s" % (k, k, lam), deriv == rhs)
    return out


# -- 6. Heisenberg relations -------------------------------------------------------------


def suite_heisenberg(max_size=None, n=5, window=(-4, 5), kmax=3) -> SuiteResult:
    out = SuiteResult("heisenberg")
    env = ParamEnv.symbolic(*window)
    ks = [k for k in range(-kmax, kmax + 1) if k]
    for lam in partitions_upto(_cap(n, max_size)):
        v = FockVector.basis(lam, 0)
        for k in ks:
            for l in ks:
                if l < k:
                    continue
                c = apply_J(env, k, apply_J(env, l, v)) - apply_J(env, l, apply_J(env, k, v))
                want = v.scale(k) if k == -l else FockVector()
                out.add("[J_%d,J_%d] on %s" % (k, l, lam), c == want)
    return out


# -- 7. the A-matrices form a semigroup -----------------------------------------------


def _matmul(A, B):
    n = len(A)
    return [[sum((A[i][r] * B[r][j] for r in range(n)), Coef(0)) for j in range(n)] for i in range(n)]


def suite_semigroup(max_size=None, width=7, window=(-4, 5), kmax=4) -> SuiteResult:
    out = SuiteResult("semigroup")
    env = ParamEnv.symbolic(*window)
    lo, hi = window
    for w in range(1, width + 1):
        for p in range(lo, hi - w + 2):
            q = p + w - 1
            for k in range(1, kmax + 1):
                for l in range(1, kmax + 1):
                    prod = _matmul(current_window_matrix(env, k, p, q), current_window_matrix(env, l, p, q))
                    out.add("A^%d A^%d on [%d,%d]" % (k, l, p, q), prod == current_window_matrix(env, k + l, p, q))
    return out


# -- 8. omega and duality --------------------------------------------------------------


def suite_duality(max_size=None, n=5, skew=2, D=5, window=(-4, 5)) -> SuiteResult:
    out = SuiteResult("duality")
    env = ParamEnv.symbolic(*window)
    spec = PowersumSpec.series(D)
    flipped = env.iota().negate()
    swapped = env.swap()
    swap_flip = env.swap().iota().negate()
    for lam in partitions_upto(_cap(n, max_size)):
        for mu in subpartitions(lam):
            if size(mu) > skew:
                continue
            tag = "%s/%s" % (lam, mu)
            s = dfs(env, lam, mu, spec).value
            lhs = omega_apply(s)
            rhs = dfs(flipped, conjugate(lam), conjugate(mu), spec).value * involution_factor(env, lam, mu)
            out.add("omega " + tag, lhs == rhs)
            hat = dfs_dual(env, lam, mu, spec).value
            out.add("dual by swap " + tag, hat == dfs(swapped, lam, mu, spec).value * dual_factor(env, lam, mu))
            out.add("dual by omega " + tag,
                    hat == omega_apply(dfs(swap_flip, conjugate(lam), conjugate(mu), spec).value))
    return out


# -- 9. skew Cauchy --------------------------------------------------------------------


def suite_cauchy(max_size=None, D=5, window=(-1, 2), box=(2, 2)) -> SuiteResult:
    out = SuiteResult("cauchy")
    env = ParamEnv.symbolic(*window)
    shapes = [s for s in subpartitions(box) if max_size is None or size(s) <= max_size]
    for dual in (False, True):
        for mu in shapes:
            for nu in shapes:
                left, right = cauchy_sides(env, mu, nu, D, dual)
                out.add("%s mu=%s nu=%s" % ("dual" if dual else "cauchy", mu, nu), left == right)
    return out


# -- 10. ribbons and reverse plane partitions ---------------------------------------------


def suite_ribbon(max_size=None, box=(3, 4), window=(-4, 5), rpp_box=(2, 3)) -> SuiteResult:
    out = SuiteResult("ribbon")
    env = ParamEnv.symbolic(*window)
    x, y = _xy(env)
    rows, cols = box
    for lam in _box(rows, cols, max_size):
        for mu in subpartitions(lam):
            tag = "%s/%s" % (lam, mu)
            out.add("ribbon " + tag, one_var_dfs(env, lam, mu, x, y) == rtm_coeff(env, mu, lam, 0, x, y, 1))
            out.add("dual ribbon " + tag,
                    one_var_dfs(env, lam, mu, x, y, dual=True) == rtm_coeff(env, lam, mu, 0, x, y, -1))
    envr = ParamEnv.symbolic(window[0], window[1], extra=("x1", "y1", "x2", "y2"))
    pairs = [_xy(envr, 1), _xy(envr, 2)]
    r2, c2 = rpp_box
    for lam in _box(r2, c2, max_size):
        for mu in subpartitions(lam):
            got = rpp_sum(envr, lam, mu, pairs)
            out.add("rpp %s/%s" % (lam, mu), got == rtm_multi(envr, mu, lam, 0, pairs, 1))
    return out


# -- 11. skew Pieri ----------------------------------------------------------------------


def suite_pieri(max_size=None, window=(0, 1), D=2, kmax=2, box=(2, 1), extra=0) -> SuiteResult:
    out = SuiteResult("pieri")
    env = ParamEnv.symbolic(*window)
    x, y = _xy(env)
    shapes = [s for s in subpartitions(box) if max_size is None or size(s) <= max_size]
    for kind in ("h", "e"):
        for k in range(0, kmax + 1):
            for mu in shapes:
                for nu in shapes:
                    left, right = skew_pieri_sides(env, k, mu, nu, kind, x, y, D, extra)
                    out.add("%s_%d mu=%s nu=%s" % (kind, k, mu, nu), left == right)
    return out


# -- 12. KP --------------------------------------------------------------------------------


def suite_kp(max_size=None, n=4, D=8, window=(-2, 3), residue_shapes=((), (1,), (2,)), residue_D=4) -> SuiteResult:
    out = SuiteResult("kp")
    env = ParamEnv.symbolic(*window)
    for lam in partitions_upto(_cap(n, max_size)):
        rep = hirota_kp_check(tau_from_partition(env, lam, D))
        out.add("hirota %s" % (lam,), rep.ok, "%d residual terms" % len(rep.residual))
    for lam in residue_shapes:
        rep = bilinear_residue_check(env, lam, residue_D)
        out.add("bilinear residue %s" % (lam,), rep.ok, "%d residual terms" % len(rep.residual))
    return out


# -- 13. classical limit -------------------------------------------------------------------


def suite_classical(max_size=None, n=5) -> SuiteResult:
    out = SuiteResult("classical")
    env = ParamEnv({}, {}, (0, 0))
    names = ("x1", "y1", "x2", "y2")
    from .ring import gens

    g = gens(names)
    pairs = [(g["x1"], g["y1"]), (g["x2"], g["y2"])]
    xs, ys = [g["x1"], g["x2"]], [g["y1"], g["y2"]]
    for lam in partitions_upto(_cap(n, max_size)):
        want = super_schur(lam, xs, ys)
        D = max(size(lam), 1)
        series = dfs(env, lam, (), PowersumSpec.series(D)).value
        vals = {("p", k): sum((x ** k - (-y) ** k for x, y in pairs), Coef(0)) for k in range(1, D + 1)}
        out.add("definition %s" % (lam,), series.specialize(vals) == want)
        out.add("lattice %s" % (lam,), rtm_multi(env, (), lam, 0, pairs, 1) == want)
    return out


# -- 14. deformed shift -----------------------------------------------------------------


def suite_shift(max_size=None, charges=(-2, -1, 0, 1, 2), window=(-4, 5)) -> SuiteResult:
    out = SuiteResult("shift")
    env = ParamEnv.symbolic(*window)
    for m in charges:
        # Sigma psi_m |0>_{m-1} = phi(psi_m) Sigma |0>_{m-1}
        base = shift_vacuum(env, m - 1)
        lhs = FockVector()
        for site, c in phi_psi(env, m, 1):
            lhs = lhs + apply_psi(site, base).scale(c)
        out.add("Sigma psi_%d vacuum" % m, lhs == shift_vacuum(env, m))
        out.add("Sigma on vacuum %d by conjugation" % m,
                deformed_shift(env, FockVector.basis((), m), 1) == shift_vacuum(env, m))
        for l in charges:
            ket = shift_vacuum(env, l)
            out.add("<0|_%d Sigma |0>_%d" % (m + 1, l), ket.coeff((), m + 1) == Coef(1 if m == l else 0))
            bra = vacuum_bra_shift(env, m + 1)
            out.add("bra form <0|_%d Sigma |0>_%d" % (m + 1, l), bra.coeff((), l) == Coef(1 if m == l else 0))
        back = deformed_shift(env, deformed_shift(env, FockVector.basis((), m), 1), -1)
        out.add("Sigma^-1 Sigma vacuum %d" % m, back == FockVector.basis((), m))
    return out


# -- extra invariants ------------------------------------------------------------------


def suite_branching(max_size=None, n=4, D=4, window=(-2, 3)) -> SuiteResult:
    out = SuiteResult("branching")
    env = ParamEnv.symbolic(*window)
    for lam in partitions_upto(_cap(n, max_size)):
        for mu in subpartitions(lam):
            left, right = branching_sides(env, lam, mu, D)
            out.add("%s/%s" % (lam, mu), left == right)
    return out


def suite_vertex(max_size=None, D=3, window=(0, 1), box=(2, 1)) -> SuiteResult:
    out = SuiteResult("pieri_vertex")
    env = ParamEnv.symbolic(*window)
    shapes = [s for s in subpartitions(box) if max_size is None or size(s) <= max_size]
    for sign in (1, -1):
        for mu in shapes:
            for nu in shapes:
                left, right = skew_pieri_vertex_sides(env, mu, nu, D, sign)
                out.add("sign %+d mu=%s nu=%s" % (sign, mu, nu), left == right)
    return out


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "lattice_example": suite_lattice_example,
    "pk_expansion": suite_pk_expansion,
    "jk_example": suite_jk_example,
    "texph": suite_texph,
    "routes": suite_routes,
    "heisenberg": suite_heisenberg,
    "semigroup": suite_semigroup,
    "duality": suite_duality,
    "cauchy": suite_cauchy,
    "ribbon": suite_ribbon,
    "pieri": suite_pieri,
    "kp": suite_kp,
    "classical": suite_classical,
    "shift": suite_shift,
    "branching": suite_branching,
    "pieri_vertex": suite_vertex,
}


def run_suite(name: str, max_size: Optional[int] = None, **kwargs) -> SuiteResult:
    if name not in SUITES:
        raise KeyError("unknown suite %r; choose from %s" % (name, ", ".join(sorted(SUITES))))
    start = time.perf_counter()
    res = SUITES[name](max_size=max_size, **kwargs)
    res.runtime = time.perf_counter() - start
    return res


def run_all(max_size: Optional[int] = None) -> List[SuiteResult]:
    return [run_suite(name, max_size) for name in sorted(SUITES)]
