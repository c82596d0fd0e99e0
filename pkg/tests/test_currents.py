from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from artifact.currents import (
    PowersumSpec,
    apply_H,
    apply_J,
    coeff_A,
    deformed_shift,
    matrix_element_H,
    phi_psi,
    shift_vacuum,
)
from artifact.fock import FockVector, apply_psi
from artifact.ring import Coef
from artifact.shifted import ParamEnv

sp = pytest.importorskip("sympy")

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def sympy_A(alpha, beta, i, j, k):
    """Residue at 0 of z^(j-i-k) (1 - a_j b_j) prod (1 - a_m/z) / prod (1 - b_n z) dz / z."""
    z = sp.Symbol("z")
    f = z ** (j - i - k) * (1 - alpha[j] * beta[j])
    for m in range(i + 1, j):
        f *= 1 - alpha[m] / z
    for n in range(i, j + 1):
        f /= 1 - beta[n] * z
    return sp.residue(sp.together(f / z), z, 0)


@settings(max_examples=15)
@given(st.lists(rationals, min_size=6, max_size=6), st.lists(rationals, min_size=6, max_size=6),
       st.integers(0, 4), st.integers(1, 5), st.integers(1, 3))
def test_coeff_A_matches_sympy_residue(avals, bvals, i, gap, k):
    # off the diagonal only: the diagonal entry drops the (1 - a_j b_j) factor
    j = min(i + gap, 5)
    alpha = {n: sp.Rational(v.numerator, v.denominator) for n, v in enumerate(avals)}
    beta = {n: sp.Rational(v.numerator, v.denominator) for n, v in enumerate(bvals)}
    env = ParamEnv(dict(enumerate(avals)), dict(enumerate(bvals)), (0, 5))
    want = sympy_A(alpha, beta, i, j, k)
    assert coeff_A(env, i, j, k) == Coef(Fraction(str(want)))


def test_diagonal_and_lower_entries():
    env = ParamEnv.symbolic(-2, 3)
    assert coeff_A(env, 1, 1, 2) == env.beta(1) ** 2
    assert coeff_A(env, 1, 1, -3) == env.alpha(1) ** 3
    assert coeff_A(env, 2, 1, 1).is_zero()
    assert coeff_A(env, 1, 2, -1).is_zero()
    assert coeff_A(env, 0, 2, 0).is_zero() and coeff_A(env, 2, 2, 0) == Coef(1)


@pytest.fixture(scope="module")
def env():
    return ParamEnv.symbolic(-4, 5)


def test_classical_currents_move_one_particle():
    env = ParamEnv.zero()
    v = FockVector.basis((1,), 0)
    w = apply_J(env, 1, v)
    # J_1 at alpha = beta = 0 moves a particle down by one
    assert w == FockVector.basis((), 0)
    up = apply_J(env, -1, FockVector.basis((), 0))
    assert up == FockVector.basis((1,), 0)


def test_heisenberg_small(env):
    v = FockVector.basis((2, 1), 0)
    for k in (1, 2):
        c = apply_J(env, k, apply_J(env, -k, v)) - apply_J(env, -k, apply_J(env, k, v))
        assert c == v.scale(k)
    c = apply_J(env, 1, apply_J(env, 2, v)) - apply_J(env, 2, apply_J(env, 1, v))
    assert c.is_zero()


def test_series_H_specializes_to_closed_form():
    env = ParamEnv.symbolic(-2, 3, beta=False)
    x, y = env.symbol("x"), env.symbol("y")
    exact = apply_H(env, 1, PowersumSpec.specialized([(x, y)]), FockVector.basis((2, 1), 0))
    series = apply_H(env, 1, PowersumSpec.series(3), FockVector.basis((2, 1), 0))
    vals = {("p", k): x ** k - (-y) ** k for k in range(1, 4)}
    for ket, s in series.items():
        assert s.specialize(vals) == exact.coeff(*ket)


def test_specialized_H_refuses_nonterminating(env):
    x, y = env.symbol("x"), env.symbol("y")
    with pytest.raises(ValueError):
        apply_H(env, 1, PowersumSpec.specialized([(x, y)]), FockVector.basis((1,), 0))
    with pytest.raises(ValueError):
        PowersumSpec()


def test_matrix_element_identity_at_degree_zero(env):
    s = matrix_element_H(env, 1, PowersumSpec.series(2), (1,), (1,), 0)
    assert s.constant_term() == Coef(1)


def test_phi_inverse_undoes_phi(env):
    for i in (-1, 0, 2):
        for direction in (1, -1):
            total = {}
            for site, c in phi_psi(env, i, direction):
                for site2, c2 in phi_psi(env, site, -direction):
                    total[site2] = total.get(site2, Coef(0)) + c * c2
            total = {s: c for s, c in total.items() if not c.is_zero()}
            assert total == {i: Coef(1)}


def test_shift_round_trip(env):
    for lam in [(), (1,), (2, 1), (3, 1, 1)]:
        v = FockVector.basis(lam, 0)
        assert deformed_shift(env, deformed_shift(env, v, 1), -1) == v


def test_shift_intertwines_psi(env):
    v = FockVector.basis((1,), -1)
    lhs = deformed_shift(env, apply_psi(1, v), 1)
    rhs = FockVector()
    for site, c in phi_psi(env, 1, 1):
        rhs = rhs + apply_psi(site, deformed_shift(env, v, 1)).scale(c)
    assert lhs == rhs
    assert deformed_shift(env, FockVector.basis((), 0), 1) == shift_vacuum(env, 0)
