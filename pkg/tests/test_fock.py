import pytest
from hypothesis import given, strategies as st

from artifact.fock import (
    FockVector,
    apply_psi,
    apply_psi_star,
    conjugate,
    contains,
    frobenius,
    from_frobenius,
    maya_occupied,
    parse_partition,
    partition,
    partitions_in_box,
    partitions_of,
    partitions_upto,
    size,
    subpartitions,
)

partitions = st.lists(st.integers(1, 6), max_size=5).map(lambda xs: partition(sorted(xs, reverse=True)))


def test_partition_counts():
    assert [len(list(partitions_of(n))) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert len(partitions_in_box(3, 3)) == 20
    assert len(partitions_upto(4)) == 1 + 1 + 2 + 3 + 5


def test_parse_partition():
    assert parse_partition("3,2,1") == (3, 2, 1)
    assert parse_partition("") == ()
    assert parse_partition("2,0") == (2,)
    with pytest.raises(ValueError):
        parse_partition("1,x")
    with pytest.raises(ValueError):
        partition([1, 2])


@given(partitions)
def test_conjugate_is_an_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert size(conjugate(lam)) == size(lam)


@given(partitions)
def test_frobenius_round_trip(lam):
    a, b = frobenius(lam)
    assert from_frobenius(a, b) == lam
    assert sum(a) + sum(b) + len(a) == size(lam)


@given(partitions)
def test_subpartitions_are_contained(lam):
    subs = subpartitions(lam)
    assert () in subs and lam in subs
    assert all(contains(lam, mu) for mu in subs)
    assert len(set(subs)) == len(subs)


def test_maya_diagram():
    ket = ((3, 1), 0)
    occ = [i for i in range(-4, 6) if maya_occupied(ket, i)]
    assert occ == [-4, -3, -2, 0, 3]


@given(st.integers(-3, 3), st.integers(-3, 3), partitions)
def test_canonical_anticommutation(i, j, lam):
    v = FockVector.basis(lam, 0)
    anti = apply_psi(i, apply_psi_star(j, v)) + apply_psi_star(j, apply_psi(i, v))
    assert anti == (v if i == j else FockVector())
    assert (apply_psi(i, apply_psi(j, v)) + apply_psi(j, apply_psi(i, v))).is_zero()


def test_psi_moves_charge():
    v = FockVector.basis((), 0)
    assert apply_psi(1, v) == FockVector.basis((), 1)
    assert apply_psi_star(0, v) == FockVector.basis((), -1)
    assert apply_psi(0, v).is_zero()
