"""Brute-force semistandard tableaux, used as an independent classical oracle.

Nothing here touches fermions or currents: tableaux are enumerated cell
by cell and weighted by monomials.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Sequence, Tuple

from .fock import Partition, conjugate, contains, partition, subpartitions
from .ring import Coef

__all__ = ["skew_cells", "ssyt", "schur_poly", "super_schur"]


def skew_cells(lam: Partition, mu: Partition) -> List[Tuple[int, int]]:
    """Cells of lam/mu in reading order (row by row, left to right)."""
    return [(r, c) for r, row in enumerate(lam, 1) for c in range(1, row + 1)
            if c > (mu[r - 1] if r <= len(mu) else 0)]


def ssyt(lam: Sequence[int], mu: Sequence[int], n: int) -> Iterator[Dict[Tuple[int, int], int]]:
    """Semistandard fillings of lam/mu with entries 1..n."""
    lam, mu = partition(lam), partition(mu)
    if not contains(lam, mu):
        return
    cells = skew_cells(lam, mu)
    fill: Dict[Tuple[int, int], int] = {}

    def rec(i: int):
        if i == len(cells):
            yield dict(fill)
            return
        r, c = cells[i]
        lo = 1
        if (r, c - 1) in fill:
            lo = max(lo, fill[(r, c - 1)])
        if (r - 1, c) in fill:
            lo = max(lo, fill[(r - 1, c)] + 1)
        for v in range(lo, n + 1):
            fill[(r, c)] = v
            yield from rec(i + 1)
            del fill[(r, c)]

    yield from rec(0)


def schur_poly(lam: Sequence[int], mu: Sequence[int], xs: Sequence[Coef]) -> Coef:
    """s_{lam/mu}(x_1, ..., x_n) as a sum over tableaux."""
    total = Coef(0)
    for t in ssyt(lam, mu, len(xs)):
        w = Coef(1)
        for v in t.values():
            w = w * xs[v - 1]
        total = total + w
    return total


def super_schur(lam: Sequence[int], xs: Sequence[Coef], ys: Sequence[Coef]) -> Coef:
    """Classical supersymmetric Schur function with p_k = sum x^k - sum (-y)^k.

    Computed as sum_mu s_mu(x) s_{lam'/mu'}(y).
    """
    lam = partition(lam)
    lc = conjugate(lam)
    total = Coef(0)
    for mu in subpartitions(lam):
        total = total + schur_poly(mu, (), xs) * schur_poly(lc, conjugate(mu), ys)
    return total
