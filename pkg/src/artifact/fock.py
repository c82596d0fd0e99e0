"""Fermionic Fock space on charged partitions.

A basis ket |lam>_m is keyed by the pair (lam, m) with lam a tuple of
positive parts.  Site i is occupied iff i = m + lam_k - k + 1 for some
k >= 1 (lam_k = 0 past the length), so every site <= m - len(lam) is
occupied and every site > m + lam_1 is empty.

Sign rule: the wedge lists occupied sites from the top down.  Creating or
deleting a particle at site i costs (-1)^(number of occupied sites > i).
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .ring import Coef

Partition = Tuple[int, ...]
Ket = Tuple[Partition, int]


# -- partitions --------------------------------------------------------------


def partition(parts: Iterable[int]) -> Partition:
    """Normalize to a weakly decreasing tuple without zeros."""
    p = tuple(int(x) for x in parts)
    if any(x < 0 for x in p):
        raise ValueError("negative part in %r" % (p,))
    p = tuple(x for x in p if x)
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError("parts must be weakly decreasing: %r" % (p,))
    return p


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "0", "()", "empty"):
        return ()
    try:
        return partition(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ValueError("bad partition %r: %s" % (text, exc)) from None


def size(lam: Partition) -> int:
    return sum(lam)


def part(lam: Partition, i: int) -> int:
    """lam_i with 1-based i, zero past the length."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1))


def frobenius(lam: Partition) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Arm and leg lengths (a_1..a_r | b_1..b_r) along the diagonal."""
    lc = conjugate(lam)
    r = sum(1 for i, x in enumerate(lam, 1) if x >= i)
    a = tuple(lam[i] - i - 1 for i in range(r))
    b = tuple(lc[i] - i - 1 for i in range(r))
    return a, b


def from_frobenius(a: Sequence[int], b: Sequence[int]) -> Partition:
    r = len(a)
    if len(b) != r:
        raise ValueError("arm and leg lists differ in length")
    rows = [a[i] + i + 1 for i in range(r)]
    lc = [b[i] + i + 1 for i in range(r)]
    out = list(rows)
    # rows below the diagonal block come from the legs
    depth = max(lc) if lc else 0
    for row in range(r + 1, depth + 1):
        out.append(sum(1 for c in lc if c >= row))
    return partition(out)


def cells(lam: Partition) -> List[Tuple[int, int]]:
    """Cells (row, col), 1-based, in reading order."""
    return [(i, j) for i, x in enumerate(lam, 1) for j in range(1, x + 1)]


def contains(lam: Partition, mu: Partition) -> bool:
    """mu is contained in lam."""
    return len(mu) <= len(lam) and all(m <= l for m, l in zip(mu, lam))


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def partitions_upto(n: int) -> List[Partition]:
    return [p for k in range(n + 1) for p in partitions_of(k)]


def partitions_in_box(rows: int, cols: int) -> List[Partition]:
    out = []

    def rec(prefix, cap, left):
        out.append(partition(prefix))
        if left == 0:
            return
        for x in range(1, cap + 1):
            rec(prefix + (x,), x, left - 1)

    rec((), cols, rows)
    return sorted(set(out), key=lambda p: (sum(p), p))


def subpartitions(lam: Partition) -> List[Partition]:
    """All mu contained in lam."""
    out = []

    def rec(i, prefix):
        if i == len(lam):
            out.append(partition(prefix))
            return
        cap = lam[i] if i == 0 else min(lam[i], prefix[-1])
        for x in range(cap + 1):
            if x == 0:
                out.append(partition(prefix))
                continue
            rec(i + 1, prefix + (x,))

    rec(0, ())
    return sorted(set(out), key=lambda p: (sum(p), p))


def z_factor(nu: Partition) -> int:
    """z_nu = prod i^{m_i} m_i!"""
    from math import factorial

    out = 1
    for k in set(nu):
        m = nu.count(k)
        out *= k ** m * factorial(m)
    return out


def contents(lam: Partition) -> List[int]:
    return [j - i for i, j in cells(lam)]


# -- occupation --------------------------------------------------------------


def maya_occupied(ket: Ket, i: int) -> bool:
    lam, m = ket
    L = len(lam)
    if i <= m - L:
        return True
    return any(m + lam[k - 1] - k + 1 == i for k in range(1, L + 1))


def particles(ket: Ket) -> Tuple[Tuple[int, ...], int]:
    """(occupied sites above the floor, floor) with everything <= floor occupied."""
    lam, m = ket
    L = len(lam)
    return tuple(m + lam[k - 1] - k + 1 for k in range(1, L + 1)), m - L


def from_particles(occ: Iterable[int], floor: int) -> Ket:
    """Inverse of ``particles``: every site <= floor is occupied as well."""
    occ = sorted(set(occ), reverse=True)
    # absorb sites adjacent to the floor
    while occ and occ[-1] == floor + 1:
        occ.pop()
        floor += 1
    m = floor + len(occ)
    lam = tuple(p - m + k - 1 for k, p in enumerate(occ, 1))
    return partition(lam), m


def occupied_set(ket: Ket, lo: int, hi: int) -> List[int]:
    return [i for i in range(lo, hi + 1) if maya_occupied(ket, i)]


def energy(ket: Ket) -> int:
    return sum(ket[0])


def s_set(lam: Partition) -> List[int]:
    """Occupied positive sites at charge 0: {lam_i - i + 1 | lam_i >= i}."""
    return [x - i + 1 for i, x in enumerate(lam, 1) if x >= i]


def t_set(lam: Partition) -> List[int]:
    """Empty nonpositive sites at charge 0: {i - lam'_i | lam'_i >= i}."""
    lc = conjugate(lam)
    return [i - x for i, x in enumerate(lc, 1) if x >= i]


# -- vectors -----------------------------------------------------------------


class FockVector:
    """Finite combination of charged kets with Coef coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Ket, Coef] | None = None):
        self.terms: Dict[Ket, Coef] = {}
        if terms:
            for k, c in terms.items():
                c = c if isinstance(c, Coef) else Coef(c)
                if not c.is_zero():
                    self.terms[(partition(k[0]), int(k[1]))] = c

    @classmethod
    def basis(cls, lam: Sequence[int], m: int = 0, c=1) -> "FockVector":
        return cls({(partition(lam), m): Coef(c)})

    @classmethod
    def _raw(cls, terms: Dict[Ket, Coef]) -> "FockVector":
        v = cls.__new__(cls)
        v.terms = terms
        return v

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        return FockVector._raw(out)

    def __neg__(self):
        return FockVector._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FockVector":
        c = Coef(c)
        if c.is_zero():
            return FockVector._raw({})
        return FockVector._raw({k: v * c for k, v in self.terms.items()})

    __mul__ = scale
    __rmul__ = scale

    def coeff(self, lam: Sequence[int], m: int = 0) -> Coef:
        return self.terms.get((partition(lam), m), Coef(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: (kv[0][1], sum(kv[0][0]), kv[0][0])))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)|%s>_%d" % (c, ",".join(map(str, k[0])) or "0", k[1]) for k, c in self)


def _sign_above(ket: Ket, i: int) -> int:
    occ, floor = particles(ket)
    n = sum(1 for p in occ if p > i) + max(0, floor - i)
    return -1 if n % 2 else 1


def psi_on_ket(i: int, ket: Ket) -> Tuple[int, Ket] | None:
    if maya_occupied(ket, i):
        return None
    occ, floor = particles(ket)
    sign = _sign_above(ket, i)
    if i <= floor:
        raise AssertionError("unoccupied site below the floor")
    return sign, from_particles(occ + (i,), floor)


def psi_star_on_ket(i: int, ket: Ket) -> Tuple[int, Ket] | None:
    if not maya_occupied(ket, i):
        return None
    occ, floor = particles(ket)
    sign = _sign_above(ket, i)
    if i <= floor:
        # open the sea down to i so that i becomes an explicit particle
        occ = occ + tuple(range(floor, i - 1, -1))
        floor = i - 1
    return sign, from_particles([p for p in occ if p != i], floor)


def apply_psi(i: int, v: FockVector) -> FockVector:
    out: Dict[Ket, Coef] = {}
    for ket, c in v.terms.items():
        r = psi_on_ket(i, ket)
        if r is not None:
            s, k = r
            out[k] = out.get(k, Coef(0)) + (c if s > 0 else -c)
    return FockVector({k: c for k, c in out.items()})


def apply_psi_star(i: int, v: FockVector) -> FockVector:
    out: Dict[Ket, Coef] = {}
    for ket, c in v.terms.items():
        r = psi_star_on_ket(i, ket)
        if r is not None:
            s, k = r
            out[k] = out.get(k, Coef(0)) + (c if s > 0 else -c)
    return FockVector({k: c for k, c in out.items()})


def move_particle(ket: Ket, src: int, dest: int) -> Tuple[int, Ket] | None:
    """psi_dest psi*_src on a basis ket; None when it vanishes."""
    r = psi_star_on_ket(src, ket)
    if r is None:
        return None
    s1, k1 = r
    r = psi_on_ket(dest, k1)
    if r is None:
        return None
    s2, k2 = r
    return s1 * s2, k2


def pairing(bra: Ket, v: FockVector) -> Coef:
    return v.terms.get((partition(bra[0]), int(bra[1])), Coef(0))


def classical_shift(v: FockVector, steps: int = 1) -> FockVector:
    return FockVector._raw({(k[0], k[1] + steps): c for k, c in v.terms.items()})


# -- operator words ----------------------------------------------------------

Word = List[Tuple[str, int]]


def apply_word(word: Word, v: FockVector) -> FockVector:
    """Apply a written word (rightmost letter acts first)."""
    for kind, i in reversed(word):
        v = apply_psi(i, v) if kind == "psi" else apply_psi_star(i, v)
    return v


def _vacuum_word(c: int) -> Word:
    """Word taking |0>_0 to |0>_c with sign +1."""
    if c >= 0:
        return [("psi", j) for j in range(c, 0, -1)]
    return [("psi*", j) for j in range(c + 1, 1)]


def ket_from_vacuum_word(lam: Sequence[int], m: int, ell: int | None = None):
    """Creation word for |lam>_m over |0>_{m-ell}.

    Returns (sign, word, base_charge, full_word) where ``word`` creates the
    top ``ell`` particles on the shifted vacuum of charge ``base_charge``
    and ``full_word`` also builds that vacuum from |0>_0.
    """
    lam = partition(lam)
    if ell is None:
        ell = len(lam)
    if ell < len(lam):
        raise ValueError("ell must be at least the length of the partition")
    word = [("psi", m + part(lam, k) - k + 1) for k in range(1, ell + 1)]
    base = m - ell
    full = word + _vacuum_word(base)
    got = apply_word(full, FockVector.basis((), 0))
    sign = _match_sign(got, (lam, m))
    return sign, word, base, full


def hole_word(lam: Sequence[int], m: int = 0):
    """Annihilation word over |0>_{m+lam_1}: (sign, word, base_charge)."""
    lam = partition(lam)
    top = m + (lam[0] if lam else 0)
    lo = m - len(lam)
    holes = [i for i in range(lo + 1, top + 1) if not maya_occupied((lam, m), i)]
    word = [("psi*", i) for i in sorted(holes)]
    got = apply_word(word, FockVector.basis((), top))
    return _match_sign(got, (lam, m)), word, top


def frobenius_word(lam: Sequence[int]):
    """Word psi*_{-b_1}..psi*_{-b_r} psi_{a_r+1}..psi_{a_1+1} over |0>_0."""
    lam = partition(lam)
    a, b = frobenius(lam)
    word = [("psi*", -x) for x in b] + [("psi", x + 1) for x in reversed(a)]
    got = apply_word(word, FockVector.basis((), 0))
    return _match_sign(got, (lam, 0)), word


def _match_sign(v: FockVector, ket: Ket) -> int:
    if len(v.terms) != 1 or ket not in v.terms:
        raise AssertionError("word does not produce a multiple of the target ket")
    c = v.terms[ket]
    if c == 1:
        return 1
    if c == -1:
        return -1
    raise AssertionError("word produced coefficient %s" % c)


def format_word(sign: int, word: Word, base: int) -> str:
    body = "".join(("psi*_%d" if k == "psi*" else "psi_%d") % i for k, i in word)
    return "%s%s|0>_%d" % ("-" if sign < 0 else "", body, base)
