"""Parameter sequences and shifted powers.

A ``ParamEnv`` holds two finitely supported integer-indexed sequences
alpha and beta.  Shifts, the reflection i -> 1-i, negation and the
alpha/beta swap are views that re-map indices; the stored data never
changes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Optional, Tuple

from .ring import Coef, gen, gens, residue_at

Seq = Callable[[int], Coef]

_ZERO = Coef(0)


class ParamEnv:
    """Two finitely supported sequences viewed through an index map.

    The view reads ``alpha(i) = sign * A[eps*i + off]`` where ``A`` is the
    stored alpha table (or the beta table when swapped).
    """

    __slots__ = ("_a", "_b", "_eps", "_off", "_neg", "_swap", "_window", "cache", "_key")

    def __init__(self, alpha: Mapping[int, object] | None = None,
                 beta: Mapping[int, object] | None = None,
                 window: Optional[Tuple[int, int]] = None):
        a = {int(i): Coef(v) for i, v in (alpha or {}).items()}
        b = {int(i): Coef(v) for i, v in (beta or {}).items()}
        self._a = {i: v for i, v in a.items() if not v.is_zero()}
        self._b = {i: v for i, v in b.items() if not v.is_zero()}
        idx = list(self._a) + list(self._b)
        if window is None:
            window = (min(idx), max(idx)) if idx else (1, 0)
        elif idx and (min(idx) < window[0] or max(idx) > window[1]):
            raise ValueError("nonzero parameter outside the declared window")
        self._window = (int(window[0]), int(window[1]))
        self._eps, self._off, self._neg, self._swap = 1, 0, False, False
        self.cache: Dict = {}
        self._key = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def symbolic(cls, lo: int, hi: int, alpha: bool = True, beta: bool = True,
                 alpha_name: str = "a", beta_name: str = "b",
                 extra: Iterable[str] = ("x", "y", "z")) -> "ParamEnv":
        """Independent generators ``a[i]``, ``b[i]`` for lo <= i <= hi.

        All generators, plus the ``extra`` names, share one polynomial
        context; ``symbol(name)`` hands out the extras.
        """
        an = ["%s[%d]" % (alpha_name, i) for i in range(lo, hi + 1)]
        bn = ["%s[%d]" % (beta_name, i) for i in range(lo, hi + 1)]
        g = gens(an + bn + list(extra))
        al = {i: g[n] for i, n in zip(range(lo, hi + 1), an)} if alpha else {}
        be = {i: g[n] for i, n in zip(range(lo, hi + 1), bn)} if beta else {}
        env = cls(al, be, (lo, hi))
        return env

    def symbol(self, name: str) -> Coef:
        """Generator ``name``, in the shared context when it belongs to it."""
        for table in (self._a, self._b):
            for v in table.values():
                ctx = v.num.context()
                if name in ctx.names():
                    return Coef._raw(ctx.gen(ctx.variable_to_index(name)), ctx.constant(1))
                break
        return gen(name)

    @classmethod
    def zero(cls) -> "ParamEnv":
        return cls({}, {})

    @classmethod
    def from_config(cls, doc: Mapping) -> "ParamEnv":
        """Build from ``{"alpha": {"-2": "a", "1": "3/7"}, "beta": {...}}``.

        Values are rational literals or generator names (any expression the
        Coef parser accepts).
        """
        if not isinstance(doc, Mapping):
            raise ValueError("parameter document must be an object")
        unknown = set(doc) - {"alpha", "beta", "window"}
        if unknown:
            raise ValueError("unknown parameter keys: %s" % ", ".join(sorted(unknown)))
        parsed = {}
        for fam in ("alpha", "beta"):
            table = doc.get(fam, {}) or {}
            if not isinstance(table, Mapping):
                raise ValueError("%s must map indices to values" % fam)
            out = {}
            for k, v in table.items():
                try:
                    idx = int(k)
                except (TypeError, ValueError):
                    raise ValueError("bad index %r in %s" % (k, fam)) from None
                out[idx] = _parse_value(v)
            parsed[fam] = out
        window = doc.get("window")
        if window is not None:
            window = (int(window[0]), int(window[1]))
        return cls(parsed["alpha"], parsed["beta"], window)

    @classmethod
    def from_json(cls, text: str) -> "ParamEnv":
        return cls.from_config(json.loads(text))

    def to_config(self) -> dict:
        lo, hi = self.window
        out = {"alpha": {}, "beta": {}}
        for i in range(lo, hi + 1):
            for fam, fn in (("alpha", self.alpha), ("beta", self.beta)):
                v = fn(i)
                if not v.is_zero():
                    out[fam][str(i)] = str(v)
        return out

    # -- views ------------------------------------------------------------
    def _view(self, eps, off, neg, swap) -> "ParamEnv":
        v = ParamEnv.__new__(ParamEnv)
        v._a, v._b, v._window = self._a, self._b, self._window
        v._eps, v._off, v._neg, v._swap = eps, off, neg, swap
        v.cache = {}
        v._key = None
        return v

    def shift(self, s: int) -> "ParamEnv":
        """sigma^s: the new sequence reads alpha_{i+s} at index i."""
        if s == 0:
            return self
        return self._view(self._eps, self._off + self._eps * s, self._neg, self._swap)

    def iota(self) -> "ParamEnv":
        """The reflection alpha_i -> alpha_{1-i} (both families)."""
        return self._view(-self._eps, self._off + self._eps, self._neg, self._swap)

    def negate(self) -> "ParamEnv":
        return self._view(self._eps, self._off, not self._neg, self._swap)

    def swap(self) -> "ParamEnv":
        """Exchange the roles of alpha and beta."""
        return self._view(self._eps, self._off, self._neg, not self._swap)

    def with_beta_zero(self) -> "ParamEnv":
        a, _ = self._materialize()
        return ParamEnv(a, {}, self.window)

    def with_alpha_zero(self) -> "ParamEnv":
        _, b = self._materialize()
        return ParamEnv({}, b, self.window)

    def _materialize(self):
        lo, hi = self.window
        a = {i: self.alpha(i) for i in range(lo, hi + 1)}
        b = {i: self.beta(i) for i in range(lo, hi + 1)}
        return a, b

    # -- access -----------------------------------------------------------
    def _read(self, table, i: int) -> Coef:
        v = table.get(self._eps * i + self._off)
        if v is None:
            return _ZERO
        return -v if self._neg else v

    def alpha(self, i: int) -> Coef:
        return self._read(self._b if self._swap else self._a, i)

    def beta(self, i: int) -> Coef:
        return self._read(self._a if self._swap else self._b, i)

    def seq(self, which: str) -> Seq:
        if which in ("alpha", "a"):
            return self.alpha
        if which in ("beta", "b"):
            return self.beta
        raise ValueError("which must be 'alpha' or 'beta'")

    @property
    def window(self) -> Tuple[int, int]:
        lo, hi = self._window
        if lo > hi:
            return (lo, hi)
        # index i of the view reads stored index eps*i + off
        ends = sorted(((lo - self._off) * self._eps, (hi - self._off) * self._eps))
        return (ends[0], ends[1])

    def support(self, which: str) -> Tuple[int, ...]:
        lo, hi = self.window
        fn = self.seq(which)
        return tuple(i for i in range(lo, hi + 1) if not fn(i).is_zero())

    def is_zero(self, which: str) -> bool:
        return not self.support(which)

    def key(self):
        """Hashable identity of the viewed sequences (for memo tables)."""
        if self._key is None:
            lo, hi = self.window
            self._key = (
                tuple(str(self.alpha(i)) for i in range(lo, hi + 1)),
                tuple(str(self.beta(i)) for i in range(lo, hi + 1)),
                lo,
            )
        return self._key

    def __repr__(self):
        return "ParamEnv(%s)" % json.dumps(self.to_config(), sort_keys=True)


def _parse_value(v) -> Coef:
    if isinstance(v, bool):
        raise ValueError("boolean is not a parameter value")
    if isinstance(v, int):
        return Coef(v)
    if isinstance(v, float):
        raise ValueError("floating point parameters are not allowed; use a rational literal")
    if isinstance(v, str):
        text = v.strip()
        try:
            return Coef(Fraction(text))
        except ValueError:
            return Coef(text)
    raise ValueError("cannot read parameter value %r" % (v,))


# -- shifted powers --------------------------------------------------------


def semi_power(seq: Seq, k: int, z, shift: int = 0) -> Coef:
    """(z; a)^k for the shifted sequence a_i = seq(i + shift)."""
    z = Coef(z)
    out = Coef(1)
    if k > 0:
        for j in range(1, k + 1):
            out = out * (1 - z * seq(shift + j))
    elif k < 0:
        den = Coef(1)
        for j in range(k + 1, 1):
            den = den * (1 - z * seq(shift + j))
        out = out / den
    return out


def bar_power(seq: Seq, k: int, z, shift: int = 0) -> Coef:
    """(z | b)^k for the shifted sequence b_i = seq(i + shift)."""
    z = Coef(z)
    out = Coef(1)
    if k > 0:
        for j in range(1, k + 1):
            out = out * (z - seq(shift + j))
    elif k < 0:
        den = Coef(1)
        for j in range(k + 1, 1):
            den = den * (z - seq(shift + j))
        out = out / den
    return out


def shifted_alpha(env: ParamEnv, k: int, shift: int = 0, z="z") -> Coef:
    return semi_power(env.alpha, k, _var(z), shift)


def shifted_beta(env: ParamEnv, k: int, shift: int = 0, z="z") -> Coef:
    return bar_power(env.beta, k, _var(z), shift)


def _var(z):
    return gen(z) if isinstance(z, str) else Coef(z)


def delta_m(env: ParamEnv, k: int, m: int, which: str = "beta") -> Coef:
    """sum_{0<j<=m} c_j^k - sum_{m<j<=0} c_j^k for c = alpha or beta."""
    fn = env.seq(which)
    out = Coef(0)
    if m > 0:
        for j in range(1, m + 1):
            out = out + fn(j) ** k
    else:
        for j in range(m + 1, 1):
            out = out - fn(j) ** k
    return out


def lambda_m_xy(env: ParamEnv, m: int, x, y, which: str = "beta") -> Coef:
    """Closed product for exp(Lambda_m) at p_k = x^k - (-y)^k."""
    fn = env.seq(which)
    x, y = Coef(x), Coef(y)
    num, den = Coef(1), Coef(1)
    if m > 0:
        for j in range(1, m + 1):
            num = num * (1 + fn(j) * y)
            den = den * (1 - fn(j) * x)
    else:
        for j in range(m + 1, 1):
            num = num * (1 - fn(j) * x)
            den = den * (1 + fn(j) * y)
    return num / den


def contour_integral(f: Coef, poles: Iterable, var: str = "z") -> Coef:
    """Sum of residues of ``f`` at the distinct values in ``poles``.

    Candidates that are not poles of ``f`` contribute nothing.
    """
    seen = []
    total = Coef(0)
    f = Coef(f)
    for p in poles:
        p = Coef(p)
        if any(p == q for q in seen):
            continue
        seen.append(p)
        try:
            total = total + residue_at(f, p, var)
        except ValueError:
            continue
    return total


def beta_poles(env: ParamEnv, indices: Iterable[int]) -> list:
    """beta_j for the listed indices, with 0 standing in for every zero entry."""
    return [env.beta(j) for j in indices]
