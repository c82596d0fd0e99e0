"""Exact coefficient arithmetic.

``Coef`` is a reduced fraction of two multivariate polynomials over the
rationals, backed by python-flint's ``fmpq_mpoly``.  Generators are plain
strings; indexed generators are written ``a[3]`` and sort by (name, index).

``PSeries`` is a truncated power series in one or more families of
graded variables (``p_k`` has weight ``k``), truncated family by family.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from flint import fmpq, fmpq_mpoly, fmpq_mpoly_ctx

__all__ = [
    "Coef",
    "PSeries",
    "RatFn",
    "gen",
    "gens",
    "gen_key",
    "parse_coef",
    "residue_at",
    "ratfn_expand",
    "expand_product",
    "truncate_degree",
    "coef_arith",
    "series_combine",
    "series_exp",
]

_INDEXED = re.compile(r"^(.*)\[(-?\d+)\]$")


def gen_key(name: str):
    """Sort key for generator names: (stem, index) with unindexed first."""
    m = _INDEXED.match(name)
    if m:
        return (m.group(1), 1, int(m.group(2)))
    return (name, 0, 0)


def _ctx(names: Iterable[str]) -> fmpq_mpoly_ctx:
    return fmpq_mpoly_ctx.get(tuple(sorted(set(names), key=gen_key)), "lex")


_EMPTY = _ctx(())


def _unify(p: fmpq_mpoly, q: fmpq_mpoly):
    cp, cq = p.context(), q.context()
    if cp is cq:
        return p, q
    if cp.nvars() == 0:
        return cq.constant(p.leading_coefficient() if not p.is_zero() else 0), q
    if cq.nvars() == 0:
        return p, cp.constant(q.leading_coefficient() if not q.is_zero() else 0)
    ctx = _ctx(cp.names() + cq.names())
    if ctx is not cp:
        p = p.project_to_context(ctx)
    if ctx is not cq:
        q = q.project_to_context(ctx)
    return p, q


def _to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    return fmpq(x)


class Coef:
    """Immutable exact scalar: num/den with gcd 1 and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, value=0, den=None):
        if isinstance(value, Coef):
            num, d = value.num, value.den
        elif isinstance(value, fmpq_mpoly):
            num, d = value, value.context().constant(1)
        elif isinstance(value, str):
            c = parse_coef(value)
            num, d = c.num, c.den
        else:
            num = _EMPTY.constant(_to_fmpq(value))
            d = _EMPTY.constant(1)
        if den is not None:
            other = Coef(den)
            if other.num.is_zero():
                raise ZeroDivisionError("Coef division by zero")
            num, d = num * other.den, d * other.num
            num, d = _unify(num, d)
            num, d = _reduce(num, d)
        self.num = num
        self.den = d

    @classmethod
    def _raw(cls, num: fmpq_mpoly, den: fmpq_mpoly) -> "Coef":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Coef):
            if isinstance(other, (int, Fraction, fmpq)):
                o = _to_fmpq(other)
                if self.den.is_one():
                    return Coef._raw(self.num + o, self.den)
                return Coef._raw(self.num + self.den * o, self.den)
            other = Coef(other)
        if self.den.is_one() and other.den.is_one():
            a, b = _unify(self.num, other.num)
            s = a + b
            return Coef._raw(s, s.context().constant(1))
        return _frac_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Coef._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, Coef):
            other = Coef(other)
        return self + (-other)

    def __rsub__(self, other):
        return Coef(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Coef):
            if isinstance(other, (int, Fraction, fmpq)):
                o = _to_fmpq(other)
                if o == 0:
                    return Coef._raw(self.num * 0, self.den.context().constant(1))
                return Coef._raw(self.num * o, self.den)
            other = Coef(other)
        if self.den.is_one() and other.den.is_one():
            a, b = _unify(self.num, other.num)
            p = a * b
            return Coef._raw(p, p.context().constant(1))
        return _frac_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Coef):
            other = Coef(other)
        if other.num.is_zero():
            raise ZeroDivisionError("Coef division by zero")
        return _frac_mul(self, Coef._raw(other.den, other.num), renorm=True)

    def __rtruediv__(self, other):
        return Coef(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return Coef(1) / (self ** (-n))
        return Coef._raw(self.num ** n, self.den ** n)

    def inv(self) -> "Coef":
        return Coef(1) / self

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Coef):
            try:
                other = Coef(other)
            except Exception:
                return NotImplemented
        a, b = _unify(self.num, other.num)
        if a != b:
            return False
        c, d = _unify(self.den, other.den)
        return c == d

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash(str(self))

    # -- display ----------------------------------------------------------
    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def __repr__(self):
        return "Coef(%r)" % str(self)

    # -- structure --------------------------------------------------------
    def context(self):
        return _unify(self.num, self.den)[0].context()

    def gens_used(self) -> Tuple[str, ...]:
        names = set()
        for p in (self.num, self.den):
            ctx = p.context()
            degs = p.degrees() if ctx.nvars() else ()
            for nm, d in zip(ctx.names(), degs):
                if d:
                    names.add(nm)
        return tuple(sorted(names, key=gen_key))

    def subs(self, values: Mapping[str, object]) -> "Coef":
        """Substitute generators by Coef values (numeric or symbolic)."""
        vals = {k: Coef(v) for k, v in values.items()}
        num = _compose(self.num, vals)
        den = _compose(self.den, vals)
        return num / den

    def derivative(self, var: str) -> "Coef":
        num, den = _unify(self.num, self.den)
        ctx = num.context()
        if var not in ctx.names():
            return Coef(0)
        dn, dd = num.derivative(var), den.derivative(var)
        return Coef._from_pair(dn * den - num * dd, den * den)

    def degree_in(self, var: str) -> Tuple[int, int]:
        out = []
        for p in (self.num, self.den):
            names = p.context().names()
            out.append(p.degrees()[names.index(var)] if var in names else 0)
        return tuple(out)

    @classmethod
    def _from_pair(cls, num: fmpq_mpoly, den: fmpq_mpoly) -> "Coef":
        num, den = _unify(num, den)
        if den.is_zero():
            raise ZeroDivisionError("Coef division by zero")
        return cls._raw(*_reduce(num, den))


def _reduce(num: fmpq_mpoly, den: fmpq_mpoly):
    if num.is_zero():
        return num, den.context().constant(1)
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def _frac_add(a: Coef, b: Coef) -> Coef:
    an, bn = _unify(a.num, b.num)
    ad, bd = _unify(a.den, b.den)
    an, ad = _unify(an, ad)
    bn, bd = _unify(bn, bd)
    an, bn = _unify(an, bn)
    ad, bd = _unify(ad, bd)
    if ad == bd:
        return Coef._raw(*_reduce(an + bn, ad))
    g = ad.gcd(bd)
    if g.is_one():
        return Coef._raw(*_reduce(an * bd + bn * ad, ad * bd))
    ad_g, bd_g = ad / g, bd / g
    return Coef._raw(*_reduce(an * bd_g + bn * ad_g, ad_g * bd))


def _frac_mul(a: Coef, b: Coef, renorm: bool = False) -> Coef:
    an, bn = _unify(a.num, b.num)
    ad, bd = _unify(a.den, b.den)
    an, ad = _unify(an, ad)
    bn, bd = _unify(bn, bd)
    an, bn = _unify(an, bn)
    ad, bd = _unify(ad, bd)
    # cross-cancel so products stay reduced
    g1 = an.gcd(bd) if not bd.is_constant() else None
    if g1 is not None and not g1.is_one():
        an, bd = an / g1, bd / g1
    g2 = bn.gcd(ad) if not ad.is_constant() else None
    if g2 is not None and not g2.is_one():
        bn, ad = bn / g2, ad / g2
    num, den = an * bn, ad * bd
    if den.is_zero():
        raise ZeroDivisionError("Coef division by zero")
    if num.is_zero():
        return Coef._raw(num, den.context().constant(1))
    lc = den.leading_coefficient()
    if lc != 1:
        num, den = num / lc, den / lc
    return Coef._raw(num, den)


def _compose(p: fmpq_mpoly, vals: Mapping[str, Coef]) -> Coef:
    ctx = p.context()
    if ctx.nvars() == 0:
        return Coef._raw(p, _EMPTY.constant(1))
    # collect the target context from the substituted values
    names = [n for n in ctx.names() if n not in vals]
    for v in vals.values():
        names.extend(v.num.context().names())
        names.extend(v.den.context().names())
    target = _ctx(names)
    common_den = None
    polys = []
    for n in ctx.names():
        if n in vals:
            v = vals[n]
            if not v.den.is_one():
                common_den = True
            polys.append(v)
        else:
            polys.append(Coef._raw(target.gen(target.variable_to_index(n)), target.constant(1)))
    if common_den is None:
        args = []
        for c in polys:
            q = c.num
            if q.context() is not target:
                q = q.project_to_context(target) if q.context().nvars() else target.constant(
                    q.leading_coefficient() if not q.is_zero() else 0)
            args.append(q)
        r = p.compose(*args, ctx=target) if _compose_takes_ctx() else p.compose(*args)
        return Coef._raw(r, target.constant(1))
    # rational substitution: evaluate by Horner over terms
    total = Coef(0)
    for exps, c in p.terms():
        t = Coef(c)
        for e, v in zip(exps, polys):
            if e:
                t = t * (v ** e)
        total = total + t
    return total


_COMPOSE_CTX = None


def _compose_takes_ctx() -> bool:
    global _COMPOSE_CTX
    if _COMPOSE_CTX is None:
        a = _ctx(("u",))
        b = _ctx(("v",))
        try:
            a.gen(0).compose(b.gen(0), ctx=b)
            _COMPOSE_CTX = True
        except TypeError:
            _COMPOSE_CTX = False
    return _COMPOSE_CTX


def gen(name: str) -> Coef:
    """The generator ``name`` as a Coef."""
    ctx = _ctx((name,))
    return Coef._raw(ctx.gen(0), ctx.constant(1))


def gens(names: Sequence[str]) -> Dict[str, Coef]:
    """Generators sharing one context, so their products never re-map."""
    ctx = _ctx(names)
    one = ctx.constant(1)
    return {n: Coef._raw(ctx.gen(ctx.variable_to_index(n)), one) for n in names}


def lift(c: Coef, like: Coef) -> Coef:
    """``c`` re-expressed in the context of ``like`` when that is larger."""
    a, _ = _unify(c.num, like.num)
    b, _ = _unify(c.den, like.num)
    return Coef._raw(a, b)


def coef_arith(a, b, op: str) -> Coef:
    a, b = Coef(a), Coef(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


# -- parsing canonical strings -------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*(?:\[-?\d+\])?)|(?P<op>[-+*/^()]))"
)


def _tokens(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse coefficient %r at %d" % (text, pos))
        pos = m.end()
        for kind in ("num", "name", "op"):
            if m.group(kind) is not None:
                out.append((kind, m.group(kind)))
    return out


def parse_coef(text: str) -> Coef:
    """Parse a canonical Coef string (or any +,-,*,/,^ expression)."""
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        val = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = power()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = power()
            val = val * rhs if op == "*" else val / rhs
        return val

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, tok = take()
            if kind != "num":
                raise ValueError("exponent must be a literal in %r" % text)
            base = base ** int(tok)
        return base

    def atom():
        kind, tok = peek()
        if kind is None:
            raise ValueError("unexpected end of %r" % text)
        take()
        if kind == "num":
            return Coef(Fraction(tok))
        if kind == "name":
            return gen(tok)
        if tok == "(":
            v = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses in %r" % text)
            return v
        if tok == "-":
            return -power()
        raise ValueError("unexpected %r in %r" % (tok, text))

    val = expr()
    if pos != len(toks):
        raise ValueError("trailing input in %r" % text)
    return val


# -- one distinguished variable ------------------------------------------


class RatFn:
    """A Coef viewed as a rational function of one variable ``var``."""

    __slots__ = ("value", "var")

    def __init__(self, value, var: str = "z"):
        self.value = Coef(value)
        self.var = var

    def __eq__(self, other):
        if isinstance(other, RatFn):
            return self.var == other.var and self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash((self.var, str(self.value)))

    def __mul__(self, other):
        o = other.value if isinstance(other, RatFn) else other
        return RatFn(self.value * o, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = other.value if isinstance(other, RatFn) else other
        return RatFn(self.value / o, self.var)

    def __add__(self, other):
        o = other.value if isinstance(other, RatFn) else other
        return RatFn(self.value + o, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        o = other.value if isinstance(other, RatFn) else other
        return RatFn(self.value - o, self.var)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return "RatFn(%s, %s)" % (self.value, self.var)

    def residue(self, pole) -> Coef:
        return residue_at(self.value, pole, self.var)


def _eval_at(p: fmpq_mpoly, var: str, value: Coef) -> Coef:
    return _compose(p, {var: value})


def residue_at(r, pole, var: str = "z") -> Coef:
    """Residue of the rational function ``r`` in ``var`` at ``var = pole``.

    Higher-order poles use the derivative formula on the cofactor.
    """
    if isinstance(r, RatFn):
        var = r.var
        r = r.value
    r = Coef(r)
    pole = Coef(pole)
    if not pole.is_poly():
        raise ValueError("pole must be a polynomial in the parameters")
    num, den = _unify(r.num, r.den)
    if var not in den.context().names() or not _eval_at(den, var, pole).is_zero():
        raise ValueError("%s is not a root of the denominator" % pole)
    ctx_names = set(den.context().names()) | set(pole.num.context().names())
    ctx = _ctx(ctx_names)
    den = den.project_to_context(ctx) if den.context() is not ctx else den
    num = num.project_to_context(ctx) if num.context() is not ctx else num
    c = pole.num
    c = c.project_to_context(ctx) if c.context().nvars() else ctx.constant(c.leading_coefficient() if not c.is_zero() else 0)
    lin = ctx.gen(ctx.variable_to_index(var)) - c
    order = 0
    while True:
        q = den / lin
        den = q
        order += 1
        if not _eval_at(den, var, pole).is_zero():
            break
    f = Coef._from_pair(num, den)
    for _ in range(order - 1):
        f = f.derivative(var)
    val = f.subs({var: pole})
    return val / math.factorial(order - 1)


def truncate_degree(p: fmpq_mpoly, vars: Sequence[str], D: int) -> fmpq_mpoly:
    """Drop terms of total degree > D in ``vars``."""
    ctx = p.context()
    names = ctx.names()
    idx = [names.index(v) for v in vars if v in names]
    if not idx:
        return p
    degs = p.degrees()
    if sum(degs[i] for i in idx) <= D:
        return p
    keep = {e: c for e, c in p.to_dict().items() if sum(e[i] for i in idx) <= D}
    return ctx.from_dict(keep)


def ratfn_expand(r, vars: Sequence[str], D: int) -> Coef:
    """Taylor expansion of ``r`` to total degree ``D`` in ``vars``.

    The result is a Coef whose numerator is polynomial in ``vars`` of
    degree at most ``D``; its denominator is free of ``vars``.
    """
    if isinstance(r, RatFn):
        r = r.value
    r = Coef(r)
    num, den = _unify(r.num, r.den)
    ctx = _ctx(set(num.context().names()) | set(vars))
    if num.context() is not ctx:
        num = num.project_to_context(ctx) if num.context().nvars() else ctx.constant(
            num.leading_coefficient() if not num.is_zero() else 0)
        den = den.project_to_context(ctx) if den.context().nvars() else ctx.constant(den.leading_coefficient())
    zero = {v: Coef(0) for v in vars}
    c0 = _compose(den, zero)
    if c0.is_zero():
        raise ValueError("denominator vanishes at the expansion point")
    c0p = c0.num.project_to_context(ctx) if c0.num.context().nvars() else ctx.constant(c0.num.leading_coefficient())
    rest = c0p - den  # den = c0 - rest
    num = truncate_degree(num, vars, D)
    if rest.is_zero():
        return Coef._from_pair(num, c0p)
    # 1/den = sum_n rest^n / c0^(n+1); accumulate with a common c0^(D+1)
    acc = num * c0p ** D
    term = num
    for n in range(1, D + 1):
        term = truncate_degree(term * rest, vars, D)
        if term.is_zero():
            break
        acc = acc + term * c0p ** (D - n)
    acc = truncate_degree(acc, vars, D)
    return Coef._from_pair(acc, c0p ** (D + 1))


def _graded_parts(p: fmpq_mpoly, vars: Sequence[str], D: int) -> Dict[int, fmpq_mpoly]:
    ctx = p.context()
    names = ctx.names()
    idx = [names.index(v) for v in vars if v in names]
    groups: Dict[int, dict] = {}
    for e, c in p.to_dict().items():
        d = sum(e[i] for i in idx)
        if d <= D:
            groups.setdefault(d, {})[e] = c
    return {d: ctx.from_dict(t) for d, t in groups.items()}


def expand_product(factors: Iterable, vars: Sequence[str], D: int) -> Coef:
    """Taylor expansion of a product, factor by factor, to total degree D.

    Each partial product is kept split by total degree in ``vars`` so no
    term above degree D is ever formed.
    """
    parts = None
    den = None
    for f in factors:
        e = ratfn_expand(f, vars, D)
        num, eden = _unify(e.num, e.den)
        fp = _graded_parts(num, vars, D)
        if parts is None:
            parts, den = fp, eden
            continue
        nxt: Dict[int, fmpq_mpoly] = {}
        for d1, p1 in parts.items():
            for d2, p2 in fp.items():
                if d1 + d2 > D:
                    continue
                p1u, p2u = _unify(p1, p2)
                t = p1u * p2u
                if d1 + d2 in nxt:
                    s1, s2 = _unify(nxt[d1 + d2], t)
                    nxt[d1 + d2] = s1 + s2
                else:
                    nxt[d1 + d2] = t
        parts = nxt
        d1u, d2u = _unify(den, eden)
        den = d1u * d2u
    if parts is None:
        return Coef(1)
    total = None
    for p in parts.values():
        if total is None:
            total = p
        else:
            a1, a2 = _unify(total, p)
            total = a1 + a2
    if total is None:
        return Coef(0)
    n, d = _unify(total, den)
    return Coef._from_pair(n, d)


# -- truncated graded power series ---------------------------------------

Mono = Tuple[Tuple[str, int], ...]


def _weights(m: Mono) -> Dict[str, int]:
    w: Dict[str, int] = {}
    for fam, k in m:
        w[fam] = w.get(fam, 0) + k
    return w


def _fits(m: Mono, D: int) -> bool:
    w: Dict[str, int] = {}
    for fam, k in m:
        s = w.get(fam, 0) + k
        if s > D:
            return False
        w[fam] = s
    return True


class PSeries:
    """Truncated series in graded variables ``(family, k)`` of weight ``k``.

    Each family's weighted degree is bounded by ``trunc`` separately, so a
    two-family kernel like exp(sum p_k q_k / k) keeps every term with
    p-weight and q-weight at most ``trunc``.
    """

    __slots__ = ("trunc", "terms")

    def __init__(self, trunc: int, terms: Mapping[Mono, Coef] | None = None):
        if trunc is None or trunc < 0:
            raise ValueError("truncation order must be a nonnegative integer")
        self.trunc = int(trunc)
        clean: Dict[Mono, Coef] = {}
        if terms:
            for m, c in terms.items():
                m = tuple(sorted(m))
                if not _fits(m, self.trunc):
                    continue
                c = c if isinstance(c, Coef) else Coef(c)
                if c.is_zero():
                    continue
                if m in clean:
                    c = clean[m] + c
                    if c.is_zero():
                        del clean[m]
                        continue
                clean[m] = c
        self.terms = clean

    # constructors
    @classmethod
    def const(cls, trunc: int, c=1) -> "PSeries":
        return cls(trunc, {(): Coef(c)})

    @classmethod
    def var(cls, trunc: int, k: int, family: str = "p", c=1) -> "PSeries":
        return cls(trunc, {((family, k),): Coef(c)})

    @classmethod
    def from_partitions(cls, trunc: int, items: Mapping[Tuple[int, ...], Coef], family: str = "p"):
        return cls(trunc, {tuple((family, k) for k in nu): c for nu, c in items.items()})

    def _check(self, other: "PSeries"):
        if not isinstance(other, PSeries):
            raise TypeError("expected PSeries")
        if other.trunc != self.trunc:
            raise ValueError("mismatched truncation orders %d and %d" % (self.trunc, other.trunc))

    def __add__(self, other):
        if not isinstance(other, PSeries):
            return self + PSeries.const(self.trunc, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return PSeries._raw(self.trunc, out)

    __radd__ = __add__

    def __neg__(self):
        return PSeries._raw(self.trunc, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, PSeries):
            other = PSeries.const(self.trunc, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PSeries):
            c = Coef(other)
            if c.is_zero():
                return PSeries._raw(self.trunc, {})
            return PSeries._raw(self.trunc, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        D = self.trunc
        out: Dict[Mono, Coef] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                if not _fits(m, D):
                    continue
                v = c1 * c2
                if m in out:
                    out[m] = out[m] + v
                else:
                    out[m] = v
        return PSeries._raw(D, {m: c for m, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = Coef(c)
        return PSeries._raw(self.trunc, {m: v / c for m, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, PSeries):
            return NotImplemented
        if self.trunc != other.trunc or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    def __hash__(self):
        return hash((self.trunc, frozenset((m, str(c)) for m, c in self.terms.items())))

    @classmethod
    def _raw(cls, trunc: int, terms: Dict[Mono, Coef]) -> "PSeries":
        obj = cls.__new__(cls)
        obj.trunc = trunc
        obj.terms = terms
        return obj

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Coef:
        return self.terms.get((), Coef(0))

    def coefficient(self, mono) -> Coef:
        return self.terms.get(tuple(sorted(mono)), Coef(0))

    def families(self) -> Tuple[str, ...]:
        return tuple(sorted({f for m in self.terms for f, _ in m}))

    def truncate(self, D: int) -> "PSeries":
        return PSeries(D, self.terms)

    def map_coeffs(self, fn) -> "PSeries":
        return PSeries(self.trunc, {m: fn(c) for m, c in self.terms.items()})

    def substitute(self, images: Mapping[Tuple[str, int], "PSeries"]) -> "PSeries":
        """Replace each variable by a series (variables not listed are kept)."""
        D = self.trunc
        total = PSeries._raw(D, {})
        cache: Dict[Tuple[str, int], PSeries] = {}
        for m, c in self.terms.items():
            t = PSeries.const(D, c)
            for v in m:
                img = images.get(v)
                if img is None:
                    img = cache.setdefault(v, PSeries(D, {(v,): Coef(1)}))
                t = t * img
                if t.is_zero():
                    break
            total = total + t
        return total

    def specialize(self, values: Mapping[Tuple[str, int], Coef]) -> Coef:
        """Evaluate every variable to a Coef (finite sum, no truncation)."""
        total = Coef(0)
        for m, c in self.terms.items():
            t = c
            for v in m:
                t = t * values[v]
            total = total + t
        return total

    def items(self) -> Iterator[Tuple[Mono, Coef]]:
        return iter(sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.items():
            mono = "*".join("%s%d" % (f, k) for f, k in m)
            if not mono:
                parts.append("(%s)" % c)
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append("(%s)*%s" % (c, mono))
        return " + ".join(parts) + " + O(deg %d)" % (self.trunc + 1)

    __repr__ = __str__


def _mono_key(m: Mono):
    w = sum(k for _, k in m)
    return (w, tuple(sorted(m, key=lambda v: (v[0], -v[1]))))


def series_combine(f: PSeries, g: PSeries, op: str) -> PSeries:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise ValueError("unknown op %r" % op)


def series_exp(f: PSeries) -> PSeries:
    """exp(f) for f with zero constant term, truncated at f.trunc."""
    if not f.constant_term().is_zero():
        raise ValueError("series_exp needs a zero constant term")
    out = PSeries.const(f.trunc)
    power = PSeries.const(f.trunc)
    n = 0
    while True:
        n += 1
        power = power * f / n
        if power.is_zero():
            return out
        out = out + power
