"""Command-line front end.

Exit codes: 0 on success (and when every selected suite passes), 1 when a
verification suite fails, 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .currents import PowersumSpec
from .fock import maya_occupied, parse_partition, particles
from .lattice import format_state, rtm_coeff, rtm_factors
from .ring import Coef, PSeries, parse_coef
from .schur import (
    dfs,
    dfs_dual,
    ek_shifted,
    giambelli,
    hk_shifted,
    jacobi_trudi,
    series_to_json,
)
from .shifted import ParamEnv
from .verify import SUITES, run_suite

THREADS_ENV = "ARTIFACT_THREADS"


class UsageError(Exception):
    pass


# -- helpers ----------------------------------------------------------------------


def _shape(text: Optional[str]):
    if text is None:
        return ()
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _env(args) -> ParamEnv:
    if getattr(args, "params", None) and getattr(args, "window", None):
        raise UsageError("--params and --window are exclusive")
    if getattr(args, "params", None):
        try:
            with open(args.params) as fh:
                return ParamEnv.from_config(json.load(fh))
        except OSError as exc:
            raise UsageError("cannot read %s: %s" % (args.params, exc)) from None
        except (ValueError, TypeError) as exc:
            raise UsageError("bad parameter file %s: %s" % (args.params, exc)) from None
    if getattr(args, "window", None):
        try:
            lo, hi = (int(v) for v in args.window.split(","))
        except ValueError:
            raise UsageError("--window expects LO,HI") from None
        return ParamEnv.symbolic(lo, hi)
    return ParamEnv.zero()


def _coef(text: str) -> Coef:
    try:
        return parse_coef(text)
    except ValueError as exc:
        raise UsageError("bad value %r: %s" % (text, exc)) from None


def _pairs(args):
    xs, ys = args.x or [], args.y or []
    if len(xs) != len(ys):
        raise UsageError("--x and --y must be given the same number of times")
    return [(_coef(x), _coef(y)) for x, y in zip(xs, ys)]


def math_text(s: str) -> str:
    """Readable rendering: a[i] -> α_i, b[i] -> β_i, ** -> ^, * -> ·."""
    s = re.sub(r"\ba\[(-?\d+)\]", r"α_\1", s)
    s = re.sub(r"\bb\[(-?\d+)\]", r"β_\1", s)
    s = s.replace("**", "^").replace("*", "·")
    return s


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def _job(args) -> dict:
    skip = {"func", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _render(value, fmt: str, job: dict) -> str:
    if fmt == "json":
        result = series_to_json(value) if isinstance(value, PSeries) else {"value": str(value)}
        return _dump({"job": job, "result": result})
    text = str(value)
    return math_text(text) if fmt == "math-text" else text


# -- subcommands ---------------------------------------------------------------------

_COMPUTE = ("dfs", "dfs-dual", "hk", "ek", "giambelli", "jacobi-trudi")


def cmd_compute(args) -> int:
    env = _env(args)
    if args.shift:
        env = env.shift(args.shift)
    pairs = _pairs(args)
    if pairs and args.trunc is not None:
        raise UsageError("give either --trunc or --x/--y pairs, not both")
    if pairs:
        spec = PowersumSpec.specialized(pairs)
    elif args.trunc is not None:
        if args.trunc < 0:
            raise UsageError("--trunc must be non-negative")
        spec = PowersumSpec.series(args.trunc)
    else:
        raise UsageError("a truncation (--trunc) is required unless --x/--y pairs are given")
    what = args.function
    if what in ("hk", "ek"):
        if args.k is None:
            raise UsageError("%s needs --k" % what)
        fn = hk_shifted if what == "hk" else ek_shifted
        value = fn(env, args.k, 0, spec)
    else:
        lam, mu = _shape(args.shape), _shape(args.skew)
        if what == "dfs":
            value = dfs(env, lam, mu, spec).value
        elif what == "dfs-dual":
            value = dfs_dual(env, lam, mu, spec).value
        elif what == "giambelli":
            if mu:
                raise UsageError("giambelli takes straight shapes only")
            value = giambelli(env, lam, spec).value
        else:
            value = jacobi_trudi(env, lam, mu, spec, dual=args.dual).value
    print(_render(value, args.format, _job(args)))
    return 0


def _sign(model: str) -> int:
    return 1 if model == "plus" else -1


def cmd_lattice(args) -> int:
    env = _env(args)
    x, y = _coef(args.x), _coef(args.y)
    top, bottom = _shape(args.top), _shape(args.bottom)
    sign = _sign(args.model)
    # The top boundary is the ket the row acts on, the bottom one is the bra.
    bra, ket = bottom, top
    factors = rtm_factors(env, bra, ket, args.charge, x, y, sign)
    product = rtm_coeff(env, bra, ket, args.charge, x, y, sign)
    if args.format == "json":
        doc = {"job": _job(args),
               "result": {"factors": [str(f) for f in factors or []], "product": str(product)}}
        print(_dump(doc))
    else:
        conv = math_text if args.format == "math-text" else str
        for f in factors or []:
            print(conv(str(f)))
        print(conv(str(product)))
    return 0


def cmd_state_dump(args) -> int:
    env = _env(args)
    top, bottom = _shape(args.top), _shape(args.bottom)
    if args.maya:
        ket = (top, args.charge)
        occ, floor = particles(ket)
        lo = min(occ + (floor,)) - 2 if occ else floor - 2
        hi = (max(occ) if occ else floor) + 2
        cells = "".join("●" if maya_occupied(ket, i) else "○" for i in range(lo, hi + 1))
        if args.format == "json":
            print(_dump({"job": _job(args), "result": {"from": lo, "to": hi, "occupied":
                                                        [i for i in range(lo, hi + 1) if maya_occupied(ket, i)]}}))
        else:
            print("%d..%d %s" % (lo, hi, cells))
        return 0
    x, y = _coef(args.x), _coef(args.y)
    sign = _sign(args.model)
    bra, ket = bottom, top
    rows = format_state(env, bra, ket, args.charge, x, y, sign)
    if args.format == "json":
        print(_dump({"job": _job(args), "result": rows}))
        return 0
    if not rows:
        print("no admissible state")
        return 0
    conv = math_text if args.format == "math-text" else str
    for r in rows:
        print("col %3d  top %d  bottom %d  left %d  right %d  %-3s %s" % (
            r["column"], r["top"], r["bottom"], r["high"], r["low"], r["vertex"] or "-", conv(r["weight"])))
    return 0


def _run_one(name: str, max_size):
    return run_suite(name, max_size)


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    threads = 1
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            threads = max(1, int(raw))
        except ValueError:
            raise UsageError("%s must be an integer" % THREADS_ENV) from None
    if threads > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_one, names, [args.max_size] * len(names)))
    else:
        results = [_run_one(n, args.max_size) for n in names]
    ok = all(r.ok for r in results)
    if args.format == "json":
        print(_dump({"job": _job(args), "ok": ok, "suites": [r.to_dict() for r in results]}))
    else:
        for r in results:
            print("%-16s %s  %d checks  %.1fs" % (r.suite, "PASS" if r.ok else "FAIL", len(r.checks), r.runtime))
            for c in sorted(r.failures, key=lambda c: c.name):
                print("    failed: %s %s" % (c.name, c.detail))
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------------------


def _add_params(p):
    p.add_argument("--params", help="JSON parameter file with alpha/beta tables")
    p.add_argument("--window", help="symbolic parameters a[i], b[i] for LO <= i <= HI, as LO,HI")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artifact", description="Double factorial Schur functions and lattice checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute a symmetric function")
    c.add_argument("function", choices=_COMPUTE)
    c.add_argument("--shape", help="partition, e.g. 3,2,1")
    c.add_argument("--skew", help="inner partition of a skew shape")
    c.add_argument("--k", type=int, help="degree for hk/ek")
    c.add_argument("--trunc", type=int, help="series truncation degree in p")
    c.add_argument("--x", action="append", help="x value of a specialized pair (repeatable)")
    c.add_argument("--y", action="append", help="y value of a specialized pair (repeatable)")
    c.add_argument("--shift", type=int, default=0, help="shift the parameter sequences")
    c.add_argument("--dual", action="store_true", help="jacobi-trudi: use the e-determinant")
    _add_params(c)
    c.add_argument("--format", choices=("json", "text", "math-text"), default="text")
    c.set_defaults(func=cmd_compute)

    for name, func, hlp in (("lattice", cmd_lattice, "row transfer matrix coefficient"),
                            ("state-dump", cmd_state_dump, "column-by-column state listing")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--top", required=True, help="top boundary partition (the ket)")
        p.add_argument("--bottom", default="", help="bottom boundary partition (the bra)")
        p.add_argument("--charge", type=int, default=0)
        p.add_argument("--model", choices=("plus", "minus"), default="plus")
        p.add_argument("--x", default="x")
        p.add_argument("--y", default="y")
        _add_params(p)
        p.add_argument("--format", choices=("json", "text", "math-text"), default="text")
        if name == "state-dump":
            p.add_argument("--maya", action="store_true", help="print the Maya diagram of --top instead")
        p.set_defaults(func=func)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    v.add_argument("--max-size", type=int, help="cap partition sizes for a quick run")
    v.add_argument("--seed", type=int, default=0, help="recorded in the report; the suites are exhaustive")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
