"""Command line: qmzv VERB [flags].

Exit status 0 on success, 1 when a verification fails, 2 on usage errors.
Every run echoes its configuration first (as '#' lines in text mode, as a
"config" object in JSON mode) so it can be reproduced.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

import mpmath

from . import __version__
from .brackets import bibracket_series, format_word, parse_biindex, parse_index
from .identities import catalogue, identity_residual
from .iterint import goncharov_coproduct, shuffle_regularize, stuffle_regularize
from .mes import g_shuffle, g_star_M, mes_fourier, mes_lattice, zk_limit
from .relations import RelationSet, SeriesFamily, find_relations, parse_family_items
from .suites import SUITES, run_suite
from .words import (
    LinComb,
    box_product,
    derivative,
    eval_hom,
    partition_involution,
    second_product,
    shuffle,
    shuffle_bracket,
    stuffle,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- parsing ------------------------------------------------------------------


def parse_word(text: str) -> tuple:
    """'2,3' -> (2, 3); '2,3|1,0' -> ((2, 1), (3, 0))."""
    text = text.strip()
    return parse_biindex(text) if "|" in text else parse_index(text)


def parse_term(text: str) -> LinComb:
    """'word', 'c*word' or 'd:word' (the derivative), with c an integer or fraction."""
    coeff, _, body = text.rpartition("*")
    c = Fraction(coeff) if coeff else Fraction(1)
    if body.startswith("d:"):
        return derivative(parse_word(body[2:])) * c
    return LinComb.word(parse_word(body), c)


def parse_combination(terms: list[str]) -> LinComb:
    acc = LinComb()
    for t in terms:
        acc = acc + parse_term(t)
    return acc


_TAU = re.compile(r"^\s*(?:([+-]?\d*\.?\d+(?:e[+-]?\d+)?)(?=[+-]|$))?\s*(?:([+-]?\d*\.?\d*(?:e[+-]?\d+)?)\s*i)?\s*$")


def parse_tau(text: str) -> mpmath.mpc:
    """'a+bi' with decimal a, b taken exactly as written ('i', '0.5+1.2i', '2i')."""
    m = _TAU.match(text.replace(" ", ""))
    if not m or m.group(2) is None:
        raise UsageError(f"cannot read tau {text!r}; write it as a+bi")
    re_part = m.group(1) or "0"
    im_part = m.group(2)
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    tau = mpmath.mpc(mpmath.mpf(re_part), mpmath.mpf(im_part))
    if tau.imag <= 0:
        raise UsageError("tau must lie in the upper half plane")
    return tau


def default_order() -> int:
    env = os.environ.get("QMZV_DEFAULT_ORDER")
    if env is None:
        return 50
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"QMZV_DEFAULT_ORDER must be an integer, got {env!r}") from None


# -- output ------------------------------------------------------------------


def _num(x) -> str:
    return mpmath.nstr(x, 20) if isinstance(x, (mpmath.mpf, mpmath.mpc)) else repr(x)


def _complex_json(x) -> dict:
    x = mpmath.mpc(x)
    return {"re": mpmath.nstr(x.real, 30), "im": mpmath.nstr(x.imag, 30)}


def _poly_json(poly: dict) -> list[dict]:
    return [{"T_power": e, "terms": lc.to_json()} for e, lc in sorted(poly.items())]


def _poly_text(poly: dict) -> str:
    parts = [f"({lc})*T^{e}" if e else f"({lc})" for e, lc in sorted(poly.items(), reverse=True)]
    return " + ".join(parts) if parts else "0"


class Result:
    """What a verb produced: text lines, a JSON payload and an exit status."""

    def __init__(self, text, payload, status: int = EXIT_OK):
        self.text = text if isinstance(text, str) else "\n".join(text)
        self.payload = payload
        self.status = status


# -- verbs ---------------------------------------------------------------------


def cmd_bracket(args) -> Result:
    w = parse_index(args.index)
    f = bibracket_series(w, args.order, args.method)
    return Result(f.format(), {"word": format_word(w), **f.to_json()})


def cmd_bibracket(args) -> Result:
    w = parse_biindex(args.index)
    f = bibracket_series(w, args.order, args.method)
    return Result(f.format(), {"word": format_word(w), **f.to_json()})


_PRODUCTS = {"box": box_product, "second": second_product, "stuffle": stuffle, "shuffle": shuffle}


def cmd_multiply(args) -> Result:
    u, v = parse_word(args.left), parse_word(args.right)
    prod = _PRODUCTS[args.product](u, v)
    lines, payload, status = [repr(prod)], {"product": args.product, "result": prod.to_json()}, EXIT_OK
    if args.product in ("box", "second"):
        ok = eval_hom(prod, args.order) == eval_hom(u, args.order) * eval_hom(v, args.order)
        lines.append(f"series check to q^{args.order}: {'PASS' if ok else 'FAIL'}")
        payload["verified"] = ok
        status = EXIT_OK if ok else EXIT_FAILED
    return Result(lines, payload, status)


def cmd_derive(args) -> Result:
    w = parse_word(args.index)
    dw = derivative(w)
    ok = eval_hom(dw, args.order) == bibracket_series(w, args.order).d()
    return Result([repr(dw), f"series check to q^{args.order}: {'PASS' if ok else 'FAIL'}"],
                  {"result": dw.to_json(), "verified": ok}, EXIT_OK if ok else EXIT_FAILED)


def cmd_partition(args) -> Result:
    w = parse_word(args.index)
    pw = partition_involution(w)
    ok = eval_hom(pw, args.order) == eval_hom(w, args.order)
    return Result([repr(pw), f"series check to q^{args.order}: {'PASS' if ok else 'FAIL'}"],
                  {"result": pw.to_json(), "verified": ok}, EXIT_OK if ok else EXIT_FAILED)


def cmd_shuffle_bracket(args) -> Result:
    sb = shuffle_bracket(parse_index(args.index))
    return Result(repr(sb), {"result": sb.to_json()})


def cmd_coproduct(args) -> Result:
    t = goncharov_coproduct(parse_index(args.index))
    return Result(repr(t), {"result": t.to_json()})


def cmd_regularize(args) -> Result:
    w = parse_index(args.index)
    poly = (shuffle_regularize if args.kind == "shuffle" else stuffle_regularize)(w)
    return Result(_poly_text(poly), {"kind": args.kind, "result": _poly_json(poly)})


def cmd_mes(args) -> Result:
    s = parse_index(args.index)
    tau = parse_tau(args.tau)
    payload: dict = {"index": format_word(s), "method": args.method, "tau": _complex_json(tau)}
    lines = []
    if args.method == "lattice":
        lv = mes_lattice(s, complex(tau), cutoff=args.cutoff)
        value = lv.value
        payload["tail_estimate"] = lv.tail_estimate
        payload["cutoffs"] = list(lv.cutoffs)
        lines.append(f"tail estimate {lv.tail_estimate:.3e} from cutoffs {list(lv.cutoffs)}")
    elif args.method == "star":
        value = g_star_M(s, args.M, tau, tol=max(args.tol, 10.0 ** -args.precision))
        payload["M"] = args.M
    else:
        exp = mes_fourier(s) if args.method == "fourier" else g_shuffle(s)
        value = exp.realize(tau, args.precision)
        payload["expansion"] = exp.to_json()
        lines.append(exp.format())
    payload["value"] = _complex_json(value)
    # lattice sums are double precision; do not print digits they lack
    shown = mpmath.nstr(mpmath.mpc(value), 15) if args.method == "lattice" else _num(mpmath.mpc(value))
    return Result([f"G_{format_word(s)} at tau = {mpmath.nstr(tau, 15)}: {shown}"] + lines, payload)


def cmd_zk(args) -> Result:
    f = parse_combination(args.terms)
    r = zk_limit(f, args.k, tol=args.tol)
    payload = {"k": args.k, "terms": f.to_json(), "value": r.value if not r.diverges else None,
               "error": r.error if not r.diverges else None, "diverges": r.diverges}
    text = "diverges" if r.diverges else f"{r.value:.15g} (error estimate {r.error:.1e})"
    return Result(f"Z_{args.k}({f}) = {text}", payload)


def cmd_find_relations(args) -> Result:
    items = parse_family_items(args.items)
    fam = SeriesFamily.from_items(items, args.order)
    rel = find_relations(fam)
    lines = [rel.format() or "no relations", f"verified to order {rel.verified_to_order}, stable {rel.stable}"]
    lines += [f"cleared: {RelationSet.cleared(v)}" for v in rel.basis]
    return Result(lines, rel.to_json(), EXIT_OK if rel.stable else EXIT_FAILED)


def cmd_check(args) -> Result:
    names = {"delta12": "delta-brackets"}
    target = names.get(args.suite, args.suite)
    found = [i for i in catalogue() if i.name == target]
    if not found:
        raise UsageError(f"unknown check {args.suite!r}; try delta12 or an identity name: "
                         + ", ".join(i.name for i in catalogue()))
    ident = found[0]
    ok = identity_residual(ident, args.order).is_zero()
    line = f"{ident.text}: {'verified' if ok else 'FAILED'} to q^{args.order}"
    return Result(line, {"identity": ident.name, "order": args.order, "verified": ok},
                  EXIT_OK if ok else EXIT_FAILED)


def cmd_suite(args) -> Result:
    opts = {"precision": args.precision}
    if args.order_given:
        opts["order"] = args.order
    checks = run_suite(args.name, **opts)
    lines = []
    for c in checks:
        tol = "exact" if c.tolerance == 0 else f"tol {c.tolerance:g}"
        timing = "" if args.no_timings else f" [{c.seconds:.2f}s]"
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name} ({tol}){timing}: {c.detail}")
    ok = all(c.passed for c in checks)
    lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} passed")
    payload = {"suite": args.name, "passed": ok,
               "checks": [{k: v for k, v in c.to_json().items() if not (args.no_timings and k == "seconds")}
                          for c in checks]}
    return Result(lines, payload, EXIT_OK if ok else EXIT_FAILED)


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=None, help="truncation order N (default 50 or $QMZV_DEFAULT_ORDER)")
    common.add_argument("--tol", type=float, default=1e-8, help="numeric tolerance (default 1e-8)")
    common.add_argument("--precision", type=int, default=64, help="decimal digits for numerics (default 64)")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = argparse.ArgumentParser(prog="qmzv", description="Brackets, q-analogues of MZVs and multiple Eisenstein series.")
    p.add_argument("--version", action="version", version=f"qmzv {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = verb("bracket", cmd_bracket, "q-expansion of a bracket [s1,...,sl]")
    sp.add_argument("--index", required=True, help="s1,...,sl")
    sp.add_argument("--method", choices=["eulerian", "divisor"], default="eulerian")
    sp = verb("bibracket", cmd_bibracket, "q-expansion of a bi-bracket")
    sp.add_argument("--index", required=True, help="s1,...,sl|r1,...,rl")
    sp.add_argument("--method", choices=["eulerian", "divisor"], default="eulerian")
    sp = verb("multiply", cmd_multiply, "product of two words")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--product", choices=list(_PRODUCTS), default="box")
    sp = verb("derive", cmd_derive, "the derivation q d/dq on a bi-bracket")
    sp.add_argument("--index", required=True)
    sp = verb("partition", cmd_partition, "the partition relation P(w)")
    sp.add_argument("--index", required=True)
    sp = verb("shuffle-bracket", cmd_shuffle_bracket, "the shuffle bracket as bi-brackets (length <= 4)")
    sp.add_argument("--index", required=True)
    sp = verb("coproduct", cmd_coproduct, "Goncharov coproduct of I(s)")
    sp.add_argument("--index", required=True)
    sp = verb("regularize", cmd_regularize, "regularized z-word as a polynomial in T")
    sp.add_argument("--index", required=True)
    sp.add_argument("--kind", choices=["shuffle", "stuffle"], default="shuffle")
    sp = verb("mes", cmd_mes, "multiple Eisenstein series G_s(tau)")
    sp.add_argument("--index", required=True)
    sp.add_argument("--method", choices=["lattice", "fourier", "shuffle", "star"], default="fourier")
    sp.add_argument("--tau", default="i", help="a+bi (default i)")
    sp.add_argument("--M", type=int, default=80, help="cutoff M for --method star")
    sp.add_argument("--cutoff", type=int, default=1600, help="largest box for --method lattice")
    sp = verb("zk", cmd_zk, "the limit Z_k = lim (1-q)^k f(q)")
    sp.add_argument("terms", nargs="+", help="terms like 4, 1/2*2|1 or d:1; put -- before terms starting with -")
    sp.add_argument("--k", type=int, required=True)
    sp = verb("find-relations", cmd_find_relations, "Q-linear relations among q-series")
    sp.add_argument("items", nargs="+", help="[label=]word, [label=]d:word or [label=]delta")
    sp = verb("check", cmd_check, "verify a catalogued identity")
    sp.add_argument("--suite", required=True, help="delta12 or an identity name")
    sp = verb("suite", cmd_suite, "run a bundle of checks")
    sp.add_argument("name", choices=list(SUITES))
    sp.add_argument("--no-timings", action="store_true", help="omit wall-clock times for byte-identical output")
    return p


def _config(args) -> dict:
    skip = {"fn", "out", "order_given"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        args.order_given = args.order is not None
        if args.order is None:
            args.order = default_order()
        if args.order < 0:
            raise UsageError("--order must be non-negative")
        result = args.fn(args)
    except (UsageError, ValueError, KeyError) as e:
        print(f"qmzv {args.verb}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    config = {"version": __version__, **_config(args)}
    if args.format == "json":
        text = json.dumps({"config": config, "result": result.payload}, indent=2, sort_keys=True)
    else:
        header = "# " + " ".join(f"{k}={v}" for k, v in config.items())
        text = header + "\n" + result.text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return result.status


def main() -> None:
    sys.exit(run())
