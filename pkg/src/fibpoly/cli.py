"""Command-line front end.

    fibpoly compute --p 2 --a "x^5+x^3+x" --b "x^2+1" --M "(x^2+x+1)^3"
    fibpoly profile --p 2 --a "x^5+x^3+x" --b "x^2+1" --P "x^2+x+1" --upto 5
    fibpoly verify --trials 50 --max-deg 3 --max-e 3 --seed 7

Exit status: 0 success, 1 domain error, 2 usage error, 3 internal mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .algebra import FieldSpec, Poly, field_spec
from .errors import FibPolyError, InternalMismatch, ScanBoundExceeded
from .factorize import Factorization, factor_poly
from .fibcore import SeqParams, oracle
from .instances import InstanceConfig, random_instance
from .polyexpr import parse_poly
from .quotient import mult_order
from .rankperiod import (
    PeriodCase,
    classify,
    lift_period,
    lift_rank,
    period_profile,
    rank_profile,
    report,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


def _num(v) -> str | None:
    # arbitrary-precision integers travel as decimal strings; infinity as "inf"
    if v is None:
        return None
    if v == float("inf"):
        return "inf"
    return str(int(v))


def _field(args) -> FieldSpec:
    if args.l < 1:
        raise FibPolyError("--l must be >= 1")
    g = ()
    if args.g:
        base = field_spec(args.p)
        g = parse_poly(args.g, base, var="t").c
    return field_spec(args.p, args.l, g)


def _field_json(spec: FieldSpec) -> dict:
    return {"p": _num(spec.p), "l": _num(spec.l), "modulus": Poly(field_spec(spec.p), spec.g).to_str("t")}


def _params(args, spec: FieldSpec) -> SeqParams:
    return SeqParams(parse_poly(args.a, spec), parse_poly(args.b, spec))


def _factorization_json(fac: Factorization) -> dict:
    return {"unit": str(fac.unit), "parts": [{"P": str(P), "e": _num(e)} for P, e in fac.parts]}


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _header(spec, a=None, b=None, M=None) -> list[str]:
    out = [f"field  {spec}"]
    for name, v in (("a", a), ("b", b), ("M", M)):
        if v is not None:
            out.append(f"{name:<6} {v}")
    return out


# -- subcommands ---------------------------------------------------------------


def cmd_compute(args) -> int:
    spec = _field(args)
    params = _params(args, spec)
    M = parse_poly(args.M, spec)
    rep = report(params, M)
    if args.cross_check:
        o = oracle(params, M)
        if (o.alpha, o.pi, o.beta) != (rep.alpha, rep.pi, rep.beta):
            raise InternalMismatch(
                f"structured (alpha, pi, beta) = {(rep.alpha, rep.pi, rep.beta)} "
                f"but oracle gives {(o.alpha, o.pi, o.beta)}"
            )
    payload = {
        "field": _field_json(spec),
        "a": str(params.a),
        "b": str(params.b),
        "M": str(M),
        "factorization": _factorization_json(rep.factorization),
        "per_prime": [
            {"P": str(r.P), "e": _num(r.e), "alpha": _num(r.alpha), "pi": _num(r.pi)} for r in rep.per_prime
        ],
        "alpha": _num(rep.alpha),
        "pi": _num(rep.pi),
        "beta": _num(rep.beta),
        "ord_minus_b": _num(rep.ord_minus_b),
        "lcm_factor": _num(rep.lcm_factor),
    }
    lines = _header(spec, params.a, params.b, M)
    lines.append(f"factorization  {rep.factorization}")
    for r in rep.per_prime:
        lines.append(f"  P = {r.P}, e = {r.e}: alpha = {r.alpha}, pi = {r.pi}")
    lines += [
        f"alpha = {rep.alpha}",
        f"pi = {rep.pi}",
        f"beta = {rep.beta}",
        f"ord_M(-b) = {rep.ord_minus_b}",
        f"lcm_factor = {rep.lcm_factor}",
    ]
    if args.cross_check:
        lines.append("oracle agrees")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_oracle(args) -> int:
    spec = _field(args)
    params = _params(args, spec)
    M = parse_poly(args.M, spec)
    o = oracle(params, M)
    payload = {
        "field": _field_json(spec),
        "a": str(params.a),
        "b": str(params.b),
        "M": str(M),
        "alpha": _num(o.alpha),
        "pi": _num(o.pi),
        "beta": _num(o.beta),
        "s": str(o.s.rep),
    }
    lines = _header(spec, params.a, params.b, M)
    lines += [f"alpha = {o.alpha}", f"pi = {o.pi}", f"beta = {o.beta}", f"s = {o.s.rep}"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_profile(args) -> int:
    spec = _field(args)
    params = _params(args, spec)
    P = parse_poly(args.P, spec)
    upto = args.upto
    case = classify(params, P)
    rp = rank_profile(params, P)
    pp = period_profile(params, P, max(upto, 2))
    e = rp.ladder(upto) if rp.e1 is not None else None
    ep = pp.ladder(upto)
    process = list(pp.process) if pp.process else None
    payload = {
        "field": _field_json(spec),
        "a": str(params.a),
        "b": str(params.b),
        "P": str(P.monic()),
        "prime_case": case.tag.value,
        "alpha_P": _num(rp.alpha_P),
        "pi_P": _num(pp.pi_P),
        "rank_rule": rp.rule.value,
        "special": rp.special.value if rp.special else None,
        "e": [_num(v) for v in e] if e is not None else None,
        "e_prime": [_num(v) for v in ep],
        "period_case": pp.case.value,
        "k": _num(pp.k),
        "m": _num(pp.m),
        "m_i": [_num(v) for v in process] if process is not None else None,
        "j": _num(pp.j),
    }
    lines = _header(spec, params.a, params.b)
    lines += [
        f"P      {P.monic()}",
        f"prime case    {case.tag.value} (d = {case.d})",
        f"alpha(P) = {rp.alpha_P}, pi(P) = {pp.pi_P}",
        f"rank rule     {rp.rule.value}" + (f", special {rp.special.value}" if rp.special else ""),
        "e_i   " + (", ".join(map(str, e)) if e is not None else "absent"),
        "e_i'  " + ", ".join(map(str, ep)),
        f"period case   {pp.case.value}",
    ]
    if pp.case in (PeriodCase.D_ODD_REPEATED, PeriodCase.E_CHAR2_REPEATED):
        lines.append(f"k = {pp.k}, m = {pp.m}")
    if process is not None:
        ms = ", ".join(f"m_{i} = {v}" for i, v in enumerate(process, start=2))
        lines.append(f"{ms}; j = {pp.j if pp.j is not None else f'not reached by i = {pp.horizon}'}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    cfg = InstanceConfig(max_deg_ab=args.max_deg, max_deg_P=args.max_deg, max_e=args.max_e)
    ok = 0
    failures = []
    for _ in range(args.trials):
        inst = random_instance(rng, cfg)
        o = oracle(inst.params, inst.modulus)
        got = (lift_rank(inst.params, inst.P, inst.e), lift_period(inst.params, inst.P, inst.e))
        if got == (o.alpha, o.pi):
            ok += 1
        else:
            failures.append(
                {
                    "field": _field_json(inst.params.spec),
                    "a": str(inst.params.a),
                    "b": str(inst.params.b),
                    "P": str(inst.P),
                    "e": _num(inst.e),
                    "structured": [_num(v) for v in got],
                    "oracle": [_num(o.alpha), _num(o.pi)],
                }
            )
    payload = {"trials": _num(args.trials), "agree": _num(ok), "failures": failures}
    lines = [f"{ok}/{args.trials} structured == oracle"]
    for f in failures:
        lines.append(f"  MISMATCH {f}")
    _emit(args, payload, lines)
    return EXIT_OK if not failures else EXIT_MISMATCH


def cmd_factor(args) -> int:
    spec = _field(args)
    M = parse_poly(args.M, spec)
    fac = factor_poly(M)
    payload = {"field": _field_json(spec), "M": str(M), "factorization": _factorization_json(fac)}
    _emit(args, payload, _header(spec, M=M) + [f"factorization  {fac}"])
    return EXIT_OK


def cmd_order(args) -> int:
    spec = _field(args)
    g = parse_poly(args.g_elem, spec)
    M = parse_poly(args.M, spec)
    n = mult_order(g, M)
    payload = {"field": _field_json(spec), "g": str(g), "M": str(M), "order": _num(n)}
    _emit(args, payload, _header(spec, M=M) + [f"ord_M({g}) = {n}"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fibpoly", description=__doc__.split("\n\n")[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    sub = parser.add_subparsers(dest="command", required=True)

    def field_args(p):
        p.add_argument("--p", type=int, required=True, help="field characteristic")
        p.add_argument("--l", type=int, default=1, help="extension degree, q = p^l")
        p.add_argument("--g", help="monic irreducible of degree l in t defining F_q (default: lex-smallest)")

    def seq_args(p):
        field_args(p)
        p.add_argument("--a", required=True, help="polynomial a")
        p.add_argument("--b", required=True, help="polynomial b (nonzero)")

    p = sub.add_parser("compute", help="alpha, pi, beta mod M via the structured path")
    seq_args(p)
    p.add_argument("--M", required=True)
    p.add_argument("--cross-check", action="store_true", help="also run the oracle; exit 3 on disagreement")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("oracle", help="alpha, pi, beta mod M by brute-force scan")
    seq_args(p)
    p.add_argument("--M", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("profile", help="e_i / e_i' ladders and case data at an irreducible P")
    seq_args(p)
    p.add_argument("--P", required=True)
    p.add_argument("--upto", type=int, default=6)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", help="randomized structured-vs-oracle equivalence")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--max-deg", type=int, default=3)
    p.add_argument("--max-e", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("factor", help="factor M over F_q")
    field_args(p)
    p.add_argument("--M", required=True)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("order", help="multiplicative order of g modulo M")
    field_args(p)
    p.add_argument("--elem", dest="g_elem", required=True, help="the element g (a polynomial in x)")
    p.add_argument("--M", required=True)
    p.set_defaults(func=cmd_order)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("upto", "trials", "max_deg", "max_e"):
        if getattr(args, name, 1) < 1:
            parser.error(f"--{name.replace('_', '-')} must be >= 1")
    try:
        return args.func(args)
    except (InternalMismatch, ScanBoundExceeded) as exc:
        print(f"internal mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


run = main

if __name__ == "__main__":
    sys.exit(main())
