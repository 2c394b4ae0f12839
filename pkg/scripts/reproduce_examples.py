"""Print the rank/period ladders for the two worked examples and the gap family (e_1 = j > e_1' = 3),
next to the directly measured valuations and the brute-force values of alpha, pi."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from fibpoly import Poly, SeqParams, field_spec, oracle
from fibpoly.rankperiod import lift_period, lift_rank, measured_e, measured_e_prime, period_profile, rank_profile


@dataclass(frozen=True)
class Config:
    upto: int = 6
    oracle_max_e: int = 6
    gap_js: tuple[int, ...] = (4, 5, 6)


def cases(cfg: Config):
    F2, F3 = field_spec(2), field_spec(3)
    x, y = Poly.x(F2), Poly.x(F3)
    yield "Example 1", SeqParams(x**5 + x**3 + x, x**2 + 1), x**2 + x + 1
    yield "Example 2", SeqParams(x**12 + x**9 + x**8 + x**7 + x**6 + x**5 + x**4 + x, x**3 + x), x**4 + x**3 + 1
    for j in cfg.gap_js:
        yield f"gap family j={j}", SeqParams(y + 1, 2 * y**2 + y + 2 + (y + 2) ** j), y + 2


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--upto", type=int, default=Config.upto)
    ap.add_argument("--oracle-max-e", type=int, default=Config.oracle_max_e)
    args = ap.parse_args()
    cfg = Config(upto=args.upto, oracle_max_e=args.oracle_max_e)

    for name, params, P in cases(cfg):
        rp, pp = rank_profile(params, P), period_profile(params, P, cfg.upto)
        print(f"== {name}: a = {params.a}, b = {params.b}, P = {P}")
        print(f"   period case {pp.case.value}, k = {pp.k}, m = {pp.m}, m_i = {list(pp.process)}, j = {pp.j}")
        print(f"   {'i':>3} {'e_i':>6} {'measured':>9} {'e_i_prime':>10} {'measured':>9}")
        for i in range(1, cfg.upto + 1):
            print(
                f"   {i:>3} {rp.e(i):>6} {measured_e(params, P, i):>9}"
                f" {pp.e_prime(i):>10} {measured_e_prime(params, P, i):>9}"
            )
        print(f"   {'e':>3} {'alpha':>6} {'oracle':>7} {'pi':>6} {'oracle':>7}")
        for e in range(1, cfg.oracle_max_e + 1):
            o = oracle(params, P**e) if P.deg * e <= 12 else None
            oa, op = (o.alpha, o.pi) if o else ("-", "-")
            print(f"   {e:>3} {lift_rank(params, P, e):>6} {oa:>7} {lift_period(params, P, e):>6} {op:>7}")


if __name__ == "__main__":
    main()
