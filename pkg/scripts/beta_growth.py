"""Track beta(P^e) = pi(P^e) / alpha(P^e) as e grows, for random (a, b, P).

For each sampled instance this prints the ratio beta(P^e) / beta(P) for
e = 1..max_e, together with the bound p^(k+1) where k is the least integer
with e_1 / e_1' <= p^k.  Instances with Delta = 0 or a^2/b constant are skipped.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from fibpoly.instances import InstanceConfig, random_instance
from fibpoly.rankperiod import lift_period, lift_rank, period_profile, rank_profile


@dataclass(frozen=True)
class Config:
    samples: int = 20
    max_e: int = 40
    seed: int = 1
    qs: tuple[int, ...] = (2, 3, 4, 5, 9)


def least_k(p: int, e1: int, e1p: int) -> int:
    k = 1
    while e1 > p**k * e1p:
        k += 1
    return k


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--max-e", type=int, default=Config.max_e)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    cfg = Config(samples=args.samples, max_e=args.max_e, seed=args.seed)

    rng = random.Random(cfg.seed)
    shown = 0
    while shown < cfg.samples:
        inst = random_instance(rng, InstanceConfig(qs=cfg.qs, max_e=1))
        params, P = inst.params, inst.P
        if params.delta_is_zero or params.ratio_in_Fq:
            continue
        p = params.spec.p
        rp, pp = rank_profile(params, P), period_profile(params, P)
        k = least_k(p, rp.e1, pp.e1p)
        beta_P = lift_period(params, P, 1) // lift_rank(params, P, 1)
        ratios = [lift_period(params, P, e) // lift_rank(params, P, e) // beta_P for e in range(1, cfg.max_e + 1)]
        print(
            f"q={params.spec.q} a={params.a} b={params.b} P={P}: "
            f"case {pp.case.value}, k={k}, bound p^(k+1)={p ** (k + 1)}, ratios {sorted(set(ratios))}"
        )
        shown += 1


if __name__ == "__main__":
    main()
