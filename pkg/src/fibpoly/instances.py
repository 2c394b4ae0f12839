"""Seeded random instances for the equivalence and law experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import FieldSpec, Poly, field_spec
from .factorize import is_irreducible
from .fibcore import SeqParams

# q -> (p, l)
FIELDS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 9: (3, 2)}


@dataclass(frozen=True)
class InstanceConfig:
    qs: tuple[int, ...] = (2, 3, 4, 5, 9)
    max_deg_ab: int = 3
    max_deg_P: int = 3
    max_e: int = 4


@dataclass(frozen=True)
class Instance:
    params: SeqParams
    P: Poly
    e: int

    @property
    def modulus(self) -> Poly:
        return self.P**self.e


def spec_for_q(q: int) -> FieldSpec:
    p, l = FIELDS[q]
    return field_spec(p, l)


def random_poly(rng: random.Random, spec: FieldSpec, max_deg: int, nonzero: bool = False) -> Poly:
    while True:
        d = rng.randint(0, max_deg)
        f = Poly(spec, [rng.randrange(spec.q) for _ in range(d + 1)])
        if f or not nonzero:
            return f


def random_monic(rng: random.Random, spec: FieldSpec, deg: int) -> Poly:
    return Poly(spec, [rng.randrange(spec.q) for _ in range(deg)] + [1])


def random_irreducible(rng: random.Random, spec: FieldSpec, deg: int) -> Poly:
    while True:
        f = random_monic(rng, spec, deg)
        if is_irreducible(f):
            return f


def random_params(rng: random.Random, spec: FieldSpec, max_deg: int) -> SeqParams:
    return SeqParams(random_poly(rng, spec, max_deg), random_poly(rng, spec, max_deg, nonzero=True))


def random_instance(rng: random.Random, cfg: InstanceConfig = InstanceConfig()) -> Instance:
    spec = spec_for_q(rng.choice(cfg.qs))
    params = random_params(rng, spec, cfg.max_deg_ab)
    while True:
        P = random_irreducible(rng, spec, rng.randint(1, cfg.max_deg_P))
        if params.coprime_to(P):
            return Instance(params, P, rng.randint(1, cfg.max_e))


def random_coprime_modulus(rng: random.Random, params: SeqParams, max_deg: int) -> Poly:
    """A random monic M of degree 1..max_deg with gcd(b, M) = 1."""
    spec = params.spec
    while True:
        M = random_monic(rng, spec, rng.randint(1, max_deg))
        if params.coprime_to(M):
            return M
