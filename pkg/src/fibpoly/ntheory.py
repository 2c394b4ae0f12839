"""Integer helpers on top of sympy: factoring, divisors, lcm, order descent."""

from __future__ import annotations

import math
from functools import lru_cache, reduce

from sympy import factorint, isprime


def is_prime(n: int) -> bool:
    return bool(isprime(n))


@lru_cache(maxsize=4096)
def _factor_items(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((int(r), int(k)) for r, k in factorint(n).items()))


def int_factor(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, ascending. ``int_factor(1) == []``."""
    if n < 1:
        raise ValueError(f"int_factor needs a positive integer, got {n}")
    return [r for r, k in _factor_items(n) for _ in range(k)]


def factor_counts(n: int) -> dict[int, int]:
    return dict(_factor_items(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for r, k in _factor_items(n):
        divs = [d * r**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def lcm(*values: int) -> int:
    return reduce(math.lcm, values, 1)


def order_descent(bound: int, is_identity) -> int:
    """Least divisor ``n`` of ``bound`` with ``is_identity(n)``.

    ``is_identity`` must hold exactly on the multiples of some divisor of
    ``bound`` (true for orders, ranks and periods), and must hold at
    ``bound`` itself.
    """
    n = bound
    for r, _ in _factor_items(bound):
        while n % r == 0 and is_identity(n // r):
            n //= r
    return n
