"""Irreducibility, factorization over F_q, and the characteristic quadratic mod P.

Factorization is the textbook pipeline: squarefree decomposition, then
distinct-degree, then Cantor-Zassenhaus equal-degree splitting.  Every
randomized step draws from a ``random.Random`` seeded by a hash of its
input, so results are reproducible run to run.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .algebra import FieldElem, FieldSpec, Poly, gcd, pow_mod
from .errors import BNotCoprime, ConstantInput, InternalMismatch, NotIrreducible
from .ntheory import factor_counts


def _seeded_rng(*polys: Poly, salt: str = "") -> random.Random:
    h = hashlib.sha256(salt.encode())
    for f in polys:
        h.update(repr((f.spec.p, f.spec.l, f.spec.g, f.c)).encode())
    return random.Random(int.from_bytes(h.digest()[:8], "big"))


def _random_below(rng: random.Random, spec: FieldSpec, n: int) -> Poly:
    return Poly(spec, [rng.randrange(spec.q) for _ in range(n)])


def _frobenius_powers(f: Poly, k: int) -> list[Poly]:
    """``[x^(q^1), ..., x^(q^k)]`` reduced mod ``f``."""
    q = f.spec.q
    out = []
    h = Poly.x(f.spec) % f
    for _ in range(k):
        h = pow_mod(h, q, f)
        out.append(h)
    return out


@lru_cache(maxsize=8192)
def is_irreducible(f: Poly) -> bool:
    """Rabin's test over F_q."""
    n = f.deg
    if n < 1:
        raise ConstantInput("irreducibility is only defined for deg f >= 1")
    if n == 1:
        return True
    f = f.monic()
    x = Poly.x(f.spec)
    frob = _frobenius_powers(f, n)
    if frob[-1] != x % f:
        return False
    for r in factor_counts(n):
        h = frob[n // r - 1]
        if not gcd(h - x, f).is_one():
            return False
    return True


def _pth_root(f: Poly) -> Poly:
    spec = f.spec
    p = spec.p
    e = spec.q // p  # c -> c^(q/p) inverts Frobenius on F_q
    return Poly._raw(spec, tuple(spec.pow(c, e) for c in f.c[::p]))


def squarefree_parts(f: Poly) -> list[tuple[Poly, int]]:
    """Pairwise coprime squarefree ``(g, m)`` with ``prod g^m = monic(f)``."""
    f = f.monic()
    out: list[tuple[Poly, int]] = []
    df = f.derivative()
    if df:
        c = gcd(f, df)
        w = f // c
        i = 1
        while not w.is_one():
            y = gcd(w, c)
            z = w // y
            if not z.is_one():
                out.append((z, i))
            i += 1
            w, c = y, c // y
        if not c.is_one():
            out.extend((g, m * f.spec.p) for g, m in squarefree_parts(_pth_root(c)))
    elif f.deg > 0:
        out.extend((g, m * f.spec.p) for g, m in squarefree_parts(_pth_root(f)))
    return out


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree ``f`` into products of same-degree irreducibles."""
    out = []
    spec = f.spec
    x = Poly.x(spec)
    h = x % f if f.deg > 0 else x
    i = 0
    while f.deg >= 2 * (i + 1):
        i += 1
        h = pow_mod(h, spec.q, f)
        g = gcd(h - x, f)
        if not g.is_one():
            out.append((g, i))
            f = f // g
            h = h % f
    if f.deg > 0:
        out.append((f, f.deg))
    return out


def equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a monic squarefree product of degree-d irreducibles."""
    if f.deg == d:
        return [f]
    spec = f.spec
    while True:
        a = _random_below(rng, spec, f.deg)
        if a.deg < 1:
            continue
        if spec.p == 2:
            # absolute trace to F_2 of a in F_q[x]/(irreducible), summed over d*l squarings
            t = a
            acc = a
            for _ in range(d * spec.l - 1):
                t = t * t % f
                acc = acc + t
            b = acc
        else:
            b = pow_mod(a, (spec.q**d - 1) // 2, f) - 1
        g = gcd(b, f) if b else f
        if 0 < g.deg < f.deg:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


@dataclass(frozen=True)
class Factorization:
    unit: FieldElem
    parts: tuple[tuple[Poly, int], ...]

    def expand(self) -> Poly:
        spec = self.unit.spec
        out = Poly.const(spec, self.unit)
        for P, e in self.parts:
            out = out * P**e
        return out

    def __str__(self):
        body = "*".join(f"({P})^{e}" if e > 1 else f"({P})" for P, e in self.parts)
        return f"{self.unit}*{body}" if self.unit.v != 1 else body


@lru_cache(maxsize=2048)
def factor_poly(f: Poly) -> Factorization:
    """Complete factorization ``f = unit * prod P_i^e_i`` over F_q."""
    if f.deg < 1:
        raise ConstantInput("factor_poly needs deg f >= 1")
    spec = f.spec
    unit = FieldElem(spec, f.lead)
    rng = _seeded_rng(f, salt="factor")
    counts: dict[Poly, int] = {}
    for g, m in squarefree_parts(f):
        for h, d in distinct_degree(g):
            for P in equal_degree(h, d, rng):
                counts[P] = counts.get(P, 0) + m
    parts = tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))
    return Factorization(unit, parts)


# -- the characteristic quadratic X^2 - aX - b modulo an irreducible P ----------


class RootStatus(str, Enum):
    TWO_DISTINCT = "TWO_DISTINCT"
    REPEATED = "REPEATED"
    IRREDUCIBLE_MOD_P = "IRREDUCIBLE_MOD_P"


@dataclass(frozen=True)
class QuadRoots:
    status: RootStatus
    roots: tuple[Poly, ...]  # representatives mod P, deg < deg P


def _field_inv(u: Poly, P: Poly) -> Poly:
    from .algebra import xgcd

    d, s, _ = xgcd(u % P, P)
    if not d.is_one():
        raise ZeroDivisionError("not invertible modulo P")
    return s % P


def residue_trace(c: Poly, P: Poly) -> Poly:
    """Absolute trace to F_2 of ``c`` in F_2^(dl) = F_q[x]/P (characteristic 2 only)."""
    n = P.deg * P.spec.l
    t = c % P
    acc = t
    for _ in range(n - 1):
        t = t * t % P
        acc = acc + t
    return acc


def _artin_schreier(c: Poly, P: Poly, rng: random.Random) -> Poly:
    """A root ``z`` of ``z^2 + z = c`` in F_2^n (assumes trace(c) = 0)."""
    spec = P.spec
    n = P.deg * spec.l
    c = c % P
    if n % 2 == 1:
        # half-trace
        z = c
        t = c
        for _ in range((n - 1) // 2):
            t = t * t % P
            t = t * t % P
            z = z + t
        return z
    while True:
        delta = _random_below(rng, spec, P.deg)
        if residue_trace(delta, P).is_one():
            break
    dpow = [delta]
    for _ in range(n - 1):
        dpow.append(dpow[-1] * dpow[-1] % P)
    # z = sum_{i<n} (sum_{j>i} delta^(2^j)) c^(2^i)
    z = Poly.zero(spec)
    tail = Poly.zero(spec)
    cpow = [c]
    for _ in range(n - 1):
        cpow.append(cpow[-1] * cpow[-1] % P)
    for i in range(n - 1, -1, -1):
        z = (z + tail * cpow[i]) % P
        tail = tail + dpow[i]
    return z


def sqrt_mod(u: Poly, P: Poly, rng: random.Random | None = None) -> Poly | None:
    """Square root of ``u`` in F_q[x]/P (P irreducible), or ``None`` for a non-square.

    Odd characteristic uses Tonelli-Shanks; characteristic 2 uses the
    inverse Frobenius ``u^(Q/2)``.
    """
    spec = P.spec
    Q = spec.q**P.deg
    u = u % P
    if not u:
        return u
    if spec.p == 2:
        return pow_mod(u, Q // 2, P)
    one = Poly.one(spec)
    if pow_mod(u, (Q - 1) // 2, P) != one:
        return None
    s, t = 0, Q - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    if s == 1:
        return pow_mod(u, (Q + 1) // 4, P)
    rng = rng or _seeded_rng(u, P, salt="sqrt")
    minus_one = Poly.const(spec, spec.neg(1))
    while True:
        z = _random_below(rng, spec, P.deg)
        if z and pow_mod(z, (Q - 1) // 2, P) == minus_one:
            break
    m = s
    c = pow_mod(z, t, P)
    r = pow_mod(u, (t + 1) // 2, P)
    tt = pow_mod(u, t, P)
    while tt != one:
        i, x = 0, tt
        while x != one:
            x = x * x % P
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = b * b % P
        r = r * b % P
        c = b * b % P
        tt = tt * c % P
        m = i
    return r


def quad_roots(a: Poly, b: Poly, P: Poly, *, check_irreducible: bool = True) -> QuadRoots:
    """Roots of ``X^2 - aX - b`` in the field F_q[x]/P."""
    if P.deg < 1 or (check_irreducible and not is_irreducible(P)):
        raise NotIrreducible(f"{P} is not irreducible")
    P = P.monic()
    spec = P.spec
    if not gcd(b, P).is_one():
        raise BNotCoprime(f"gcd(b, P) != 1 for b = {b}, P = {P}")
    a, b = a % P, b % P
    rng = _seeded_rng(a, b, P, salt="quad")
    if spec.p != 2:
        delta = (a * a + b * 4) % P
        half = spec.inv(spec.from_int(2))
        if not delta:
            return QuadRoots(RootStatus.REPEATED, (a.scale(half),))
        r = sqrt_mod(delta, P, rng)
        if r is None:
            return QuadRoots(RootStatus.IRREDUCIBLE_MOD_P, ())
        return QuadRoots(RootStatus.TWO_DISTINCT, ((a + r).scale(half), (a - r).scale(half)))
    if not a:
        return QuadRoots(RootStatus.REPEATED, (sqrt_mod(b, P),))
    c = b * _field_inv(a * a, P) % P
    if residue_trace(c, P):
        return QuadRoots(RootStatus.IRREDUCIBLE_MOD_P, ())
    R = _artin_schreier(c, P, rng)
    if (R * R + R - c) % P:
        raise InternalMismatch("Artin-Schreier root failed to verify")
    return QuadRoots(RootStatus.TWO_DISTINCT, (a * R % P, a * (R + 1) % P))
