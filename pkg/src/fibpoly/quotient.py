"""Residues modulo M, 2x2 matrices over F_q[x]/M, and multiplicative orders."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly, gcd, pow_mod, xgcd
from .errors import NotCoprime
from .factorize import factor_poly
from .ntheory import int_factor, lcm, order_descent

__all__ = [
    "ResidueRing",
    "Residue",
    "Mat2",
    "companion",
    "mat2_pow",
    "scalar_test",
    "mult_order",
    "unit_exponent_bound",
    "int_factor",
]


class ResidueRing:
    """F_q[x]/M with the modulus normalized to be monic."""

    __slots__ = ("modulus",)

    def __init__(self, modulus: Poly):
        if modulus.deg < 1:
            raise ValueError("residue ring modulus must have degree >= 1")
        self.modulus = modulus.monic()

    @property
    def spec(self):
        return self.modulus.spec

    def __call__(self, f: Poly | int) -> Residue:
        if isinstance(f, int):
            f = Poly.const(self.spec, self.spec.from_int(f))
        return Residue(self, f % self.modulus)

    def zero(self) -> Residue:
        return Residue(self, Poly.zero(self.spec))

    def one(self) -> Residue:
        return Residue(self, Poly.one(self.spec))

    def __eq__(self, other):
        return isinstance(other, ResidueRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"ResidueRing({self.modulus})"


class Residue:
    __slots__ = ("ring", "rep")

    def __init__(self, ring: ResidueRing, rep: Poly):
        # rep must already be reduced; use ring(f) to reduce
        self.ring = ring
        self.rep = rep

    def _rep_of(self, other) -> Poly:
        if isinstance(other, Residue):
            if other.ring != self.ring:
                raise ValueError("residues from different rings")
            return other.rep
        return self.ring(other).rep

    def __add__(self, other):
        return Residue(self.ring, self.rep + self._rep_of(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.ring, self.rep - self._rep_of(other))

    def __rsub__(self, other):
        return Residue(self.ring, self._rep_of(other) - self.rep)

    def __neg__(self):
        return Residue(self.ring, -self.rep)

    def __mul__(self, other):
        return Residue(self.ring, self.rep * self._rep_of(other) % self.ring.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Residue(self.ring, pow_mod(self.rep, e, self.ring.modulus))

    def inverse(self) -> Residue:
        d, s, _ = xgcd(self.rep, self.ring.modulus)
        if not d.is_one():
            raise ZeroDivisionError(f"{self.rep} is not a unit modulo {self.ring.modulus}")
        return Residue(self.ring, s % self.ring.modulus)

    def is_zero(self) -> bool:
        return not self.rep

    def is_one(self) -> bool:
        return self.rep.is_one()

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.ring == other.ring and self.rep == other.rep
        if isinstance(other, (int, Poly)):
            return self.rep == self.ring(other).rep
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.rep))

    def __str__(self):
        return str(self.rep)

    def __repr__(self):
        return f"Residue({self.rep} mod {self.ring.modulus})"


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 matrix ``[[m00, m01], [m10, m11]]`` over a residue ring."""

    m00: Residue
    m01: Residue
    m10: Residue
    m11: Residue

    @classmethod
    def identity(cls, ring: ResidueRing) -> Mat2:
        z, o = ring.zero(), ring.one()
        return cls(o, z, z, o)

    @property
    def ring(self) -> ResidueRing:
        return self.m00.ring

    def __mul__(self, o: Mat2) -> Mat2:
        # products on raw reps, one reduction per entry
        M = self.ring.modulus
        a, b, c, d = self.m00.rep, self.m01.rep, self.m10.rep, self.m11.rep
        e, f, g, h = o.m00.rep, o.m01.rep, o.m10.rep, o.m11.rep
        R = self.ring
        return Mat2(
            Residue(R, (a * e + b * g) % M),
            Residue(R, (a * f + b * h) % M),
            Residue(R, (c * e + d * g) % M),
            Residue(R, (c * f + d * h) % M),
        )

    def det(self) -> Residue:
        return self.m00 * self.m11 - self.m01 * self.m10

    def entries(self) -> tuple[Residue, Residue, Residue, Residue]:
        return (self.m00, self.m01, self.m10, self.m11)

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())


def companion(a: Poly, b: Poly, ring: ResidueRing) -> Mat2:
    """U = [[0, 1], [b, a]] reduced into ``ring``."""
    return Mat2(ring.zero(), ring.one(), ring(b), ring(a))


def mat2_pow(base: Mat2, n: int) -> Mat2:
    if n < 0:
        raise ValueError("mat2_pow needs n >= 0")
    result = Mat2.identity(base.ring)
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def scalar_test(m: Mat2) -> Residue | None:
    """``s`` if ``m`` is the scalar matrix ``s*I``, else ``None``."""
    if m.m01.is_zero() and m.m10.is_zero() and m.m00 == m.m11:
        return m.m00
    return None


def unit_exponent_bound(M: Poly) -> int:
    """A multiple of the exponent of (F_q[x]/M)^*.

    ``lcm(q^d_i - 1) * p^t`` with ``p^t`` the least power of p that is at
    least the largest multiplicity in M.
    """
    fac = factor_poly(M.monic())
    spec = M.spec
    e_max = max(e for _, e in fac.parts)
    ppart = 1
    while ppart < e_max:
        ppart *= spec.p
    return ppart * lcm(*(spec.q**P.deg - 1 for P, _ in fac.parts))


def mult_order(g: Poly | Residue, M: Poly) -> int:
    """Least ``n >= 1`` with ``g^n = 1 (mod M)``, by divisor descent on the exponent bound."""
    if isinstance(g, Residue):
        g = g.rep
    if M.deg < 1:
        raise ValueError("mult_order needs deg M >= 1")
    M = M.monic()
    g = g % M
    if not g or not gcd(g, M).is_one():
        raise NotCoprime(f"gcd({g}, {M}) != 1")
    bound = unit_exponent_bound(M)
    one = Poly.one(M.spec)
    return order_descent(bound, lambda n: pow_mod(g, n, M) == one)

