"""Exact arithmetic in F_p, F_q = F_p[t]/(g) and F_q[x].

Field elements are stored as integer codes: the element
``d_0 + d_1 t + ... + d_{l-1} t^{l-1}`` has code ``d_0 + d_1 p + ... ``.
For the prime field the code is just the residue.  :class:`FieldElem`
wraps a code for user-facing work; :class:`Poly` keeps bare codes in a
tuple (low degree first) so the inner loops stay cheap.

Polynomial products switch to Kronecker substitution (one big-integer
multiplication) once both operands are long enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Union

from .errors import NotIrreducible, SpecMismatch
from .ntheory import factor_counts, is_prime

NEG_INF = -math.inf
INFINITY = math.inf

_KRONECKER_MIN = 12
_ADD_TABLE_MAX = 1024


@lru_cache(maxsize=None)
def default_modulus(p: int, l: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``l`` over F_p.

    Candidates are ordered by the integer whose base-p digits are the
    non-leading coefficients (constant term least significant).
    """
    if l == 1:
        return (0, 1)
    from .factorize import is_irreducible

    base = FieldSpec(p)
    for n in range(p**l):
        digits = [(n // p**i) % p for i in range(l)]
        if digits[0] == 0:
            continue
        cand = Poly(base, digits + [1])
        if is_irreducible(cand):
            return tuple(digits + [1])
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q = F_p[t]/(g), q = p^l.

    ``g`` holds the modulus coefficients over F_p, constant term first.
    Left empty, it defaults to :func:`default_modulus`.
    """

    p: int
    l: int = 1
    g: tuple[int, ...] = ()
    q: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        p, l = self.p, self.l
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if not isinstance(l, int) or l < 1:
            raise ValueError(f"extension degree must be >= 1, got {l}")
        if self.g:
            g = [int(c) % p for c in self.g]
            while g and g[-1] == 0:
                g.pop()
            g = tuple(g)
            if len(g) != l + 1 or g[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {l}")
            if l == 1 and g != (0, 1):
                raise ValueError("the prime field uses the modulus g = t")
            if l > 1:
                from .factorize import is_irreducible

                if not is_irreducible(Poly(FieldSpec(p), g)):
                    raise NotIrreducible(f"field modulus {g} is reducible over F_{p}")
        else:
            g = default_modulus(p, l)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "q", p**l)

    def __str__(self):
        if self.l == 1:
            return f"F_{self.p}"
        return f"F_{self.q} = F_{self.p}[t]/({Poly(FieldSpec(self.p), self.g).to_str('t')})"

    # -- element-level kernels on codes ---------------------------------

    @cached_property
    def _digits(self) -> list[tuple[int, ...]]:
        p, l = self.p, self.l
        return [tuple((n // p**i) % p for i in range(l)) for n in range(self.q)]

    def _code(self, digits: Iterable[int]) -> int:
        n, w = 0, 1
        for d in digits:
            n += (d % self.p) * w
            w *= self.p
        return n

    def _slow_mul(self, a: int, b: int) -> int:
        p, l, g = self.p, self.l, self.g
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * l - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        for k in range(2 * l - 2, l - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(l):
                    prod[k - l + j] -= c * g[j]
        return self._code(prod[:l])

    @cached_property
    def _log_tables(self) -> tuple[list[int], list[int]]:
        q = self.q
        n = q - 1
        primes = list(factor_counts(n))
        for cand in range(2, q):
            if all(self._slow_pow(cand, n // r) != 1 for r in primes):
                break
        else:  # q == 2 cannot reach here with l > 1
            raise AssertionError("no primitive element")
        exp = [0] * (2 * n)
        x = 1
        for i in range(n):
            exp[i] = exp[i + n] = x
            x = self._slow_mul(x, cand)
        log = [-1] * q
        for i in range(n):
            log[exp[i]] = i
        return exp, log

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    @cached_property
    def _neg_table(self) -> list[int]:
        return [self._code(-d for d in digs) for digs in self._digits]

    @cached_property
    def _add_table(self) -> list[list[int]] | None:
        if self.q > _ADD_TABLE_MAX:
            return None
        digs, code = self._digits, self._code
        return [[code(x + y for x, y in zip(digs[a], digs[b])) for b in range(self.q)] for a in range(self.q)]

    @cached_property
    def _reductions(self) -> list[list[int]]:
        # t^k mod g for l <= k <= 2l-2, as digit lists.
        p, l, g = self.p, self.l, self.g
        out = []
        cur = [(-c) % p for c in g[:l]]  # t^l
        for _ in range(l - 1):
            out.append(cur)
            top = cur[-1]
            nxt = [0] + cur[:-1]
            cur = [(nxt[j] - top * g[j]) % p for j in range(l)]
        return out

    def add(self, a: int, b: int) -> int:
        if self.l == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        table = self._add_table
        if table is not None:
            return table[a][b]
        return self._code(x + y for x, y in zip(self._digits[a], self._digits[b]))

    def neg(self, a: int) -> int:
        if self.l == 1:
            return -a % self.p
        return a if self.p == 2 else self._neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.l == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        exp, log = self._log_tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero in " + str(self))
        if self.l == 1:
            return pow(a, -1, self.p)
        exp, log = self._log_tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.l == 1:
            return pow(a, e, self.p)
        if not a:
            return 0 if e else 1
        exp, log = self._log_tables
        return exp[log[a] * e % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Code of the integer ``n`` viewed in the prime subfield."""
        return n % self.p

    def elem_str(self, a: int) -> str:
        if self.l == 1:
            return str(a)
        return Poly(FieldSpec(self.p), self._digits[a]).to_str("t")

    # convenience
    def elem(self, v: int | Iterable[int]) -> FieldElem:
        if isinstance(v, int):
            return FieldElem(self, v % self.p if self.l == 1 else v)
        return FieldElem(self, self._code(v))

    def elements(self) -> list[FieldElem]:
        return [FieldElem(self, v) for v in range(self.q)]


@lru_cache(maxsize=None)
def field_spec(p: int, l: int = 1, g: tuple[int, ...] = ()) -> FieldSpec:
    """Cached constructor so that the lookup tables are built once per field."""
    return FieldSpec(p, l, g)


def _check_code(spec: FieldSpec, v: int) -> int:
    if spec.l == 1:
        return v % spec.p
    if not 0 <= v < spec.q:
        raise ValueError(f"element code {v} out of range for {spec}")
    return v


@dataclass(frozen=True)
class FieldElem:
    spec: FieldSpec
    v: int

    def __post_init__(self):
        object.__setattr__(self, "v", _check_code(self.spec, self.v))

    @property
    def coeffs(self) -> tuple[int, ...]:
        if self.spec.l == 1:
            return (self.v,)
        return self.spec._digits[self.v]

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {other.spec}")
            return other.v
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.spec, self.spec.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.spec, self.spec.sub(self.v, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.spec, self.spec.sub(o, self.v))

    def __neg__(self):
        return FieldElem(self.spec, self.spec.neg(self.v))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.spec, self.spec.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.spec, self.spec.mul(self.v, self.spec.inv(o)))

    def __pow__(self, e: int):
        return FieldElem(self.spec, self.spec.pow(self.v, e))

    def inv(self) -> FieldElem:
        return FieldElem(self.spec, self.spec.inv(self.v))

    def __bool__(self):
        return self.v != 0

    def __str__(self):
        return self.spec.elem_str(self.v)


def field_arith(op: str, *operands):
    """Dispatch ``add | sub | mul | inv | pow`` on field elements.

    ``pow`` takes an element and a nonnegative integer exponent.
    """
    if op == "inv":
        (a,) = operands
        return a.inv()
    if op == "pow":
        a, e = operands
        if e < 0:
            raise ValueError("pow exponent must be nonnegative")
        return a**e
    a, b = operands
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown field operation {op!r}")


# -- polynomial kernels on code lists ----------------------------------------


def _trim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _mul_school(spec: FieldSpec, f, g) -> list[int]:
    res = [0] * (len(f) + len(g) - 1)
    if spec.l == 1:
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    res[i + j] += a * b
        p = spec.p
        return [c % p for c in res]
    exp, log = spec._log_tables
    lg = [(j, log[b]) for j, b in enumerate(g) if b]
    if spec.p == 2:
        for i, a in enumerate(f):
            if a:
                la = log[a]
                for j, lb in lg:
                    res[i + j] ^= exp[la + lb]
        return res
    add = spec.add
    for i, a in enumerate(f):
        if a:
            la = log[a]
            for j, lb in lg:
                res[i + j] = add(res[i + j], exp[la + lb])
    return res


def _mul_kronecker(spec: FieldSpec, f, g) -> list[int]:
    p, l = spec.p, spec.l
    n = min(len(f), len(g))
    width = 2 * l - 1
    k = ((n * l * (p - 1) ** 2).bit_length() + 8) // 8
    if l == 1:
        F = int.from_bytes(b"".join(c.to_bytes(k, "little") for c in f), "little")
        G = int.from_bytes(b"".join(c.to_bytes(k, "little") for c in g), "little")
        L = len(f) + len(g) - 1
        buf = (F * G).to_bytes(L * k, "little")
        return [int.from_bytes(buf[i * k : (i + 1) * k], "little") % p for i in range(L)]
    digits = spec._digits
    pad = bytes(k * (l - 1))

    def pack(h):
        parts = []
        for c in h:
            parts.append(b"".join(d.to_bytes(k, "little") for d in digits[c]))
            parts.append(pad)
        return int.from_bytes(b"".join(parts), "little")

    L = len(f) + len(g) - 1
    buf = (pack(f) * pack(g)).to_bytes(L * width * k + width * k, "little")
    red = spec._reductions
    out = []
    for i in range(L):
        base = i * width * k
        sub = [int.from_bytes(buf[base + j * k : base + (j + 1) * k], "little") for j in range(width)]
        low = sub[:l]
        for s in range(l, width):
            c = sub[s] % p
            if c:
                r = red[s - l]
                for j in range(l):
                    low[j] += c * r[j]
        out.append(spec._code(low))
    return out


def _mul(spec: FieldSpec, f, g) -> tuple[int, ...]:
    if not f or not g:
        return ()
    if min(len(f), len(g)) >= _KRONECKER_MIN:
        return _trim(_mul_kronecker(spec, f, g))
    return _trim(_mul_school(spec, f, g))


def _add(spec: FieldSpec, f, g) -> tuple[int, ...]:
    if len(f) < len(g):
        f, g = g, f
    if spec.l == 1:
        p = spec.p
        res = [(a + b) % p for a, b in zip(f, g)]
    elif spec.p == 2:
        res = [a ^ b for a, b in zip(f, g)]
    else:
        add = spec.add
        res = [add(a, b) for a, b in zip(f, g)]
    res.extend(f[len(g) :])
    return _trim(res)


def _neg(spec: FieldSpec, f) -> tuple[int, ...]:
    return tuple(spec.neg(c) for c in f)


def _divmod(spec: FieldSpec, f, g) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    if len(f) <= dg:
        return (), tuple(f)
    r = list(f)
    quo = [0] * (len(f) - dg)
    if spec.l == 1:
        p = spec.p
        inv = pow(g[-1], -1, p)
        body = g[:dg]
        for i in range(len(f) - 1, dg - 1, -1):
            c = r[i] % p
            if c:
                c = c * inv % p
                quo[i - dg] = c
                off = i - dg
                for j, b in enumerate(body):
                    if b:
                        r[off + j] -= c * b
        return _trim(quo), _trim([x % p for x in r[:dg]])
    mul, sub = spec.mul, spec.sub
    inv = spec.inv(g[-1])
    body = [(j, b) for j, b in enumerate(g[:dg]) if b]
    for i in range(len(f) - 1, dg - 1, -1):
        c = r[i]
        if c:
            c = mul(c, inv)
            quo[i - dg] = c
            off = i - dg
            for j, b in body:
                r[off + j] = sub(r[off + j], mul(c, b))
    return _trim(quo), _trim(r[:dg])


Coercible = Union["Poly", int, FieldElem]


class Poly:
    """Dense univariate polynomial in ``x`` over a :class:`FieldSpec`.

    ``Poly(spec, [1, 2, 1])`` is ``1 + 2x + x^2``; integers are element
    codes (see module docstring), ``FieldElem`` values are accepted too.
    Instances are immutable and hashable.
    """

    __slots__ = ("spec", "c")

    def __init__(self, spec: FieldSpec, coeffs: Iterable = ()):
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElem):
                if c.spec != spec:
                    raise SpecMismatch(f"{c.spec} vs {spec}")
                vals.append(c.v)
            else:
                vals.append(_check_code(spec, int(c)))
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "c", _trim(vals))

    @classmethod
    def _raw(cls, spec: FieldSpec, c: tuple[int, ...]) -> Poly:
        obj = object.__new__(cls)
        object.__setattr__(obj, "spec", spec)
        object.__setattr__(obj, "c", c)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls, spec: FieldSpec) -> Poly:
        return cls._raw(spec, ())

    @classmethod
    def one(cls, spec: FieldSpec) -> Poly:
        return cls._raw(spec, (1,))

    @classmethod
    def x(cls, spec: FieldSpec) -> Poly:
        return cls._raw(spec, (0, 1))

    @classmethod
    def const(cls, spec: FieldSpec, v: int | FieldElem) -> Poly:
        return cls(spec, [v])

    @classmethod
    def monomial(cls, spec: FieldSpec, k: int, coeff: int = 1) -> Poly:
        return cls(spec, [0] * k + [coeff])

    # -- inspection -------------------------------------------------------

    @property
    def deg(self) -> int | float:
        return len(self.c) - 1 if self.c else NEG_INF

    @property
    def lead(self) -> int:
        return self.c[-1] if self.c else 0

    @property
    def coeffs(self) -> tuple[FieldElem, ...]:
        return tuple(FieldElem(self.spec, v) for v in self.c)

    def coeff(self, i: int) -> FieldElem:
        return FieldElem(self.spec, self.c[i] if 0 <= i < len(self.c) else 0)

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == (1,)

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def is_monic(self) -> bool:
        return self.lead == 1

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, int):
            return Poly._raw(self.spec, _trim([self.spec.from_int(other)]))
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {other.spec}")
            return Poly._raw(self.spec, _trim([other.v]))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly._raw(self.spec, _add(self.spec, self.c, o.c))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.spec, _neg(self.spec, self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly._raw(self.spec, _add(self.spec, self.c, _neg(self.spec, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly._raw(self.spec, _mul(self.spec, self.c, o.c))

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        q, r = _divmod(self.spec, self.c, o.c)
        return Poly._raw(self.spec, q), Poly._raw(self.spec, r)

    def __floordiv__(self, other):
        res = self.__divmod__(other)
        return res if res is NotImplemented else res[0]

    def __mod__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if len(self.c) < len(o.c):
            if not o.c:
                raise ZeroDivisionError("polynomial division by zero")
            return self
        return Poly._raw(self.spec, _divmod(self.spec, self.c, o.c)[1])

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.one(self.spec)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, v: int) -> Poly:
        """Multiply by the field element with code ``v``."""
        if not v:
            return Poly.zero(self.spec)
        mul = self.spec.mul
        return Poly._raw(self.spec, tuple(mul(v, c) for c in self.c))

    def monic(self) -> Poly:
        if not self.c:
            return self
        return self.scale(self.spec.inv(self.c[-1]))

    def derivative(self) -> Poly:
        spec = self.spec
        return Poly._raw(spec, _trim([spec.mul(spec.from_int(i), c) for i, c in enumerate(self.c)][1:]))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.spec == other.spec and self.c == other.c
        if isinstance(other, int) and not isinstance(other, bool):
            return self.c == _trim([self.spec.from_int(other)])
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.c))

    def __lt__(self, other: Poly):
        # Sort key used by factorizations: degree, then coefficients from the top.
        return (len(self.c), self.c[::-1]) < (len(other.c), other.c[::-1])

    def sort_key(self) -> tuple:
        return (len(self.c), self.c[::-1])

    # -- text ---------------------------------------------------------------

    def to_str(self, var: str = "x") -> str:
        if not self.c:
            return "0"
        spec = self.spec
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            v = self.c[k]
            if not v:
                continue
            cs = spec.elem_str(v)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                terms.append(cs)
            elif cs == "1":
                terms.append(mono)
            elif "+" in cs:
                terms.append(f"({cs})*{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        return "+".join(terms)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r} over {self.spec})"


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0)`` raises ZeroDivisionError."""
    if not f and not g:
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    while g:
        f, g = g, f % g
    return f.monic()


def xgcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(d, s, t)`` with ``s*f + t*g = d`` and ``d`` monic."""
    if not f and not g:
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    spec = f.spec
    r0, r1 = f, g
    s0, s1 = Poly.one(spec), Poly.zero(spec)
    t0, t1 = Poly.zero(spec), Poly.one(spec)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = spec.inv(r0.lead)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def pow_mod(f: Poly, e: int, m: Poly) -> Poly:
    if e < 0:
        raise ValueError("negative exponent")
    result = Poly.one(f.spec) % m
    base = f % m
    while e:
        if e & 1:
            result = result * base % m
        e >>= 1
        if e:
            base = base * base % m
    return result


def poly_arith(op: str, f: Poly, g: Poly):
    """Dispatch ``add | sub | mul | divmod | gcd`` on two polynomials."""
    if f.spec != g.spec:
        raise SpecMismatch(f"{f.spec} vs {g.spec}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "divmod":
        return divmod(f, g)
    if op == "gcd":
        return gcd(f, g)
    raise ValueError(f"unknown polynomial operation {op!r}")


def valuation(P: Poly, f: Poly) -> int | float:
    """Largest ``n`` with ``P^n | f``; ``INFINITY`` for ``f = 0``."""
    from .factorize import is_irreducible

    if P.deg < 1 or not P.is_monic() or not is_irreducible(P):
        raise NotIrreducible(f"{P} is not a monic irreducible polynomial")
    return valuation_unchecked(P, f)


def valuation_unchecked(P: Poly, f: Poly, cap: int | None = None) -> int | float:
    if not f:
        return INFINITY if cap is None else cap
    n = 0
    while cap is None or n < cap:
        q, r = divmod(f, P)
        if r:
            break
        f = q
        n += 1
    return n
