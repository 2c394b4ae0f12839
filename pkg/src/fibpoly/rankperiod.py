"""Structured rank / period computation.

Pipeline: factor M, compute alpha(P) and pi(P) for each irreducible P from
the splitting type of X^2 - aX - b mod P, measure the first jump exponents
e_1 and e_1' directly, extend them to full ladders with the closed forms,
read off alpha(P^e) and pi(P^e), and recombine with integer lcms.

Ladder conventions: ``e_i`` is the i-th exponent where alpha(P^e) grows
(by a factor p), ``e_i'`` the same for pi(P^e).  Between consecutive jump
points both functions are constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .algebra import INFINITY, Poly, pow_mod, valuation_unchecked
from .errors import InternalMismatch, NotIrreducible, PreconditionViolated
from .factorize import Factorization, RootStatus, factor_poly, is_irreducible, quad_roots, residue_trace
from .fibcore import SeqParams, fib_exact, fib_pair_at
from .ntheory import lcm, order_descent
from .quotient import ResidueRing, companion, mat2_pow, mult_order, scalar_test


class CaseTag(str, Enum):
    DELTA_ZERO_MOD_P_ODD = "DELTA_ZERO_MOD_P_ODD"
    QR = "QR"
    NON_QR = "NON_QR"
    P2_A_DIVISIBLE = "P2_A_DIVISIBLE"
    P2_TRACE_ZERO = "P2_TRACE_ZERO"
    P2_TRACE_NONZERO = "P2_TRACE_NONZERO"


SPLIT_TAGS = (CaseTag.QR, CaseTag.P2_TRACE_ZERO)
INERT_TAGS = (CaseTag.NON_QR, CaseTag.P2_TRACE_NONZERO)


class Rule(str, Enum):
    GEOMETRIC_SUM = "GEOMETRIC_SUM"  # e_i = (p^i - 1) e_1 / (p - 1)
    GEOMETRIC = "GEOMETRIC"  # e_i = p^(i-1) e_1


class Special(str, Enum):
    DELTA_ZERO_POLY = "DELTA_ZERO_POLY"
    RATIO_CONSTANT = "RATIO_CONSTANT"


class PeriodCase(str, Enum):
    A_NO_E1 = "A_NO_E1"
    B_E1P_LT_E1 = "B_E1P_LT_E1"
    C_DELTA_NONZERO_MOD_P = "C_DELTA_NONZERO_MOD_P"
    D_ODD_REPEATED = "D_ODD_REPEATED"
    E_CHAR2_REPEATED = "E_CHAR2_REPEATED"


@dataclass(frozen=True)
class PrimeCase:
    tag: CaseTag
    d: int


def _prime(params: SeqParams, P: Poly) -> Poly:
    if P.deg < 1:
        raise ValueError("P must have degree >= 1")
    P = P.monic()
    if not is_irreducible(P):
        raise NotIrreducible(f"{P} is not irreducible")
    params.require_coprime(P)
    return P


def _valuation_doubling(values, P: Poly, start: int = 8) -> int:
    """min v_P over ``values(P^E)``, doubling E until the answer is below E.

    ``values`` must return polynomials that are not all exactly zero,
    otherwise this would not terminate.
    """
    E = start
    while True:
        v = min(valuation_unchecked(P, f, cap=E) for f in values(P**E))
        if v < E:
            return v
        E *= 2


def _val_power_minus_one(g: Poly, k: int, P: Poly) -> int | float:
    """v_P(g^k - 1); INFINITY when g^k = 1 exactly."""
    if g.deg <= 0:
        return valuation_unchecked(P, g**k - 1)
    return _valuation_doubling(lambda M: [pow_mod(g, k, M) - 1], P)


def _half(params: SeqParams) -> int:
    spec = params.spec
    return spec.inv(spec.from_int(2))


# -- prime modulus -------------------------------------------------------------


def classify(params: SeqParams, P: Poly) -> PrimeCase:
    """Splitting type of X^2 - aX - b modulo the irreducible P."""
    P = _prime(params, P)
    spec = params.spec
    d = P.deg
    if spec.p != 2:
        delta = params.delta % P
        if not delta:
            return PrimeCase(CaseTag.DELTA_ZERO_MOD_P_ODD, d)
        if pow_mod(delta, (spec.q**d - 1) // 2, P).is_one():
            return PrimeCase(CaseTag.QR, d)
        return PrimeCase(CaseTag.NON_QR, d)
    a = params.a % P
    if not a:
        return PrimeCase(CaseTag.P2_A_DIVISIBLE, d)
    a2_inv = ResidueRing(P)(a * a).inverse().rep
    c = params.b * a2_inv % P
    if residue_trace(c, P):
        return PrimeCase(CaseTag.P2_TRACE_NONZERO, d)
    return PrimeCase(CaseTag.P2_TRACE_ZERO, d)


@lru_cache(maxsize=4096)
def rank_prime(params: SeqParams, P: Poly) -> int:
    """alpha(P) for an irreducible P."""
    P = _prime(params, P)
    case = classify(params, P)
    spec = params.spec
    if case.tag is CaseTag.DELTA_ZERO_MOD_P_ODD:
        return spec.p
    if case.tag is CaseTag.P2_A_DIVISIBLE:
        return 2
    Q = spec.q**case.d
    bound = Q - 1 if case.tag in SPLIT_TAGS else Q + 1

    def vanishes(n: int) -> bool:
        return fib_pair_at(params, n, P)[0].is_zero()

    if not vanishes(bound):
        raise InternalMismatch(f"F_{bound} is not 0 mod {P} in case {case.tag.value}")
    return order_descent(bound, vanishes)


def _scalar_at(params: SeqParams, n: int, M: Poly):
    s = scalar_test(mat2_pow(companion(params.a, params.b, ResidueRing(M)), n))
    if s is None:
        raise InternalMismatch(f"U^{n} is not scalar modulo {M}")
    return s


@lru_cache(maxsize=4096)
def period_prime(params: SeqParams, P: Poly) -> int:
    """pi(P) = alpha(P) * ord_P(s), cross-checked against the root orders."""
    P = _prime(params, P)
    spec = params.spec
    alpha = rank_prime(params, P)
    pi = alpha * mult_order(_scalar_at(params, alpha, P), P)
    tag = classify(params, P).tag
    check = None
    if tag is CaseTag.DELTA_ZERO_MOD_P_ODD:
        check = spec.p * mult_order(params.a.scale(_half(params)), P)
    elif tag is CaseTag.P2_A_DIVISIBLE:
        check = 2 * mult_order(params.b, P)
    elif tag in SPLIT_TAGS:
        roots = quad_roots(params.a, params.b, P, check_irreducible=False)
        if roots.status is not RootStatus.TWO_DISTINCT:
            raise InternalMismatch(f"{tag.value} but quadratic roots are {roots.status.value}")
        check = lcm(*(mult_order(r, P) for r in roots.roots))
    if check is not None and check != pi:
        raise InternalMismatch(f"pi(P) = {pi} by the scalar route but {check} by the closed form")
    return pi


@lru_cache(maxsize=64)
def _quadratic_extension(spec) -> Poly:
    for n in range(spec.q**2):
        cand = Poly(spec, [n % spec.q, n // spec.q, 1])
        if cand.c[0] and is_irreducible(cand):
            return cand
    raise AssertionError("no irreducible quadratic")  # unreachable


def ratio_order(params: SeqParams) -> int:
    """Order m of lambda_2/lambda_1 in F_{q^2}, when a^2/b is a constant and Delta != 0."""
    if not params.ratio_in_Fq or params.delta_is_zero:
        raise PreconditionViolated("ratio_order needs a^2/b in F_q and Delta != 0")
    spec = params.spec
    h = _quadratic_extension(spec)
    # r^2 + (2 + c) r + 1 = 0, written as r^2 - A r - B with A = -(2 + c), B = -1
    A = Poly.const(spec, spec.neg(spec.add(spec.from_int(2), params.ratio)))
    B = Poly.const(spec, spec.neg(1))
    roots = quad_roots(A, B, h, check_irreducible=False)
    if roots.status is RootStatus.IRREDUCIBLE_MOD_P:
        raise InternalMismatch("a quadratic over F_q failed to split in F_{q^2}")
    return mult_order(roots.roots[0], h)


def _constant_period_bound(params: SeqParams) -> int:
    """m_1 = p * ord(lambda) when Delta = 0, else m_2 = lcm(ord(lambda2/lambda1), ord(lambda1))."""
    spec = params.spec
    h = _quadratic_extension(spec)
    roots = quad_roots(params.a, params.b, h, check_irreducible=False)
    if params.delta_is_zero:
        return spec.p * mult_order(roots.roots[0], h)
    l1, l2 = roots.roots
    ratio = l2 * ResidueRing(h)(l1).inverse().rep % h
    return lcm(mult_order(ratio, h), mult_order(l1, h))


# -- ladders -------------------------------------------------------------------


@dataclass(frozen=True)
class RankProfile:
    p: int
    alpha_P: int
    e1: int | None
    rule: Rule
    special: Special | None = None
    ratio_m: int | None = None

    def e(self, i: int) -> int:
        if self.e1 is None:
            raise ValueError("e_1 does not exist for this prime")
        p = self.p
        if self.rule is Rule.GEOMETRIC_SUM:
            return (p**i - 1) * self.e1 // (p - 1)
        return p ** (i - 1) * self.e1

    def alpha_at(self, i: int) -> int:
        """alpha(P^{e_i})."""
        if self.rule is Rule.GEOMETRIC_SUM:
            return self.p**i
        return self.p ** (i - 1) * self.alpha_P

    def ladder(self, upto: int) -> list[int]:
        return [self.e(i) for i in range(1, upto + 1)]


@lru_cache(maxsize=4096)
def rank_profile(params: SeqParams, P: Poly) -> RankProfile:
    P = _prime(params, P)
    spec = params.spec
    alpha = rank_prime(params, P)
    special = m = None
    if params.delta_is_zero:
        special = Special.DELTA_ZERO_POLY
        has_e1 = False
    elif params.ratio_in_Fq:
        special = Special.RATIO_CONSTANT
        m = ratio_order(params)
        has_e1 = bool(fib_exact(params, alpha))
    else:
        # F_n never vanishes exactly unless Delta = 0 or a^2/b is constant
        has_e1 = True
    e1 = None
    if has_e1:
        e1 = _valuation_doubling(lambda M: [fib_pair_at(params, alpha, M)[0].rep], P)
    rule = Rule.GEOMETRIC_SUM if not params.delta % P else Rule.GEOMETRIC
    return RankProfile(spec.p, alpha, e1, rule, special, m)


@dataclass(frozen=True)
class PeriodProfile:
    p: int
    pi_P: int
    e1p: int
    e1: int | None
    case: PeriodCase
    k: int | None = None
    m: int | float | None = None
    # case E with m = e_1: m_2, m_3, ... as computed; j is the stopping index
    process: tuple[int, ...] = ()
    j: int | None = None
    horizon: int = 0
    c_values: tuple[int, ...] = field(default=(), repr=False)

    def e_prime(self, i: int) -> int:
        if i < 1:
            raise ValueError("ladder index starts at 1")
        p, e1 = self.p, self.e1
        if i == 1:
            return self.e1p
        if self.case in (PeriodCase.A_NO_E1, PeriodCase.B_E1P_LT_E1, PeriodCase.C_DELTA_NONZERO_MOD_P):
            return p ** (i - 1) * self.e1p
        if self.case is PeriodCase.D_ODD_REPEATED:
            return min(self.m * p**i, (p**i - 1) * e1 // (p - 1))
        if self.m > e1:
            return 2 ** (i - 1) * e1
        j = self.j
        if j is None:
            if i > self.horizon:
                raise ValueError(f"the m_i process was only run to i = {self.horizon}")
            return (2**i - 1) * e1
        if i < j:
            return (2**i - 1) * e1
        ej = min((2**j - 1) * e1, (2**j - 2) * e1 + self.process[j - 2])
        return 2 ** (i - j) * ej

    def ladder(self, upto: int) -> list[int]:
        return [self.e_prime(i) for i in range(1, upto + 1)]


def _unipotent_part(params: SeqParams, n: int):
    def values(M):
        U = mat2_pow(companion(params.a, params.b, ResidueRing(M)), n)
        return [U.m00.rep - 1, U.m01.rep, U.m10.rep, U.m11.rep - 1]

    return values


def _char2_process(params: SeqParams, P: Poly, e1: int, k: int, upto: int):
    """m_2, m_3, ... of the g_i recursion, stopping at the first m_j != e_1."""
    a, b = params.a, params.b
    Pe1 = P**e1
    g1, rem = divmod(a, Pe1)
    if rem:
        raise InternalMismatch("P^e_1 does not divide a in the characteristic-2 repeated case")
    prec = (upto + 1) * e1 + 1
    num = (pow_mod(b, k, P**prec) - 1) % P**prec
    g, rem = divmod(num, Pe1)
    if rem:
        raise InternalMismatch("P^e_1 does not divide b^k - 1")
    prec -= e1
    ms: list[int] = []
    j = None
    for i in range(2, upto + 1):
        Mp = P**prec
        num = (pow_mod(g1, 2**i - 2, Mp) + b * g * g) % Mp
        mi = valuation_unchecked(P, num, cap=prec)
        ms.append(mi)
        if mi != e1:
            j = i
            break
        g = num // Pe1
        prec -= e1
    return tuple(ms), j


def _char2_c_values(params: SeqParams, P: Poly, e1: int, k: int, upto: int) -> tuple[int, ...]:
    """Capped v_P(c_i), i = 2..upto, with c_1 = b^k - 1 and c_i = a^(2^i - 2) + b c_{i-1}^2."""
    cap = (2**upto - 1) * e1 + 1
    Mc = P**cap
    a, b = params.a % Mc, params.b % Mc
    c = (pow_mod(b, k, Mc) - 1) % Mc
    out = []
    for i in range(2, upto + 1):
        c = (pow_mod(a, 2**i - 2, Mc) + b * c * c) % Mc
        out.append(valuation_unchecked(P, c, cap=cap))
    return tuple(out)


@lru_cache(maxsize=4096)
def period_profile(params: SeqParams, P: Poly, upto: int = 6) -> PeriodProfile:
    P = _prime(params, P)
    if params.constants_only:
        raise PreconditionViolated("period_profile needs a, b not both constant")
    spec = params.spec
    p = spec.p
    rp = rank_profile(params, P)
    pi = period_prime(params, P)
    e1p = _valuation_doubling(_unipotent_part(params, pi), P)
    e1 = rp.e1
    if e1 is None:
        return PeriodProfile(p, pi, e1p, e1, PeriodCase.A_NO_E1)
    if e1p < e1:
        return PeriodProfile(p, pi, e1p, e1, PeriodCase.B_E1P_LT_E1)
    if params.delta % P:
        return PeriodProfile(p, pi, e1p, e1, PeriodCase.C_DELTA_NONZERO_MOD_P)
    if e1p != e1:
        raise InternalMismatch(f"e_1' = {e1p} exceeds e_1 = {e1}")
    if p != 2:
        half_a = params.a.scale(_half(params))
        k = mult_order(half_a, P)
        m = _val_power_minus_one(half_a, k, P)
        return PeriodProfile(p, pi, e1p, e1, PeriodCase.D_ODD_REPEATED, k, m)
    k = mult_order(params.b, P)
    m = _val_power_minus_one(params.b, k, P)
    if m < e1:
        raise InternalMismatch(f"v_P(b^k - 1) = {m} < e_1 = {e1} in characteristic 2")
    if m > e1:
        return PeriodProfile(p, pi, e1p, e1, PeriodCase.E_CHAR2_REPEATED, k, m)
    process, j = _char2_process(params, P, e1, k, upto)
    prof = PeriodProfile(
        p, pi, e1p, e1, PeriodCase.E_CHAR2_REPEATED, k, m, process, j, upto,
        _char2_c_values(params, P, e1, k, upto),
    )
    for i, v in enumerate(prof.c_values, start=2):
        if prof.e_prime(i) != min((2**i - 1) * e1, v):
            raise InternalMismatch(f"e_{i}' disagrees between the c_i recursion and the g_i process")
    return prof


def measured_e(params: SeqParams, P: Poly, i: int) -> int:
    """e_i measured directly as v_P(F_n) with n = p^(i-1) alpha(P)."""
    P = _prime(params, P)
    n = params.spec.p ** (i - 1) * rank_prime(params, P)
    return _valuation_doubling(lambda M: [fib_pair_at(params, n, M)[0].rep], P)


def measured_e_prime(params: SeqParams, P: Poly, i: int) -> int:
    """e_i' measured directly as v_P(U^n - I) with n = p^(i-1) pi(P)."""
    P = _prime(params, P)
    n = params.spec.p ** (i - 1) * period_prime(params, P)
    return _valuation_doubling(_unipotent_part(params, n), P)


# -- prime powers ----------------------------------------------------------------


def _ladder_index(step, e: int) -> int:
    i = 1
    while step(i) < e:
        i += 1
    return i


def _horizon(p: int, e: int) -> int:
    t = 0
    while p**t < e:
        t += 1
    return max(3, t + 2)


@lru_cache(maxsize=8192)
def lift_rank(params: SeqParams, P: Poly, e: int) -> int:
    """alpha(P^e)."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    P = _prime(params, P)
    spec = params.spec
    if params.delta_is_zero:
        return spec.p
    if params.ratio_in_Fq:
        m = ratio_order(params)
        Pe = P**e

        def vanishes(n):
            return fib_pair_at(params, n, Pe)[0].is_zero()

        if not vanishes(m):
            raise InternalMismatch(f"F_{m} is not 0 mod {P}^{e}")
        return order_descent(m, vanishes)
    rp = rank_profile(params, P)
    return rp.alpha_at(_ladder_index(rp.e, e))


@lru_cache(maxsize=8192)
def lift_period(params: SeqParams, P: Poly, e: int) -> int:
    """pi(P^e)."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    P = _prime(params, P)
    spec = params.spec
    if params.constants_only:
        bound = _constant_period_bound(params)
        Pe = P**e

        def is_identity(n):
            f0, f1 = fib_pair_at(params, n, Pe)
            return f0.is_zero() and f1.is_one()

        if not is_identity(bound):
            raise InternalMismatch(f"U^{bound} is not I mod {P}^{e}")
        return order_descent(bound, is_identity)
    pp = period_profile(params, P, _horizon(spec.p, e))
    return spec.p ** (_ladder_index(pp.e_prime, e) - 1) * pp.pi_P


# -- composite moduli ----------------------------------------------------------


@dataclass(frozen=True)
class PrimePowerResult:
    P: Poly
    e: int
    alpha: int
    pi: int


@dataclass(frozen=True)
class FullReport:
    M: Poly
    factorization: Factorization
    per_prime: tuple[PrimePowerResult, ...]
    alpha: int
    pi: int
    beta: int
    ord_minus_b: int
    lcm_factor: int


def report(params: SeqParams, M: Poly) -> FullReport:
    """alpha, pi, beta of M from its factorization, with the beta laws checked."""
    if M.deg < 1:
        raise ValueError("M must have degree >= 1")
    params.require_coprime(M)
    fac = factor_poly(M)
    per_prime = tuple(
        PrimePowerResult(P, e, lift_rank(params, P, e), lift_period(params, P, e)) for P, e in fac.parts
    )
    alpha = lcm(*(r.alpha for r in per_prime))
    pi = lcm(*(r.pi for r in per_prime))
    if pi % alpha:
        raise InternalMismatch(f"alpha = {alpha} does not divide pi = {pi}")
    beta = pi // alpha
    minus_b = -params.b
    ord_mb = mult_order(minus_b, M)
    base = lcm(alpha, ord_mb)
    if pi % base or pi // base not in (1, 2):
        raise InternalMismatch(f"pi = {pi} is not (1 or 2) * lcm(alpha, ord(-b)) = {base}")
    if (2 * ord_mb) % beta:
        raise InternalMismatch(f"beta = {beta} does not divide 2 ord(-b) = {2 * ord_mb}")
    if mult_order(_scalar_at(params, alpha, M), M) != beta:
        raise InternalMismatch("beta differs from the order of the scalar U^alpha")
    return FullReport(M, fac, per_prime, alpha, pi, beta, ord_mb, pi // base)


def beta_bound_check(params: SeqParams, P: Poly, k: int, e: int) -> bool:
    """Whether beta(P) <= beta(P^e) <= p^(k+1) beta(P) holds (hypotheses are enforced)."""
    P = _prime(params, P)
    if params.delta_is_zero or params.ratio_in_Fq:
        raise PreconditionViolated("needs Delta != 0 and a^2/b not in F_q")
    if k < 1:
        raise PreconditionViolated("k must be >= 1")
    p = params.spec.p
    rp = rank_profile(params, P)
    pp = period_profile(params, P)
    if rp.e1 > p**k * pp.e1p:
        raise PreconditionViolated(f"e_1/e_1' = {rp.e1}/{pp.e1p} exceeds p^k = {p**k}")
    if e <= rp.e(k + 2):
        raise PreconditionViolated(f"e = {e} must exceed e_(k+2) = {rp.e(k + 2)}")
    beta_P = period_prime(params, P) // rank_prime(params, P)
    beta_Pe = lift_period(params, P, e) // lift_rank(params, P, e)
    return beta_P <= beta_Pe <= p ** (k + 1) * beta_P


__all__ = [
    "CaseTag",
    "PrimeCase",
    "Rule",
    "Special",
    "PeriodCase",
    "RankProfile",
    "PeriodProfile",
    "PrimePowerResult",
    "FullReport",
    "classify",
    "rank_prime",
    "period_prime",
    "ratio_order",
    "rank_profile",
    "period_profile",
    "measured_e",
    "measured_e_prime",
    "lift_rank",
    "lift_period",
    "report",
    "beta_bound_check",
    "INFINITY",
]
