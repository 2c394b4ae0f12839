import pytest
from hypothesis import given
import hypothesis.strategies as st

from fibpoly.algebra import Poly, field_spec
from fibpoly.errors import BNotCoprime, NotIrreducible, PreconditionViolated
from fibpoly.fibcore import SeqParams, oracle
from fibpoly.quotient import mult_order
from fibpoly.rankperiod import (
    INERT_TAGS,
    SPLIT_TAGS,
    CaseTag,
    PeriodCase,
    Rule,
    Special,
    beta_bound_check,
    classify,
    lift_period,
    lift_rank,
    measured_e,
    measured_e_prime,
    period_prime,
    period_profile,
    rank_prime,
    rank_profile,
    ratio_order,
    report,
)

from conftest import irreducibles, params_and_prime

F2, F3, F5 = field_spec(2), field_spec(3), field_spec(5)
x2, x3, x5 = Poly.x(F2), Poly.x(F3), Poly.x(F5)
ONE2, ONE3 = Poly.one(F2), Poly.one(F3)

EX1 = SeqParams(x2**5 + x2**3 + x2, x2**2 + 1)
P1 = x2**2 + x2 + 1
EX2 = SeqParams(x2**12 + x2**9 + x2**8 + x2**7 + x2**6 + x2**5 + x2**4 + x2, x2**3 + x2)
P2 = x2**4 + x2**3 + 1
PR = x3 + 2


def gap_family(j):
    return SeqParams(x3 + 1, 2 * x3**2 + x3 + 2 + PR**j)


# -- fixtures from the worked examples ------------------------------------------


def test_classify_examples():
    assert classify(EX1, P1).tag is CaseTag.P2_A_DIVISIBLE
    assert classify(SeqParams(ONE2, x2), P1).tag is CaseTag.P2_TRACE_NONZERO
    assert classify(SeqParams(x3, ONE3), x3).tag is CaseTag.QR
    with pytest.raises(BNotCoprime):
        classify(EX1, x2 + 1)
    with pytest.raises(NotIrreducible):
        classify(EX1, x2**2 + x2)


def test_prime_values():
    assert rank_prime(EX1, P1) == 2 and period_prime(EX1, P1) == 6
    assert rank_prime(gap_family(4), PR) == 3 and period_prime(gap_family(4), PR) == 3
    assert rank_prime(SeqParams(x3, ONE3), x3) == 2
    assert period_prime(SeqParams(x2, ONE2), x2) == 2


def test_ratio_order_examples():
    assert ratio_order(SeqParams(x3, x3**2)) == 4
    assert ratio_order(SeqParams(Poly.zero(F3), x3**2)) == 2
    # over F_5, a = x, b = x^2 gives Delta = 5x^2 = 0, outside the precondition
    with pytest.raises(PreconditionViolated):
        ratio_order(SeqParams(x5, x5**2))
    with pytest.raises(PreconditionViolated):
        ratio_order(EX1)


def test_rank_profile_examples():
    rp = rank_profile(EX1, P1)
    assert (rp.alpha_P, rp.e1, rp.rule) == (2, 2, Rule.GEOMETRIC_SUM)
    assert rp.ladder(6) == [2 ** (i + 1) - 2 for i in range(1, 7)]
    rp = rank_profile(gap_family(4), PR)
    assert (rp.alpha_P, rp.e1) == (3, 4)
    for P in (x3 + 1, x3 + 2, x3**2 + 1):
        rp = rank_profile(SeqParams(x3, x3**2), P)
        assert rp.e1 is None and rp.special is Special.RATIO_CONSTANT


def test_period_profile_example1():
    pp = period_profile(EX1, P1)
    assert pp.case is PeriodCase.E_CHAR2_REPEATED
    assert (pp.k, pp.m, pp.process, pp.j) == (3, 2, (2, 0), 3)
    assert pp.ladder(6) == [2] + [3 * 2 ** (i - 1) for i in range(2, 7)]


def test_period_profile_example2():
    pp = period_profile(EX2, P2)
    rp = rank_profile(EX2, P2)
    assert pp.case is PeriodCase.E_CHAR2_REPEATED
    assert (pp.k, pp.m, pp.e1p, rp.e1) == (3, 1, 1, 1)
    assert set(pp.process) == {1} and pp.j is None
    assert pp.ladder(6) == rp.ladder(6) == [2**i - 1 for i in range(1, 7)]


@pytest.mark.parametrize("j", [4, 5, 6])
def test_period_profile_gap_family(j):
    pp = period_profile(gap_family(j), PR)
    assert pp.case is PeriodCase.B_E1P_LT_E1 and (pp.e1p, pp.e1) == (3, j)
    assert pp.ladder(5) == [3**i for i in range(1, 6)]


def test_lift_examples():
    assert lift_rank(EX1, P1, 3) == 4 and lift_rank(EX1, P1, 2) == 2
    assert lift_period(EX1, P1, 7) == 24 and lift_period(EX1, P1, 2) == 6
    fib2 = SeqParams(ONE2, ONE2)
    assert lift_period(fib2, P1, 1) == oracle(fib2, P1).pi == 3
    dz = SeqParams(2 * x3, 2 * x3**2)  # a^2 + 4b = 12x^2 = 0 over F_3
    assert dz.delta_is_zero
    assert [lift_rank(dz, x3 + 1, e) for e in (1, 2, 5)] == [3, 3, 3]
    with pytest.raises(ValueError):
        lift_rank(EX1, P1, 0)


def test_report_examples():
    fib = SeqParams(x2, ONE2)
    r = report(fib, x2 * (x2 + 1))
    assert (r.alpha, r.pi, r.beta) == (6, 6, 1)
    r = report(EX1, P1)
    assert (r.alpha, r.pi, r.beta) == (2, 6, 3)
    r = report(SeqParams(x3**2 + 1, Poly.const(F3, 2)), (x3**2 + x3 + 2) ** 2 * x3)
    assert r.beta in (1, 2)
    with pytest.raises(BNotCoprime):
        report(EX1, x2 + 1)


def test_beta_bound_examples():
    assert beta_bound_check(EX1, P1, 1, rank_profile(EX1, P1).e(3) + 1)
    assert beta_bound_check(EX2, P2, 1, rank_profile(EX2, P2).e(3) + 1)
    assert beta_bound_check(gap_family(4), PR, 1, rank_profile(gap_family(4), PR).e(3) + 1)
    with pytest.raises(PreconditionViolated):
        beta_bound_check(EX1, P1, 1, 3)
    with pytest.raises(PreconditionViolated):
        beta_bound_check(SeqParams(x3, x3**2), x3 + 1, 1, 100)


def test_constants_only_needs_special_path():
    with pytest.raises(PreconditionViolated):
        period_profile(SeqParams(ONE2, ONE2), P1)


# -- properties against the brute-force oracle --------------------------------


@given(params_and_prime(), st.integers(1, 4))
def test_lift_matches_oracle(pair, e):
    params, P = pair
    o = oracle(params, P**e)
    assert (lift_rank(params, P, e), lift_period(params, P, e)) == (o.alpha, o.pi)


@given(params_and_prime(), st.integers(1, 5))
def test_step_law(pair, e):
    params, P = pair
    p = params.spec.p
    for f in (lift_rank, lift_period):
        assert f(params, P, e + 1) // f(params, P, e) in (1, p)
        assert f(params, P, e + 1) % f(params, P, e) == 0


@given(params_and_prime())
def test_divisibility_frame(pair):
    params, P = pair
    q, d, p = params.spec.q, P.deg, params.spec.p
    tag = classify(params, P).tag
    alpha, pi = rank_prime(params, P), period_prime(params, P)
    ord_mb = mult_order(-params.b, P)
    if tag in SPLIT_TAGS:
        assert (q**d - 1) % alpha == 0
    elif tag in INERT_TAGS:
        assert (q**d + 1) % alpha == 0
        assert ((q**d + 1) * ord_mb) % pi == 0
    elif tag is CaseTag.DELTA_ZERO_MOD_P_ODD:
        assert alpha == p
    else:
        assert alpha == 2 and pi == 2 * mult_order(params.b, P)
    if tag in SPLIT_TAGS + INERT_TAGS:
        # with a repeated root pi carries a factor p, which never divides q^{2d} - 1
        assert (q ** (2 * d) - 1) % pi == 0
    assert pi % ord_mb == 0


@given(params_and_prime(max_deg_P=2))
def test_profiles_match_measured_ladders(pair):
    params, P = pair
    if params.delta_is_zero or params.ratio_in_Fq:
        return
    rp = rank_profile(params, P)
    pp = period_profile(params, P, 4)
    for i in range(1, 5):
        assert rp.e(i) == measured_e(params, P, i)
        assert pp.e_prime(i) == measured_e_prime(params, P, i)
        assert pp.e_prime(i) <= rp.e(i)


@given(params_and_prime(max_deg_P=2), st.data())
def test_report_invariants(pair, data):
    params, P = pair
    spec = params.spec
    Q = data.draw(irreducibles(spec))
    M = P ** data.draw(st.integers(1, 3))
    if params.coprime_to(Q):
        M = M * Q
    r = report(params, M)
    assert r.alpha * r.beta == r.pi
    assert (2 * r.ord_minus_b) % r.beta == 0
    assert r.lcm_factor in (1, 2)
    o = oracle(params, M) if M.deg <= 6 else None
    if o is not None:
        assert (o.alpha, o.pi, o.beta) == (r.alpha, r.pi, r.beta)
