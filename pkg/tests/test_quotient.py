import random

import pytest
from hypothesis import given
import hypothesis.strategies as st

from fibpoly.algebra import Poly, field_spec, gcd, pow_mod
from fibpoly.errors import NotCoprime
from fibpoly.fibcore import SeqParams, fib_stream
from fibpoly.ntheory import divisors, int_factor, lcm
from fibpoly.quotient import Mat2, ResidueRing, companion, mat2_pow, mult_order, scalar_test, unit_exponent_bound

from conftest import monic, polys, specs

F2, F3 = field_spec(2), field_spec(3)


def brute_order(g, M):
    one = Poly.one(M.spec)
    h = g % M
    n = 1
    while h != one:
        h = h * g % M
        n += 1
    return n


def test_int_factor_examples():
    assert sorted(int_factor(15)) == [3, 5]
    assert int_factor(1) == []
    assert sorted(int_factor(1023)) == [3, 11, 31]
    assert sorted(int_factor(2**61 - 1)) == [2**61 - 1]
    assert sorted(int_factor(3**40 - 1)) == sorted(int_factor(3**20 - 1) + int_factor(3**20 + 1))


def test_companion_powers():
    x = Poly.x(F2)
    R = ResidueRing(x**3)
    a, b = x, Poly.one(F2)
    U = companion(a, b, R)
    assert mat2_pow(U, 1) == U
    U2 = mat2_pow(U, 2)
    assert U2 == Mat2(R(b), R(a), R(a * b), R(a * a + b))
    assert mat2_pow(U, 3).m01.rep == x**2 + 1
    assert mat2_pow(U, 0) == Mat2.identity(R)


def test_scalar_test_examples():
    x = Poly.x(F2)
    P = x**2 + x + 1
    R = ResidueRing(P)
    assert scalar_test(Mat2.identity(R)).is_one()
    assert scalar_test(companion(x, Poly.one(F2), R)) is None
    s = scalar_test(mat2_pow(companion(x**5 + x**3 + x, x**2 + 1, R), 2))
    assert s.rep == x


def test_mult_order_examples():
    x = Poly.x(F2)
    assert mult_order(Poly.one(F2), x**3 + x + 1) == 1
    assert mult_order(x**2 + 1, x**2 + x + 1) == 3
    y = Poly.x(F3)
    assert mult_order(y, y + 1) == 2
    with pytest.raises(NotCoprime):
        mult_order(y, y**2)


@given(specs, st.data())
def test_mult_order_matches_brute_force(spec, data):
    M = data.draw(monic(spec, 1, 3))
    g = data.draw(polys(spec, 4).filter(lambda g: g % M and gcd(g, M).is_one()))
    n = mult_order(g, M)
    assert n == brute_order(g, M)
    assert unit_exponent_bound(M) % n == 0
    assert pow_mod(g, n, M).is_one()
    for r in set(int_factor(n)):
        assert not pow_mod(g, n // r, M).is_one()


@given(specs, st.data())
def test_matrix_form_and_determinant(spec, data):
    M = data.draw(monic(spec, 1, 4))
    a = data.draw(polys(spec, 3))
    b = data.draw(polys(spec, 3, nonzero=True))
    params = SeqParams(a, b)
    n = data.draw(st.integers(1, 200))
    R = ResidueRing(M)
    Un = mat2_pow(companion(a, b, R), n)
    seq = fib_stream(params, M)
    terms = [next(seq) for _ in range(n + 2)]
    assert Un.m01 == terms[n] and Un.m11 == terms[n + 1]
    assert Un.m00 == R(b) * terms[n - 1] and Un.m10 == R(b) * terms[n]
    assert Un.det() == R(-b) ** n


def test_ntheory_helpers():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert lcm(4, 6, 10) == 60 and lcm() == 1
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randrange(2, 10**12)
        prod = 1
        for f in int_factor(n):
            prod *= f
        assert prod == n
