import math

import numpy as np
import pytest
from sympy import divisors, jacobi_symbol

from utils.arith_core import (
    classify_power, discrete_log, is_power_of, is_squarefree, iter_primes, jacobi, mul_order_index,
    mult_functions, prime_basis, primorial, quadratic_table, sieve_primes, true_powers, von_mangoldt,
    von_mangoldt_table,
)
from utils.errors import PreconditionError


@pytest.mark.parametrize("limit, expected", [
    (10, [2, 3, 5, 7]),
    (1, []),
    (13, [2, 3, 5, 7, 11, 13]),
])
def test_sieve_primes(limit, expected):
    assert sieve_primes(limit) == expected


def test_iter_primes_matches_sieve_across_segments():
    assert list(iter_primes(0, 1000, segment_size=37)) == sieve_primes(1000)
    assert list(iter_primes(13, 50, segment_size=8)) == [p for p in sieve_primes(50) if p > 13]


def test_primorials():
    basis = prime_basis(13)
    assert primorial(basis) == 30030 == basis.m_x
    assert primorial(basis, exclude_divisors_of=2) == 15015 == basis.m2_x
    assert primorial(basis, exclude_divisors_of=10) == 3003
    assert basis.pi_x == 6
    with pytest.raises(PreconditionError):
        primorial(basis, exclude_divisors_of=1)


@pytest.mark.parametrize("a, m, expected", [(1, 9, 1), (73, 3, 1), (2, 15, 1), (0, 3, 0), (3, 7, -1)])
def test_jacobi_examples(a, m, expected):
    assert jacobi(a, m) == expected


def test_jacobi_agrees_with_sympy():
    for m in range(1, 200, 2):
        for a in range(-20, 60):
            assert jacobi(a, m) == jacobi_symbol(a, m)


@pytest.mark.parametrize("m", [0, -3, 10])
def test_jacobi_rejects_bad_modulus(m):
    with pytest.raises(PreconditionError):
        jacobi(1, m)


def test_quadratic_table_is_read_only_legendre():
    table = quadratic_table(7)
    assert table.tolist() == [0, 1, 1, -1, 1, -1, -1]
    with pytest.raises(ValueError):
        table[1] = 0


@pytest.mark.parametrize("g, p, expected", [(2, 7, (3, 2)), (2, 3, (2, 1)), (2, 13, (12, 1)), (-2, 7, (6, 1))])
def test_mul_order_index(g, p, expected):
    assert tuple(mul_order_index(g, p)) == expected


@pytest.mark.parametrize("g", [2, 3, -2, 10])
def test_mul_order_is_minimal(g):
    for p in sieve_primes(101):
        if g % p == 0:
            continue
        l, i = mul_order_index(g, p)
        assert l * i == p - 1
        assert pow(g, l, p) == 1
        assert all(pow(g, d, p) != 1 for d in divisors(l) if d < l)


def test_jacobi_matches_euler_criterion_for_small_primes():
    for p in sieve_primes(97)[1:]:
        table = quadratic_table(p)
        for a in range(p):
            euler = pow(a, (p - 1) // 2, p)
            expected = -1 if euler == p - 1 else euler
            assert jacobi(a, p) == expected
            assert table[a] == expected


def test_mul_order_index_rejects_divisor():
    with pytest.raises(PreconditionError):
        mul_order_index(10, 5)
    with pytest.raises(PreconditionError):
        mul_order_index(2, 9)


@pytest.mark.parametrize("n, expected", [
    (15015, (32, -1, 5760, 15015, 5)),
    (12, (6, 0, 4, 6, 2)),
    (1, (1, 1, 1, 1, 0)),
])
def test_mult_functions(n, expected):
    assert tuple(mult_functions(n)) == expected


def test_is_squarefree():
    assert is_squarefree(15015)
    assert not is_squarefree(12)


def test_von_mangoldt_table_matches_scalar():
    table = von_mangoldt_table(200)
    for n in range(201):
        assert table[n] == pytest.approx(von_mangoldt(n))
    assert table[8] == pytest.approx(math.log(2))
    assert table[12] == 0


@pytest.mark.parametrize("n, g, expected", [(49, 2, (True, False)), (64, 2, (True, True)), (73, 2, (False, False))])
def test_classify_power(n, g, expected):
    assert tuple(classify_power(n, g)) == expected


def exponent_search(g, limit):
    powers, k = set(), 0
    while abs(g) ** k <= limit:
        if g ** k > 0:
            powers.add(g ** k)
        k += 1
    return powers


@pytest.mark.parametrize("g, limit", [
    (2, 10**5), (3, 10**5), (-2, 10**5), (10, 10**5),
    pytest.param(2, 10**6, marks=pytest.mark.slow),
    pytest.param(-3, 10**6, marks=pytest.mark.slow),
])
def test_classify_power_matches_exponent_search(g, limit):
    squares = {k * k for k in range(1, math.isqrt(limit) + 1)}
    powers = exponent_search(g, limit)
    for n in range(1, limit + 1):
        assert tuple(classify_power(n, g)) == (n in squares, n in powers)


def test_powers_of_negative_base():
    assert true_powers(-2, 64) == [1, 4, 16, 64]
    assert is_power_of(1, 3)
    assert is_power_of(16, -2)
    assert not is_power_of(8, -2)


@pytest.mark.parametrize("p, root, n, expected", [(7, 3, 2, 2), (7, 3, 1, 0), (5, 2, 3, 3)])
def test_discrete_log(p, root, n, expected):
    assert discrete_log(p, root, n) == expected


def test_discrete_log_preconditions():
    with pytest.raises(PreconditionError):
        discrete_log(7, 2, 3)  # 2 는 mod 7 원시근이 아님
    with pytest.raises(PreconditionError):
        discrete_log(7, 3, 14)


def test_discrete_log_full_cycle():
    p, root = 31, 3
    for e in range(p - 1):
        assert discrete_log(p, root, pow(root, e, p)) == e
    assert np.unique([discrete_log(p, root, n) for n in range(1, p)]).size == p - 1
