import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primeforms.arith import (
    PrimeCandidate,
    ext_gcd,
    inverse_mod,
    is_prime,
    jacobi,
    legendre,
    pow_mod,
    primes_between,
    reciprocity_product,
    sqrt_mod,
)


def trial_division(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def brute_legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


SMALL_ODD_PRIMES = [p for p in range(3, 1000) if trial_division(p)]


@pytest.mark.parametrize("base,exp,mod,expected", [(2, 10, 1000, 24), (7, 0, 13, 1), (5, 3, 5, 0)])
def test_pow_mod_examples(base, exp, mod, expected):
    assert pow_mod(base, exp, mod) == expected


def test_pow_mod_matches_repeated_multiplication():
    rng = random.Random(5)
    for _ in range(200):
        b, e, m = rng.randrange(-50, 50), rng.randrange(0, 30), rng.randrange(1, 500)
        acc = 1 % m
        for _ in range(e):
            acc = acc * b % m
        assert pow_mod(b, e, m) == acc


def test_pow_mod_rejects_zero_modulus():
    with pytest.raises(ValueError):
        pow_mod(2, 3, 0)


def test_ext_gcd_examples():
    g, s, t = ext_gcd(240, 46)
    assert g == 2 and s * 240 + t * 46 == 2
    assert ext_gcd(0, 7) == (7, 0, 1)
    assert ext_gcd(1, 1)[0] == 1


@given(st.integers(-10**12, 10**12), st.integers(-10**12, 10**12))
def test_ext_gcd_bezout(a, b):
    import math

    g, s, t = ext_gcd(a, b)
    assert g == math.gcd(a, b)
    assert s * a + t * b == g


def test_inverse_mod():
    assert inverse_mod(3, 7) * 3 % 7 == 1
    with pytest.raises(ValueError):
        inverse_mod(4, 8)


def test_is_prime_examples():
    assert is_prime(2)
    assert not is_prime(561)
    assert is_prime(104729)


def test_is_prime_matches_trial_division():
    assert [n for n in range(20000) if is_prime(n)] == [n for n in range(20000) if trial_division(n)]


@pytest.mark.parametrize("n,expected", [
    (2**61 - 1, True),                 # Mersenne prime
    (2**63 - 25, True),                # largest prime below 2^63
    (3215031751, False),               # strong pseudoprime to bases 2, 3, 5, 7
    (3825123056546413051, False),      # strong pseudoprime to bases up to 23
    ((2**31 - 1) * (2**31 - 1), False),
])
def test_is_prime_hard_cases(n, expected):
    assert is_prime(n) is expected


def test_is_prime_refuses_beyond_deterministic_range():
    # strong pseudoprime to every base 2..37
    with pytest.raises(ValueError):
        is_prime(318665857834031151167461)


def test_prime_candidate():
    assert int(PrimeCandidate(13)) == 13
    with pytest.raises(ValueError):
        PrimeCandidate(15)


@pytest.mark.parametrize("a,p,expected", [(2, 7, 1), (14, 7, 0), (-7, 11, 1)])
def test_legendre_examples(a, p, expected):
    assert legendre(a, p) == expected


@pytest.mark.parametrize("bad", [2, 9, 15, 1])
def test_legendre_rejects_non_odd_primes(bad):
    with pytest.raises(ValueError):
        legendre(3, bad)


def test_legendre_matches_brute_force():
    for p in SMALL_ODD_PRIMES[:40]:
        for a in range(-p, 2 * p):
            assert legendre(a, p) == brute_legendre(a, p)


def test_legendre_multiplicative():
    rng = random.Random(1)
    for p in SMALL_ODD_PRIMES:
        for _ in range(5):
            a, b = rng.randrange(1, p), rng.randrange(1, p)
            assert legendre(a, p) * legendre(b, p) == legendre(a * b, p)


def test_euler_criterion_agreement():
    for p in SMALL_ODD_PRIMES[:60]:
        for a in range(1, p):
            r = pow_mod(a, (p - 1) // 2, p)
            assert r in (1, p - 1)
            assert legendre(a, p) == (1 if r == 1 else -1)


@pytest.mark.parametrize("p,q,expected", [(3, 7, -1), (5, 13, 1), (17, 101, 1)])
def test_reciprocity_examples(p, q, expected):
    assert reciprocity_product(p, q) == expected
    assert brute_legendre(p, q) * brute_legendre(q, p) == expected


def test_reciprocity_exhaustive_below_1000():
    for i, p in enumerate(SMALL_ODD_PRIMES):
        for q in SMALL_ODD_PRIMES[i + 1:]:
            sign = (-1) ** (((p - 1) // 2) * ((q - 1) // 2))
            assert reciprocity_product(p, q) == sign


def test_reciprocity_rejects_equal():
    with pytest.raises(ValueError):
        reciprocity_product(7, 7)


@pytest.mark.parametrize("a,n,expected", [(1, 9, 1), (2, 15, 1), (0, 9, 0)])
def test_jacobi_examples(a, n, expected):
    assert jacobi(a, n) == expected


def test_jacobi_rejects_even():
    with pytest.raises(ValueError):
        jacobi(3, 10)


def test_jacobi_matches_legendre_on_primes():
    rng = random.Random(7)
    primes = [p for p in range(3, 10**4) if trial_division(p)]
    for p in primes:
        for _ in range(100):
            a = rng.randrange(-10**6, 10**6)
            assert jacobi(a, p) == legendre(a, p)


def test_jacobi_is_product_over_factors():
    # (2|15) = (2|3)(2|5) and friends, against brute force Legendre symbols
    for n, factors in [(15, (3, 5)), (21, (3, 7)), (45, (3, 3, 5)), (1001, (7, 11, 13))]:
        for a in range(-30, 30):
            expected = 1
            for f in factors:
                expected *= brute_legendre(a, f)
            assert jacobi(a, n) == expected


@pytest.mark.parametrize("a,p,expected", [(4, 11, 2), (2, 7, 3), (3, 5, None), (0, 13, 0)])
def test_sqrt_mod_examples(a, p, expected):
    assert sqrt_mod(a, p) == expected


def test_sqrt_mod_rejects_composite():
    with pytest.raises(ValueError):
        sqrt_mod(4, 15)


def test_sqrt_mod_round_trip_below_1000():
    for p in SMALL_ODD_PRIMES:
        squares = {x * x % p for x in range(p)}
        for a in range(p):
            x = sqrt_mod(a, p)
            if a in squares:
                assert x is not None and pow_mod(x, 2, p) == a and x <= p - x
            else:
                assert x is None


@settings(max_examples=200)
@given(st.sampled_from([10**9 + 7, 998244353, 2**61 - 1, 1000000009]), st.integers(1, 10**18))
def test_sqrt_mod_large_primes(p, x):
    # 998244353 = 119 * 2^23 + 1 exercises the long Tonelli-Shanks loop
    a = x * x % p
    r = sqrt_mod(a, p)
    assert r is not None and r * r % p == a and r <= p - r


def test_primes_between_matches_trial_division():
    assert primes_between(0, 3000) == [n for n in range(3001) if trial_division(n)]
    assert primes_between(1000, 1100) == [n for n in range(1000, 1101) if trial_division(n)]
    assert primes_between(10, 5) == []


def test_primes_between_segments_agree():
    assert primes_between(2, 200000, segment=1000) == primes_between(2, 200000)
