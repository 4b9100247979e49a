import random

import pytest

from tricong.modmath import make_ring, primes_between
from tricong.sequences import (
    GENERIC,
    P_DIVIDES_B,
    P_DIVIDES_C,
    TrinomialParams,
    harmonic_mod,
    legendre_poly_series,
    legendre_poly_value,
    trinomial_direct,
    trinomial_exact,
    trinomial_exact_run,
    trinomial_run,
)

# reference prefixes: central trinomial, central binomial, central Delannoy
A002426 = [1, 1, 3, 7, 19, 51, 141, 393, 1107, 3139]
A000984 = [1, 2, 6, 20, 70, 252, 924, 3432]
A001850 = [1, 3, 13, 63, 321, 1683, 8989, 48639]


def test_params_discriminant_and_cases():
    params = TrinomialParams(1, 1)
    assert params.d == -3
    assert params.classify(5) == GENERIC
    assert TrinomialParams(1, 5).classify(5) == P_DIVIDES_C
    assert TrinomialParams(5, 1).classify(5) == P_DIVIDES_B
    with pytest.raises(ValueError):
        TrinomialParams(2, 1)  # d = 0
    with pytest.raises(ValueError):
        TrinomialParams(1, 2).classify(7)  # d = -7


@pytest.mark.parametrize(
    "b,c,expect",
    [(1, 1, A002426), (2, 1, A000984), (3, 2, A001850)],
)
def test_trinomial_run_known_sequences(b, c, expect):
    ring = make_ring(199, 2)
    window = trinomial_run(TrinomialParams(b, c), ring, len(expect))
    assert window.ints() == [v % ring.modulus for v in expect]


def test_trinomial_run_rejects_long_windows():
    with pytest.raises(ValueError):
        trinomial_run(TrinomialParams(1, 1), make_ring(5, 2), 6)


def test_trinomial_direct_examples():
    ring = make_ring(11, 2)
    for b, c in [(1, 1), (3, 2), (-2, 5)]:
        params = TrinomialParams(b, c)
        assert trinomial_direct(1, params, ring).value == b % ring.modulus
        assert trinomial_direct(2, params, ring).value == (b * b + 2 * c) % ring.modulus
    assert trinomial_direct(4, TrinomialParams(1, 1), make_ring(5, 3)).value == 19
    with pytest.raises(ValueError):
        trinomial_direct(11, TrinomialParams(1, 1), ring)


def test_trinomial_exact_examples():
    assert trinomial_exact(5, 1, 1) == 51
    assert trinomial_exact(3, 3, 2) == 63
    assert trinomial_exact(6, 2, 1) == 924
    assert [trinomial_exact(n, 1, 1) for n in range(10)] == A002426
    with pytest.raises(ValueError):
        trinomial_exact(2001, 1, 1)


def test_exact_run_matches_exact():
    for b, c in [(1, 1), (3, 2), (-4, 3), (0, -1), (6, -6)]:
        run = trinomial_exact_run(b, c, 40)
        assert run == [trinomial_exact(n, b, c) for n in range(40)]


def test_three_way_agreement_random():
    rng = random.Random(2024)
    primes = primes_between(5, 199)
    for _ in range(40):
        p = rng.choice(primes)
        M = rng.randint(1, 4)
        b = rng.randint(-10, 10)
        c = rng.randint(-10, 10)
        if b * b == 4 * c:
            continue
        params = TrinomialParams(b, c)
        ring = make_ring(p, M)
        window = trinomial_run(params, ring, p)
        for n in range(0, p, max(1, p // 13)):
            direct = trinomial_direct(n, params, ring).value
            exact = trinomial_exact(n, b, c) % ring.modulus
            assert window[n].value == direct == exact


def test_sign_symmetry_in_b():
    for b, c in [(1, 1), (3, 2), (5, -1)]:
        for n in range(30):
            assert trinomial_exact(n, -b, c) == (-1) ** n * trinomial_exact(n, b, c)


def test_squared_run_satisfies_quadratic_identity():
    # T_n^2 equals the discriminant-weighted convolution, exactly
    from math import comb

    for b in range(-6, 7):
        for c in range(-6, 7):
            if b * b == 4 * c:
                continue
            d = b * b - 4 * c
            run = trinomial_exact_run(b, c, 31)
            for n in (0, 1, 2, 7, 19, 30):
                rhs = sum(
                    comb(2 * k, k) ** 2 * comb(n + k, 2 * k) * d ** (n - k) * c ** k
                    for k in range(n + 1)
                )
                assert run[n] ** 2 == rhs


def test_legendre_poly_values():
    assert legendre_poly_value(0, 12) == 1
    assert legendre_poly_value(1, 1) == 3
    assert legendre_poly_value(2, 1) == 13
    for n in range(25):
        for x in (-3, -1, 0, 1, 2, 7):
            assert legendre_poly_value(n, x) == legendre_poly_series(n, x)


def test_harmonic_mod():
    assert harmonic_mod(0, 1, make_ring(7, 2)).value == 0
    assert harmonic_mod(4, 2, make_ring(5, 1)).value == 0
    # H_4 = 25/12 vanishes mod 25
    assert harmonic_mod(4, 1, make_ring(5, 2)).value == 0
    with pytest.raises(ValueError):
        harmonic_mod(5, 1, make_ring(5, 2))


def test_wolstenholme_all_primes_to_199():
    for p in primes_between(5, 199):
        assert harmonic_mod(p - 1, 1, make_ring(p, 2)).value == 0
        assert harmonic_mod(p - 1, 2, make_ring(p, 1)).value == 0
