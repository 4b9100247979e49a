import random
from math import comb

import pytest

from tricong.modmath import (
    ExactDivisionError,
    NotAUnitError,
    QuadExtElem,
    Residue,
    RingMismatchError,
    binom_mod,
    exact_div_p,
    inv,
    is_prime,
    legendre_symbol,
    make_ring,
    p_adic_valuation,
    pow_mod,
    primes_between,
    qx_pow,
)

PRIMES_TO_199 = primes_between(5, 199)


def test_primes_between():
    assert primes_between(5, 31) == [5, 7, 11, 13, 17, 19, 23, 29, 31]
    assert primes_between(10, 4) == []
    assert all(is_prime(p) for p in PRIMES_TO_199)
    assert not any(is_prime(n) for n in (0, 1, 4, 9, 91, 561, 2 ** 32 + 1))


def test_make_ring_tables():
    ring = make_ring(5, 2)
    assert ring.modulus == 25
    assert ring.fact == [1, 1, 2, 6, 24]
    # Wilson: (p-1)! = -1 mod p
    assert make_ring(7, 1).fact[6] == 6
    for n in range(5):
        assert ring.fact[n] * ring.inv_fact[n] % 25 == 1


@pytest.mark.parametrize("p,M", [(9, 1), (4, 2), (2, 3), (3, 1), (5, 0), (5, 9)])
def test_make_ring_rejects(p, M):
    with pytest.raises(ValueError):
        make_ring(p, M)


def test_inv_examples():
    assert inv(make_ring(5, 3).residue(9)).value == 14
    assert inv(make_ring(7, 2).residue(1)).value == 1
    with pytest.raises(NotAUnitError):
        inv(make_ring(5, 2).residue(5))


def test_inv_round_trip_and_euler():
    rng = random.Random(7)
    for p, M in [(5, 2), (13, 3), (97, 2)]:
        ring = make_ring(p, M)
        phi = p ** (M - 1) * (p - 1)
        for _ in range(25):
            a = ring.residue(rng.randrange(1, ring.modulus))
            if a.value % p == 0:
                continue
            assert (a * inv(a)).value == 1
            assert inv(inv(a)) == a
            assert pow_mod(a, phi).value == 1


def test_pow_mod_examples():
    ring = make_ring(5, 2)
    assert pow_mod(ring.residue(2), 4).value == 16
    assert pow_mod(ring.residue(3), 4).value == 6
    assert pow_mod(ring.residue(0), 0).value == 1
    with pytest.raises(ValueError):
        pow_mod(ring.residue(2), -1)


def test_exact_div_p():
    r51 = make_ring(5, 1)
    assert exact_div_p(50, 1, r51).value == 0
    assert exact_div_p(125, 3, r51).value == 1
    with pytest.raises(ExactDivisionError):
        exact_div_p(7, 1, r51)
    # residue form: precision drops by t
    hi = make_ring(5, 3).residue(50)
    out = exact_div_p(hi, 1)
    assert out.ring == make_ring(5, 2) and out.value == 10
    with pytest.raises(RingMismatchError):
        exact_div_p(hi, 1, make_ring(5, 3))


def test_ring_mismatch_rejected():
    a = make_ring(5, 2).residue(3)
    b = make_ring(5, 3).residue(3)
    c = make_ring(7, 2).residue(3)
    for other in (b, c):
        with pytest.raises(RingMismatchError):
            a + other
        with pytest.raises(RingMismatchError):
            a * other


def test_legendre_symbol_brute_force():
    for p in PRIMES_TO_199:
        squares = {x * x % p for x in range(1, p)}
        for a in range(p):
            expect = 0 if a == 0 else (1 if a in squares else -1)
            assert legendre_symbol(a, p) == expect
    assert legendre_symbol(4, 7) == 1
    assert legendre_symbol(3, 7) == -1
    assert legendre_symbol(14, 7) == 0


def test_legendre_symbol_multiplicative():
    rng = random.Random(11)
    for p in (7, 31, 101, 199):
        for _ in range(50):
            a, b = rng.randrange(1, p), rng.randrange(1, p)
            assert legendre_symbol(a * b, p) == legendre_symbol(a, p) * legendre_symbol(b, p)


def test_binom_mod_examples():
    v = binom_mod(6, 3, make_ring(5, 2))
    assert (v.val, v.unit.value) == (0, 20)
    v = binom_mod(8, 4, make_ring(5, 2))
    assert (v.val, v.unit.value) == (1, 14)
    v = binom_mod(4, 2, make_ring(5, 3))
    assert (v.val, v.unit.value) == (0, 6)
    with pytest.raises(ValueError):
        binom_mod(3, 5, make_ring(5, 2))
    with pytest.raises(ValueError):
        binom_mod(25, 3, make_ring(5, 2))


@pytest.mark.parametrize("p,M", [(5, 3), (13, 2), (31, 4), (97, 2)])
def test_binom_mod_against_exact(p, M):
    ring = make_ring(p, M)
    for n in range(2 * p - 1):
        for k in range(n + 1):
            got = binom_mod(n, k, ring)
            expect = comb(n, k)
            assert got.residue().value == expect % ring.modulus
            assert got.val == p_adic_valuation(expect, p)
            assert got.unit.value % p != 0


def test_qx_pow_small_cases():
    ring = make_ring(7, 2)
    x = ring.residue(5)
    w = QuadExtElem(ring.residue(1), ring.residue(1), x)
    sq = qx_pow(w, 2)
    assert sq.a0.value == (1 + 5) % 49 and sq.a1.value == 2
    pure = QuadExtElem(ring.residue(0), ring.residue(1), ring.residue(3))
    assert qx_pow(pure, 2).a0.value == 3 and qx_pow(pure, 2).a1.value == 0


def test_qx_pow_symmetric_sum_has_no_w_component():
    for p, M in [(5, 1), (13, 2)]:
        ring = make_ring(p, M)
        for xv in range(0, p, 2):
            x = ring.residue(xv)
            up = QuadExtElem(ring.residue(1), ring.residue(1), x)
            um = QuadExtElem(ring.residue(1), ring.residue(-1), x)
            for k in range(0, 2 * p):
                s = qx_pow(up, k) + qx_pow(um, k)
                assert s.a1.value == 0


def test_qx_conjugation_kills_w():
    ring = make_ring(11, 2)
    x = ring.residue(7)
    e = QuadExtElem(ring.residue(4), ring.residue(9), x)
    prod = e * e.conjugate()
    assert prod.a1.value == 0
    assert prod.a0.value == (4 * 4 - 9 * 9 * 7) % ring.modulus


def test_quad_mixing_different_x_rejected():
    ring = make_ring(7, 2)
    a = QuadExtElem(ring.residue(1), ring.residue(1), ring.residue(2))
    b = QuadExtElem(ring.residue(1), ring.residue(1), ring.residue(3))
    with pytest.raises(RingMismatchError):
        a * b


def test_residue_int_coercion():
    ring = make_ring(5, 2)
    a = ring.residue(7)
    assert (a + 20).value == 2
    assert (3 * a).value == 21
    assert (1 - a).value == (1 - 7) % 25
    assert a == 32  # same class mod 25
