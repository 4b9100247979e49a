import pytest

from tricong.modmath import ExactDivisionError, make_ring, primes_between
from tricong.special_sums import (
    fermat_quotient,
    finite_polylog,
    half_polylog2,
    qp_delta,
    s2_sum,
)

SMALL_PRIMES = primes_between(5, 31)


def test_fermat_quotient_examples():
    assert fermat_quotient(2, 5, 2).value == 3
    assert fermat_quotient(3, 5, 2).value == 16
    assert fermat_quotient(1, 13, 3).value == 0
    with pytest.raises(ValueError):
        fermat_quotient(10, 5, 2)


def test_fermat_quotient_square_law():
    # q(b^2) = 2 q(b) + p q(b)^2, exactly as p-adic numbers
    for p in SMALL_PRIMES:
        mod2 = p * p
        for b in (2, 3, 7, 12, -5):
            if b % p == 0:
                continue
            qb = fermat_quotient(b, p, 2).value
            qb2 = fermat_quotient(b * b, p, 2).value
            assert qb2 % mod2 == (2 * qb + p * qb * qb) % mod2


def test_fermat_quotient_precision():
    q = fermat_quotient(2, 7, 3)
    assert q.source_precision == 4
    assert q.residue.ring == make_ring(7, 3)


def test_qp_delta_examples():
    assert qp_delta(4, 4, 7, 2).value == 0
    assert qp_delta(0, 9, 7, 2).value == 0
    assert qp_delta(1, 2, 5, 2).value == (-6) % 25


def test_qp_delta_quotient_identity():
    for p in SMALL_PRIMES:
        mod = p ** 3
        for x in range(1, 9):
            for y in range(1, 9):
                if (x * y * (x - y)) % p == 0:
                    continue
                lhs = qp_delta(x, y, p, 3).value
                qy = fermat_quotient(y, p, 3).value
                qx = fermat_quotient(x, p, 3).value
                qxy = fermat_quotient(x - y, p, 3).value
                assert lhs == (-y * qy + x * qx + (y - x) * qxy) % mod


def test_finite_polylog_examples():
    assert finite_polylog(2, make_ring(5, 1).residue(1)).value == 0
    assert finite_polylog(1, make_ring(5, 2).residue(1)).value == 0
    assert finite_polylog(2, make_ring(7, 2).residue(0)).value == 0
    with pytest.raises(ValueError):
        finite_polylog(3, make_ring(5, 1).residue(1))


def test_half_polylog2_examples():
    assert half_polylog2(make_ring(5, 1).residue(1)).value == 0
    assert half_polylog2(make_ring(7, 3).residue(0)).value == 0
    assert half_polylog2(make_ring(13, 1).residue(1)).value == 0


def test_s2_sum_examples():
    assert s2_sum(1, 5, 1).value == 0
    assert s2_sum(0, 5, 1).value == 0
    got = s2_sum(2, 7, 1).value
    assert got == half_polylog2(make_ring(7, 1).residue(2)).value


def test_s2_sum_input_precision_guard():
    x_low = make_ring(7, 2).residue(3)
    with pytest.raises(ValueError):
        s2_sum(x_low, 7, 2)  # would need precision >= 4
    x_ok = make_ring(7, 4).residue(3)
    assert s2_sum(x_ok, 7, 2).source_precision == 4


def test_s2_matches_half_polylog_everywhere():
    # residues and non-residues alike, for every x mod p
    for p in primes_between(5, 199):
        ring = make_ring(p, 1)
        for x in range(p):
            assert s2_sum(x, p, 1).value == half_polylog2(ring.residue(x)).value, (p, x)


def test_bivariate_polylog_congruence():
    # L1(x/y) = -Q(x,y)/y - p (L2(1 - x/y) - q(y) Q(x,y)/y)  mod p^2
    for p in [*SMALL_PRIMES, 89, 97]:
        ring = make_ring(p, 2)
        mod = ring.modulus
        for x in range(1, 31):
            for y in range(1, 31):
                if (x * y) % p == 0:
                    continue
                inv_y = pow(y, -1, mod)
                t = ring.residue(x * inv_y)
                lhs = finite_polylog(1, t).value
                Q = qp_delta(x, y, p, 2).value
                qy = fermat_quotient(y, p, 2).value
                l2 = finite_polylog(2, ring.residue(1 - x * inv_y)).value
                rhs = (-inv_y * Q - p * ((l2 - qy * Q % mod * inv_y) % mod)) % mod
                assert lhs == rhs, (p, x, y)


def test_one_minus_a_polylog_congruence():
    # L1(1-a) = -Q(a,1) - p L2(a)  mod p^2
    for p in primes_between(5, 97):
        ring = make_ring(p, 2)
        mod = ring.modulus
        for a in range(p):
            lhs = finite_polylog(1, ring.residue(1 - a)).value
            Q = qp_delta(a, 1, p, 2).value
            l2 = finite_polylog(2, ring.residue(a)).value
            assert lhs == (-Q - p * l2) % mod, (p, a)


def test_polylog2_bracket_congruence():
    # L2(x) = (1/p)((1+(x-1)^p-x^p)/p - sum (1-x)^i/i - H_{p-1})  mod p
    for p in primes_between(5, 97):
        ring1 = make_ring(p, 1)
        ring2 = make_ring(p, 2)
        mod2 = ring2.modulus
        for x in range(p):
            lhs = finite_polylog(2, ring1.residue(x)).value
            num = (1 + pow(x - 1, p, mod2 * p) - pow(x, p, mod2 * p)) % (mod2 * p)
            assert num % p == 0
            q = num // p
            inner = finite_polylog(1, ring2.residue(1 - x)).value
            from tricong.sequences import harmonic_mod

            h = harmonic_mod(p - 1, 1, ring2).value
            bracket = (q - inner - h) % mod2
            assert bracket % p == 0
            assert lhs == bracket // p % p, (p, x)
