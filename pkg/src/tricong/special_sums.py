"""Fermat quotients, finite polylogarithms, and the quadratic-extension sum.

Each quantity here hides one or more exact divisions by p, so computations
run at elevated precision and the result records how much precision backed
it (``source_precision``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .modmath import (
    ExactDivisionError,
    QuadExtElem,
    Residue,
    RingMismatchError,
    make_ring,
)


@dataclass(frozen=True)
class PadicQuantity:
    """A residue together with the working precision that produced it."""

    residue: Residue
    source_precision: int

    @property
    def value(self) -> int:
        return self.residue.value


def fermat_quotient(a: int, p: int, M: int) -> PadicQuantity:
    """q_p(a) = (a^(p-1) - 1)/p mod p^M, computed at precision M+1; p must not divide a."""
    if a % p == 0:
        raise ValueError(f"q_{p}({a}) undefined: p divides a")
    high = p ** (M + 1)
    num = (pow(a, p - 1, high) - 1) % high
    if num % p != 0:
        raise ExactDivisionError("Fermat's little theorem violated; p composite?")
    ring = make_ring(p, M)
    return PadicQuantity(ring.residue(num // p), M + 1)


def qp_delta(x: int, y: int, p: int, M: int) -> PadicQuantity:
    """Q_p(x, y) = ((y-x)^p + x^p - y^p)/p mod p^M.

    The numerator is divisible by p for all integers x, y (binomial theorem);
    a failure here is an internal error, not a caller mistake.
    """
    high = p ** (M + 1)
    num = (pow(y - x, p, high) + pow(x, p, high) - pow(y, p, high)) % high
    if num % p != 0:
        raise ExactDivisionError(f"Q_{p}({x},{y}) numerator not divisible by p")
    ring = make_ring(p, M)
    return PadicQuantity(ring.residue(num // p), M + 1)


def finite_polylog(m: int, x: Residue) -> Residue:
    """The truncated polylogarithm sum_{k=1}^{p-1} x^k / k^m in x's ring; m in {1, 2}."""
    if m not in (1, 2):
        raise ValueError(f"order m={m} unsupported (only 1 and 2 are used)")
    ring = x.ring
    mod = ring.modulus
    total = 0
    xp = 1
    xv = x.value
    for k in range(1, ring.p):
        xp = xp * xv % mod
        total = (total + xp * pow(ring.inv_small(k), m, mod)) % mod
    return Residue(total, ring)


def half_polylog2(x: Residue) -> Residue:
    """The half-range sum sum_{k=1}^{(p-1)/2} x^k / k^2 in x's ring."""
    ring = x.ring
    mod = ring.modulus
    total = 0
    xp = 1
    xv = x.value
    for k in range(1, (ring.p - 1) // 2 + 1):
        xp = xp * xv % mod
        ik = ring.inv_small(k)
        total = (total + xp * ik % mod * ik) % mod
    return Residue(total, ring)


def s2_sum(x, p: int, M: int) -> PadicQuantity:
    """The order-2 extension sum built from (1 +- sqrt(x))^p and (1 +- sqrt(x))^i / i.

    Work happens in the quadratic extension of Z/p^(M+2) with w^2 = x, which
    treats quadratic residues and non-residues uniformly.  Two exact
    p-divisions drop the result to precision M.  ``x`` is a plain integer
    (used verbatim) or a Residue at precision >= M+2; every intermediate
    symmetric combination is asserted to have zero w-component.
    """
    work = make_ring(p, M + 2)
    if isinstance(x, Residue):
        if x.ring.p != p:
            raise RingMismatchError(f"x lives mod {x.ring.p}, expected {p}")
        if x.ring.M < M + 2:
            raise ValueError(
                f"x carries precision {x.ring.M}; the two p-divisions need >= {M + 2}"
            )
        xv = x.value % work.modulus
    else:
        xv = x % work.modulus
    mod = work.modulus
    one = work.residue(1)
    xr = work.residue(xv)
    u_plus = QuadExtElem(one, one, xr)
    u_minus = QuadExtElem(one, work.residue(-1), xr)

    pw_p, pw_m = u_plus, u_minus
    B = 0
    for i in range(1, p):
        if (pw_p.a1.value + pw_m.a1.value) % mod != 0:
            raise ExactDivisionError("w-component survived a symmetric power sum")
        B = (B + (pw_p.a0.value + pw_m.a0.value) * work.inv_small(i)) % mod
        pw_p = pw_p * u_plus
        pw_m = pw_m * u_minus
    # loop leaves pw_p = (1+w)^p, pw_m = (1-w)^p
    if (pw_p.a1.value + pw_m.a1.value) % mod != 0:
        raise ExactDivisionError("w-component survived in (1+-w)^p")
    A = (2 - pw_p.a0.value - pw_m.a0.value) % mod
    if A % p != 0:
        raise ExactDivisionError("2 - (1-w)^p - (1+w)^p not divisible by p")
    inner = (A // p - B) % (mod // p)
    if inner % p != 0:
        raise ExactDivisionError("the outer sum is not divisible by p")
    ring = make_ring(p, M)
    return PadicQuantity(ring.residue(2 * (inner // p)), M + 2)
