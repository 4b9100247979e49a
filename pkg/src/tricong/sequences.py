"""Generalized central trinomial coefficients and their exact oracles.

T_n(b, c) is the coefficient of x^n in (x^2 + b x + c)^n.  Three independent
routes are provided: a modular three-term recurrence (the fast path), the
closed multinomial sum evaluated modularly, and exact big integers.  Tests
require all three to agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .modmath import Residue, ResidueRing

# case tags relative to a prime p (total and mutually exclusive when p | d
# is excluded, since p | b and p | c together would force p | d)
P_DIVIDES_C = "p_divides_c"
P_DIVIDES_B = "p_divides_b"
GENERIC = "generic"


@dataclass(frozen=True)
class TrinomialParams:
    """The pair (b, c) with discriminant d = b^2 - 4c != 0."""

    b: int
    c: int
    d: int = field(init=False)

    def __post_init__(self):
        d = self.b * self.b - 4 * self.c
        if d == 0:
            raise ValueError(f"(b, c)=({self.b}, {self.c}) has zero discriminant")
        object.__setattr__(self, "d", d)

    def classify(self, p: int) -> str:
        """Theorem case of (b, c) at p; requires p coprime to d."""
        if self.d % p == 0:
            raise ValueError(f"p={p} divides d={self.d}; no case applies")
        if self.c % p == 0:
            return P_DIVIDES_C
        if self.b % p == 0:
            return P_DIVIDES_B
        return GENERIC


@dataclass
class SequenceWindow:
    """Consecutive sequence values T_0..T_{len-1} in one ring."""

    values: list[Residue]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n: int) -> Residue:
        return self.values[n]

    def ints(self) -> list[int]:
        return [r.value for r in self.values]


def _trinomial_ints(b: int, c: int, ring: ResidueRing, length: int) -> list[int]:
    # (n+1) T_{n+1} = (2n+1) b T_n - n d T_{n-1}; every divisor n+1 < p is a unit
    mod = ring.modulus
    d = (b * b - 4 * c) % mod
    bm = b % mod
    out = [1 % mod]
    if length > 1:
        out.append(bm)
    for n in range(1, length - 1):
        t = ((2 * n + 1) * bm * out[n] - n * d * out[n - 1]) % mod
        out.append(t * ring.inv_small(n + 1) % mod)
    return out


def trinomial_run(params: TrinomialParams, ring: ResidueRing, length: int) -> SequenceWindow:
    """T_0..T_{length-1} mod p^M via the three-term recurrence; length <= p."""
    if length < 0:
        raise ValueError("negative length")
    if length > ring.p:
        raise ValueError(f"length {length} > p = {ring.p}: recurrence would divide by p")
    vals = _trinomial_ints(params.b, params.c, ring, length)
    return SequenceWindow([Residue(v, ring) for v in vals])


def trinomial_direct(n: int, params: TrinomialParams, ring: ResidueRing) -> Residue:
    """T_n mod p^M from the closed sum over C(n,2k) C(2k,k) b^(n-2k) c^k; n < p."""
    if n < 0:
        raise ValueError("negative index")
    if n >= ring.p:
        raise ValueError(f"n={n} >= p={ring.p}: table binomials unavailable")
    mod = ring.modulus
    fact, inv_fact = ring.fact, ring.inv_fact
    b = params.b % mod
    c = params.c % mod
    total = 0
    for k in range(n // 2 + 1):
        binoms = fact[n] * inv_fact[2 * k] % mod * inv_fact[n - 2 * k] % mod
        binoms = binoms * fact[2 * k] % mod * inv_fact[k] % mod * inv_fact[k] % mod
        total = (total + binoms * pow(b, n - 2 * k, mod) % mod * pow(c, k, mod)) % mod
    return Residue(total, ring)


def trinomial_exact(n: int, b: int, c: int) -> int:
    """T_n(b, c) as an exact integer; n capped at desk scale."""
    if n < 0:
        raise ValueError("negative index")
    if n > 2000:
        raise ValueError(f"n={n} beyond supported range")
    return sum(
        comb(n, 2 * k) * comb(2 * k, k) * b ** (n - 2 * k) * c ** k
        for k in range(n // 2 + 1)
    )


def trinomial_exact_run(b: int, c: int, length: int) -> list[int]:
    """T_0..T_{length-1} as exact integers via the recurrence (divisions checked)."""
    d = b * b - 4 * c
    out = [1]
    if length > 1:
        out.append(b)
    for n in range(1, length - 1):
        num = (2 * n + 1) * b * out[n] - n * d * out[n - 1]
        q, r = divmod(num, n + 1)
        if r:
            raise ArithmeticError(f"recurrence not integral at n={n}, b={b}, c={c}")
        out.append(q)
    return out


def legendre_poly_value(n: int, x: int) -> int:
    """P_n(2x+1) as an exact integer, via T_n(2x+1, x^2+x)."""
    return trinomial_exact(n, 2 * x + 1, x * x + x)


def legendre_poly_series(n: int, x: int) -> int:
    """P_n(2x+1) from the defining sum sum_k C(n,k) C(n+k,k) x^k (oracle route)."""
    return sum(comb(n, k) * comb(n + k, k) * x ** k for k in range(n + 1))


def harmonic_mod(n: int, m: int, ring: ResidueRing) -> Residue:
    """H_n^(m) = sum_{k<=n} k^(-m) mod p^M; H_0 = 0; n < p."""
    if n < 0:
        raise ValueError("negative index")
    if n >= ring.p:
        raise ValueError(f"n={n} >= p={ring.p}: 1/p is not defined here")
    mod = ring.modulus
    total = 0
    for k in range(1, n + 1):
        total = (total + pow(ring.inv_small(k), m, mod)) % mod
    return Residue(total, ring)
