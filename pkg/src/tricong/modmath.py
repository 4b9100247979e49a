"""Exact arithmetic in Z/p^M and its quadratic extensions.

Everything runs on plain Python integers; the thin wrapper types exist to
make modulus mixing impossible and to keep divisions by p explicit.  A
quantity that will be divided by p^t must be computed in a ring with
exponent M+t and divided with ``exact_div_p``; divisibility failures are
hard errors, never silent truncation.
"""

from __future__ import annotations

MAX_EXPONENT = 8


class RingMismatchError(ValueError):
    """Arithmetic attempted between residues of different rings."""


class NotAUnitError(ValueError):
    """Inversion of an element divisible by p."""


class ExactDivisionError(ArithmeticError):
    """A supposedly exact division by a power of p failed."""


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (the 12 smallest prime bases cover n < 3.3e24)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi], ascending."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(hi ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, hi + 1, i)))
    return [n for n in range(max(lo, 2), hi + 1) if sieve[n]]


def p_adic_valuation(n: int, p: int, cap: int | None = None) -> int:
    """v_p(n); returns cap (or a huge sentinel) for n = 0."""
    if n == 0:
        return cap if cap is not None else 10 ** 9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
        if cap is not None and v >= cap:
            return cap
    return v


class ResidueRing:
    """Arithmetic context for Z/p^M with unit factorials 0..p-1 tabulated.

    Immutable after construction apart from a lazily grown factorial cache
    (append-only, used by :func:`binom_mod`).
    """

    __slots__ = ("p", "M", "modulus", "fact", "inv_fact", "_fv_unit", "_fv_val")

    def __init__(self, p: int, M: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"modulus base {p} is not prime")
        if p < 5:
            raise ValueError(f"prime {p} < 5 is not supported")
        if not 1 <= M <= MAX_EXPONENT:
            raise ValueError(f"exponent M={M} outside [1, {MAX_EXPONENT}]")
        self.p = p
        self.M = M
        self.modulus = p ** M
        fact = [1] * p
        for n in range(1, p):
            fact[n] = fact[n - 1] * n % self.modulus
        self.fact = fact
        inv_fact = [1] * p
        inv_fact[p - 1] = pow(fact[p - 1], -1, self.modulus)
        for n in range(p - 1, 0, -1):
            inv_fact[n - 1] = inv_fact[n] * n % self.modulus
        self.inv_fact = inv_fact
        # factorial with p-powers stripped: m! = p^_fv_val[m] * (unit with
        # _fv_unit[m] as its reduction mod p^M)
        self._fv_unit = [1]
        self._fv_val = [0]

    def residue(self, v: int) -> "Residue":
        return Residue(v % self.modulus, self)

    def inv_small(self, n: int) -> int:
        """Inverse of 1 <= n <= p-1 via the factorial tables."""
        return self.inv_fact[n] * self.fact[n - 1] % self.modulus

    def factorial_valued(self, m: int) -> tuple[int, int]:
        """m! as (unit mod p^M, exponent of p), extending the cache as needed."""
        units, vals, p, mod = self._fv_unit, self._fv_val, self.p, self.modulus
        while len(units) <= m:
            i = len(units)
            v = 0
            u = i
            while u % p == 0:
                u //= p
                v += 1
            units.append(units[-1] * u % mod)
            vals.append(vals[-1] + v)
        return units[m], vals[m]

    def __eq__(self, other):
        if not isinstance(other, ResidueRing):
            return NotImplemented
        return self.p == other.p and self.M == other.M

    def __hash__(self):
        return hash((self.p, self.M))

    def __repr__(self):
        return f"ResidueRing({self.p}^{self.M})"


_RING_CACHE: dict[tuple[int, int], ResidueRing] = {}


def make_ring(p: int, M: int) -> ResidueRing:
    """Construct (or reuse) the ring Z/p^M.  Rejects composite p, p < 5, bad M."""
    key = (p, M)
    ring = _RING_CACHE.get(key)
    if ring is None:
        ring = ResidueRing(p, M)
        _RING_CACHE[key] = ring
    return ring


class Residue:
    """An integer reduced into [0, p^M), tagged with its ring."""

    __slots__ = ("value", "ring")

    def __init__(self, value: int, ring: ResidueRing):
        self.value = value % ring.modulus
        self.ring = ring

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, int):
            return other % self.ring.modulus
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value + v, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value - v, self.ring)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(v - self.value, self.ring)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value * v, self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.ring)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.ring.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ring.p, self.ring.M))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value} mod {self.ring.p}^{self.ring.M})"


def inv(a: Residue) -> Residue:
    """Multiplicative inverse mod p^M; rejects arguments divisible by p."""
    if a.value % a.ring.p == 0:
        raise NotAUnitError(f"{a.value} is divisible by {a.ring.p}")
    return Residue(pow(a.value, -1, a.ring.modulus), a.ring)


def pow_mod(a: Residue, e: int) -> Residue:
    """a^e mod p^M for e >= 0 (0^0 = 1)."""
    if e < 0:
        raise ValueError("negative exponent; invert explicitly")
    return Residue(pow(a.value, e, a.ring.modulus), a.ring)


def exact_div_p(v, t: int, ring: ResidueRing | None = None) -> Residue:
    """Divide by p^t exactly, dropping t digits of precision.

    ``v`` is either a plain integer (then ``ring`` names the result ring and
    v must be divisible by p^t) or a Residue living at precision M+t (the
    result lands at precision M).  A failed divisibility check is a hard
    error: it signals a wrong formula or a precision bug upstream.
    """
    if t < 0:
        raise ValueError("negative power")
    if isinstance(v, Residue):
        src = v.ring
        if ring is None:
            if src.M - t < 1:
                raise ValueError(f"cannot drop {t} digits from precision {src.M}")
            ring = make_ring(src.p, src.M - t)
        elif ring.p != src.p or src.M != ring.M + t:
            raise RingMismatchError(f"{src} does not sit t={t} above {ring}")
        value = v.value
    else:
        if ring is None:
            raise ValueError("ring required when dividing a plain integer")
        value = v
    pt = ring.p ** t
    if value % pt != 0:
        raise ExactDivisionError(f"{value} is not divisible by {ring.p}^{t}")
    return ring.residue(value // pt)


def legendre_symbol(a: int, p: int) -> int:
    """(a/p) in {-1, 0, 1} via Euler's criterion; p must be an odd prime."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p={p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    e = pow(a, (p - 1) // 2, p)
    if e == 1:
        return 1
    if e == p - 1:
        return -1
    raise ValueError(f"p={p} is not prime: Euler criterion gave {e}")


class ValuedResidue:
    """unit * p^val with the unit known mod p^M.

    ``exact_zero`` flags a true zero (never produced by binomials); otherwise
    the unit is coprime to p.
    """

    __slots__ = ("unit", "val", "exact_zero")

    def __init__(self, unit: Residue, val: int, exact_zero: bool = False):
        self.unit = unit
        self.val = val
        self.exact_zero = exact_zero

    def residue(self) -> Residue:
        """The represented value reduced into the unit's ring."""
        if self.exact_zero:
            return self.unit.ring.residue(0)
        ring = self.unit.ring
        return ring.residue(pow(ring.p, self.val, ring.modulus) * self.unit.value)

    def __repr__(self):
        if self.exact_zero:
            return "ValuedResidue(0)"
        return f"ValuedResidue({self.unit.ring.p}^{self.val} * {self.unit.value})"


def binom_mod(n: int, k: int, ring: ResidueRing) -> ValuedResidue:
    """C(n, k) as p^val * unit mod p^M, for 0 <= k <= n < p^2.

    Factorials are taken with their p-multiples stripped, so the unit part
    stays invertible; for n < p this degenerates to table lookups with
    val = 0.
    """
    if k < 0 or k > n:
        raise ValueError(f"binomial C({n},{k}) out of range")
    if n >= ring.p ** 2:
        raise ValueError(f"n={n} >= p^2; not supported")
    un, vn = ring.factorial_valued(n)
    uk, vk = ring.factorial_valued(k)
    um, vm = ring.factorial_valued(n - k)
    unit = un * pow(uk * um % ring.modulus, -1, ring.modulus) % ring.modulus
    return ValuedResidue(Residue(unit, ring), vn - vk - vm)


class QuadExtElem:
    """a0 + a1*w with w^2 = x; all three components share one ring."""

    __slots__ = ("a0", "a1", "x")

    def __init__(self, a0: Residue, a1: Residue, x: Residue):
        if not (a0.ring == a1.ring == x.ring):
            raise RingMismatchError("components of a quadratic element must share a ring")
        self.a0 = a0
        self.a1 = a1
        self.x = x

    def _check(self, other: "QuadExtElem"):
        if self.a0.ring != other.a0.ring:
            raise RingMismatchError(f"{self.a0.ring} vs {other.a0.ring}")
        if self.x.value != other.x.value:
            raise RingMismatchError("elements live in extensions with different x")

    def __add__(self, other):
        self._check(other)
        return QuadExtElem(self.a0 + other.a0, self.a1 + other.a1, self.x)

    def __sub__(self, other):
        self._check(other)
        return QuadExtElem(self.a0 - other.a0, self.a1 - other.a1, self.x)

    def __mul__(self, other):
        self._check(other)
        mod = self.a0.ring.modulus
        a0, a1, b0, b1 = self.a0.value, self.a1.value, other.a0.value, other.a1.value
        c0 = (a0 * b0 + a1 * b1 % mod * self.x.value) % mod
        c1 = (a0 * b1 + a1 * b0) % mod
        ring = self.a0.ring
        return QuadExtElem(Residue(c0, ring), Residue(c1, ring), self.x)

    def conjugate(self) -> "QuadExtElem":
        return QuadExtElem(self.a0, -self.a1, self.x)

    def __eq__(self, other):
        if not isinstance(other, QuadExtElem):
            return NotImplemented
        return (
            self.a0 == other.a0
            and self.a1 == other.a1
            and self.x.value == other.x.value
        )

    def __repr__(self):
        return f"({self.a0.value} + {self.a1.value}w | w^2={self.x.value})"


def qx_pow(base: QuadExtElem, e: int) -> QuadExtElem:
    """base^e by square-and-multiply in the quadratic extension (e >= 0)."""
    if e < 0:
        raise ValueError("negative exponent")
    ring = base.a0.ring
    acc = QuadExtElem(ring.residue(1), ring.residue(0), base.x)
    sq = base
    while e:
        if e & 1:
            acc = acc * sq
        e >>= 1
        if e:
            sq = sq * sq
    return acc
