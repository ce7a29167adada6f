"""Deterministic prime machinery driving the basis construction.

The construction consumes a canonical sequence of primes p_1 < p_2 < ... with
p_k congruent to 3 mod 8, chosen from a growth schedule f by the rule

    p_k = least prime q = 3 (mod 8) with q >= f(k) and q > p_{k-1}.

Two schedules are supported: f(k) = k, and f(k) = ceil(exp(c*k)) for a
positive rational c.  The exponential ceiling is evaluated with exact
rational arithmetic (series plus a rigorous tail bound), so the sequence is
bit-identical across platforms; no verdict in this module ever depends on
floating point or randomness.

Primality uses a strong-pseudoprime test with fixed witness tiers whose
correctness is proven for all n below IS_PRIME_LIMIT (about 3.3 * 10^24,
comfortably past 2^64).  Larger inputs raise CapacityError instead of
degrading to a probabilistic answer.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError

# (threshold, witnesses): the witness set decides primality for all n below
# the threshold.  Tiers keep small inputs cheap.
_MR_TIERS = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (9080191, (31, 73)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (4759123141, (2, 7, 61)),
    (1122004669633, (2, 13, 23, 1662803)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318665857834031151167461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3317044064679887385961981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)

IS_PRIME_LIMIT = _MR_TIERS[-1][0]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

LINEAR = "linear"
EXPONENTIAL = "exp"


def is_prime(n: int) -> bool:
    """Deterministic primality verdict for 0 <= n < IS_PRIME_LIMIT.

    Raises CapacityError beyond the proven witness range.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= IS_PRIME_LIMIT:
        raise CapacityError(
            f"deterministic primality is only proven below {IS_PRIME_LIMIT}, got {n}"
        )
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    witnesses: tuple[int, ...] = ()
    for threshold, tier in _MR_TIERS:
        if n < threshold:
            witnesses = tier
            break
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _base_primes(limit: int) -> list[int]:
    """Primes up to limit by a plain sieve (sieving helper, small limits only)."""
    if limit < 2:
        return []
    flags = bytearray(limit + 1)
    out = []
    for q in range(2, limit + 1):
        if not flags[q]:
            out.append(q)
            flags[q * q :: q] = b"\x01" * len(range(q * q, limit + 1, q))
    return out


def least_p3mod8_in_doubling(N: int) -> int | None:
    """Smallest prime p in [N, 2N] with p = 3 (mod 8), or None if there is none.

    Sieves the whole interval, so the cost is O(N log log N); intervals like
    [20, 40] genuinely contain no such prime.
    """
    if N < 2:
        raise ValueError(f"interval start must be >= 2, got {N}")
    lo, hi = N, 2 * N
    size = hi - lo + 1
    composite = bytearray(size)
    for q in _base_primes(math.isqrt(hi)):
        start = max(q * q, ((lo + q - 1) // q) * q)
        if start > hi:
            continue
        step_count = (hi - start) // q + 1
        composite[start - lo :: q] = b"\x01" * step_count
    for v in range(lo, hi + 1):
        if v % 8 == 3 and v >= 3 and not composite[v - lo]:
            return v
    return None


def next_p3mod8_above(x: int) -> int:
    """Least prime q > x with q = 3 (mod 8); total by Dirichlet.

    Scans the residue class with is_prime, so it inherits the deterministic
    range limit (CapacityError past IS_PRIME_LIMIT).
    """
    q = x + 1 + (3 - (x + 1)) % 8
    while not is_prime(q):
        q += 8
    return q


def _exp_ceil(x: Fraction) -> int:
    """ceil(e**x) for rational x >= 0, exactly.

    Partial sums of the exponential series with the rigorous remainder bound
    2 * x^m / m! (valid once m + 1 > 2x).  e**x is irrational for rational
    x != 0, so some precision always separates the ceiling.
    """
    if x < 0:
        raise ValueError("growth exponent must be nonnegative")
    if x == 0:
        return 1
    m = max(8, 2 * int(x) + 4)
    while True:
        term = Fraction(1)
        total = Fraction(1)
        for i in range(1, m):
            term *= x / i
            total += term
        tail = 2 * term * x / m
        lo_ceil = math.ceil(total)
        hi_ceil = math.ceil(total + tail)
        if m + 1 > 2 * x and lo_ceil == hi_ceil:
            return lo_ceil
        m *= 2


@dataclass(frozen=True)
class GrowthSpec:
    """Growth schedule f for the canonical prime sequence.

    regime "linear" gives f(k) = k; regime "exp" gives f(k) = ceil(exp(c*k))
    with positive rational c (default 1/2).  f is monotone nondecreasing.
    """

    regime: str = LINEAR
    c: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        if self.regime not in (LINEAR, EXPONENTIAL):
            raise ValueError(f"unknown growth regime {self.regime!r}")
        if self.regime == EXPONENTIAL and self.c <= 0:
            raise ValueError("exponential growth needs a positive rate")

    @classmethod
    def linear(cls) -> "GrowthSpec":
        return cls(regime=LINEAR)

    @classmethod
    def exponential(cls, c: Fraction = Fraction(1, 2)) -> "GrowthSpec":
        return cls(regime=EXPONENTIAL, c=Fraction(c))

    def value(self, k: int) -> int:
        """f(k) for k >= 1."""
        if k < 1:
            raise ValueError(f"schedule index must be >= 1, got {k}")
        if self.regime == LINEAR:
            return k
        return _exp_ceil(self.c * k)


class PrimeSequence:
    """Append-only canonical prime sequence for one growth schedule.

    Deterministic: two sequences with equal GrowthSpec agree on every index.
    Extension takes the internal lock; reads of already-built entries are
    safe from any thread.
    """

    def __init__(self, growth: GrowthSpec):
        self.growth = growth
        self._primes: list[int] = []
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._primes)

    def __getitem__(self, i: int) -> int:
        return self._primes[i]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(self._primes)

    def extend_to(self, count: int) -> "PrimeSequence":
        """Grow to at least count entries; never changes existing entries."""
        if count <= len(self._primes):
            return self
        with self._lock:
            while len(self._primes) < count:
                k = len(self._primes) + 1
                prev = self._primes[-1] if self._primes else 2
                start = max(self.growth.value(k), prev + 1)
                self._primes.append(next_p3mod8_above(start - 1))
        return self
