"""Modular additive bases over Z/p^2 with O(1) multiplicities.

For a prime p congruent to 3 or 5 mod 8, the seed set

    B_p = union over c in {3, 4, 6} of { x + 2p*(c*x^2 mod p) : 0 <= x < p }

lies in [0, 2p^2 - p - 1] and has at most 3p elements.  Its pair sums are
flat (no integer has more than 18 ordered representations) and nearly
cover a residue system: for every 0 <= n < p^2 at least one of
n-p, n, n+p, n+p^2-p, n+p^2, n+p^2+p is a pair sum.  Shifting and reducing,

    A_p = (B_p + {-p, 0, p}) mod p^2

is an additive basis of Z/(p^2): every residue r has sigma(r) ordered
representations a + a' = r (mod p^2) with 1 <= sigma(r) <= 594, the ceiling
594 = 6 * 9 * 18 coming from at most 6 integer lifts of a residue into the
pair-sum interval, 9 shift pairs, and the seed-set bound of 18.

Membership never needs the enumerated set.  y is in B_p only if the
generator slot x = y mod p reproduces it under one of the three
coefficients, and r is in A_p exactly when one of the at most 12 integers
r + s*p^2 + t*p (s in {-1,0,1,2}, t in {-1,0,1}) lies in B_p.  Both tests
run in time polynomial in log p.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .errors import CapacityError
from .primes import is_prime

SEED_COEFFICIENTS = (3, 4, 6)

# Proven multiplicity ceilings; exhaustive verification re-derives the actual
# per-prime maxima, which are usually far smaller.
SEED_SIGMA_BOUND = 18
RESIDUE_SIGMA_BOUND = 594

# Largest p accepted by the residue-by-residue verifiers by default.
EXHAUSTIVE_CAP = 200

_LIFTS = (-1, 0, 1, 2)
_SHIFTS = (-1, 0, 1)


def _check_p(p: int) -> None:
    if p < 3 or p % 8 not in (3, 5) or not is_prime(p):
        raise ValueError(f"p must be a prime congruent to 3 or 5 mod 8, got {p}")


def _b_member(p: int, y: int) -> bool:
    # assumes p already validated
    if y < 0 or y > 2 * p * p - p - 1:
        return False
    z = y % p
    zz = z * z % p
    return any(y == z + 2 * p * (c * zz % p) for c in SEED_COEFFICIENTS)


def b_membership(p: int, y: int) -> bool:
    """Whether y lies in the seed set B_p.

    The generator slot is forced (x = y mod p), so the test is three
    constant-size recomputations; integers outside [0, 2p^2 - p - 1] are
    rejected outright.
    """
    _check_p(p)
    return _b_member(p, y)


def b_enumerate(p: int) -> list[int]:
    """All of B_p, sorted.  At most 3p values; coefficient branches may collide."""
    _check_p(p)
    out = set()
    for c in SEED_COEFFICIENTS:
        for x in range(p):
            out.add(x + 2 * p * (c * x * x % p))
    return sorted(out)


def b_verify(p: int, cap: int = EXHAUSTIVE_CAP) -> tuple[int, bool]:
    """Exhaustive seed-set check: (sup of pair-sum multiplicity, cover flag).

    The cover flag is true when for every 0 <= n < p^2 at least one of the
    six numbers n-p, n, n+p, n+p^2-p, n+p^2, n+p^2+p is a sum of two seed
    elements.
    """
    _check_p(p)
    if p > cap:
        raise CapacityError(f"exhaustive seed-set check capped at p <= {cap}, got {p}")
    seed = b_enumerate(p)
    counts: dict[int, int] = {}
    for u in seed:
        for v in seed:
            s = u + v
            counts[s] = counts.get(s, 0) + 1
    sums = set(counts)
    pp = p * p
    offsets = (-p, 0, p, pp - p, pp, pp + p)
    six_ok = all(any(n + off in sums for off in offsets) for n in range(pp))
    return max(counts.values()), six_ok


def _ap_member(p: int, r: int) -> bool:
    # assumes p validated and 0 <= r < p*p
    pp = p * p
    for s in _LIFTS:
        base = r + s * pp
        for t in _SHIFTS:
            if _b_member(p, base + t * p):
                return True
    return False


def ap_membership(p: int, r: int) -> bool:
    """Whether residue r lies in A_p, via the (at most 12) lifted candidates."""
    _check_p(p)
    pp = p * p
    if not 0 <= r < pp:
        raise ValueError(f"residue must lie in [0, {pp}), got {r}")
    return _ap_member(p, r)


def ap_enumerate(p: int) -> list[int]:
    """Sorted residues of A_p = (B_p + {-p, 0, p}) mod p^2; at most 9p values."""
    _check_p(p)
    pp = p * p
    out = {(y + t) % pp for y in b_enumerate(p) for t in (-p, 0, p)}
    return sorted(out)


def ap_sigma(p: int, r: int) -> int:
    """Ordered count of pairs (a, a') in A_p^2 with a + a' = r (mod p^2).

    Iterates the enumerated set against the candidate membership test, so
    every call cross-checks the two routes into A_p.
    """
    _check_p(p)
    pp = p * p
    if not 0 <= r < pp:
        raise ValueError(f"residue must lie in [0, {pp}), got {r}")
    return sum(1 for a in ap_enumerate(p) if _ap_member(p, (r - a) % pp))


@dataclass(frozen=True)
class ModularVerifyReport:
    """Result of an exhaustive sigma census of A_p over all p^2 residues."""

    p: int
    min_sigma: int
    max_sigma: int
    covers_all: bool
    b_sup_sigma: int
    six_cover_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.covers_all
            and self.min_sigma >= 1
            and self.max_sigma <= RESIDUE_SIGMA_BOUND
            and self.b_sup_sigma <= SEED_SIGMA_BOUND
            and self.six_cover_ok
        )


def ap_verify(p: int, cap: int = EXHAUSTIVE_CAP) -> ModularVerifyReport:
    """Residue-by-residue sigma census of A_p, plus the embedded seed-set check."""
    _check_p(p)
    if p > cap:
        raise CapacityError(f"exhaustive census capped at p <= {cap}, got {p}")
    pp = p * p
    residues = ap_enumerate(p)
    if p <= 64:
        counts = [0] * pp
        for a in residues:
            for b in residues:
                counts[(a + b) % pp] += 1
        lo, hi = min(counts), max(counts)
    else:
        import numpy as np

        arr = np.asarray(residues, dtype=np.int64)
        sums = (arr[:, None] + arr[None, :]) % pp
        binned = np.bincount(sums.ravel(), minlength=pp)
        lo, hi = int(binned.min()), int(binned.max())
    sup_b, six_ok = b_verify(p, cap)
    return ModularVerifyReport(
        p=p,
        min_sigma=lo,
        max_sigma=hi,
        covers_all=lo >= 1,
        b_sup_sigma=sup_b,
        six_cover_ok=six_ok,
    )


class ModularBasisSet:
    """Immutable handle on A_p: fast membership plus a lazy residue cache.

    The cache is built once behind a lock on first use; membership answers
    are identical with or without it.
    """

    __slots__ = ("p", "modulus", "coefficients", "_residue_set", "_residues", "_lock")

    def __init__(self, p: int):
        _check_p(p)
        self.p = p
        self.modulus = p * p
        self.coefficients = SEED_COEFFICIENTS
        self._residues: tuple[int, ...] | None = None
        self._residue_set: frozenset[int] | None = None
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"ModularBasisSet(p={self.p})"

    @property
    def cached_residues(self) -> tuple[int, ...] | None:
        return self._residues

    def residues(self) -> tuple[int, ...]:
        if self._residues is None:
            with self._lock:
                if self._residues is None:
                    res = tuple(ap_enumerate(self.p))
                    self._residue_set = frozenset(res)
                    self._residues = res
        return self._residues

    def residue_set(self) -> frozenset[int]:
        self.residues()
        assert self._residue_set is not None
        return self._residue_set

    def contains(self, r: int) -> bool:
        if not 0 <= r < self.modulus:
            raise ValueError(f"residue must lie in [0, {self.modulus}), got {r}")
        cached = self._residue_set
        if cached is not None:
            return r in cached
        return _ap_member(self.p, r)
