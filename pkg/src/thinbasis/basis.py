"""The explicit additive basis A and its query operations.

Fix a growth schedule, let p_1 < p_2 < ... be its canonical primes and
b_j = p_j^2.  Writing n in the mixed radix (b_1, b_2, ...) as digits
(n_1, ..., n_k) with nonzero top digit, n belongs to A exactly when every
digit strictly below the top lies in the modular basis of its level:
n_j in A_{p_j} for all j < k.  The top digit is unconstrained and 0 is a
member by convention.  Membership therefore costs time polynomial in the
number of digits of n.

Representation counting.  sigma(n) is the number of ordered pairs
(a, a') in A^2 with a + a' = n.  Three routes are provided:

* sigma_bruteforce: the literal scan over all splits a + (n - a).
* sigma_exact: a dynamic program over digit positions whose state is
  (carry, status_a, status_a') with status OPEN while every digit placed so
  far is a level member and FROZEN once a non-member digit occurs.  A
  non-member digit is legal only as a number's top digit, so FROZEN forces
  every later digit to zero.  Accepts when all digits of n are consumed
  with carry 0.
* sigma_bound: the analytic ceiling 2 * sum_{l<=k} b_l * prod_{j<l} M_j,
  where M_j is the exact multiplicity maximum of level j when p_j is small
  enough to census and the proven ceiling 594 otherwise.

represent(n) builds a certified pair digit by digit: at each level below
the top it picks the lexicographically smallest (a_j, a'_j) in A_j^2 with
a_j + a'_j = n_j - carry_in (mod b_j) and propagates the 0/1 addition
carry; the top digit of a absorbs the final carry.
"""

from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass

from .errors import CapacityError
from .modular import EXHAUSTIVE_CAP, RESIDUE_SIGMA_BOUND, ModularBasisSet, ap_verify
from .primes import GrowthSpec, PrimeSequence
from .radix import DigitString, RadixSystem

BRUTE_CAP = 10**6
ENUM_CAP = 10**6

# Levels with b_j at most this get a full residue -> smallest-pair table;
# larger levels fall back to a per-residue memo.
_PAIR_TABLE_LIMIT = 1 << 16

_OPEN, _FROZEN = 0, 1


@dataclass(frozen=True)
class Representation:
    """A certified pair: a + a_prime = n with both members of A."""

    a: int
    a_prime: int


@dataclass(frozen=True)
class SigmaReport:
    """Representation-count report for one n."""

    n: int
    exact: int
    bound: int
    brute: int | None = None

    @property
    def basis_ok(self) -> bool:
        return self.exact >= 1

    @property
    def bound_ok(self) -> bool:
        return self.exact <= self.bound

    @property
    def agree(self) -> bool | None:
        if self.brute is None:
            return None
        return self.exact == self.brute


class BasisContext:
    """All queries against A for one growth schedule.

    The context is append-only: ensure_capacity grows the prime sequence,
    the radix and the per-level modular sets in lockstep, and never changes
    existing levels, so query results only depend on the growth schedule.
    Query operations are read-only apart from internal once-only caches and
    are safe to run concurrently.
    """

    def __init__(self, growth: GrowthSpec | None = None, modular_cap: int = EXHAUSTIVE_CAP):
        self.growth = growth if growth is not None else GrowthSpec.linear()
        self.seq = PrimeSequence(self.growth)
        self._bases: list[int] = []
        self._levels: list[ModularBasisSet] = []
        self._level_max: list[int | None] = []
        self._product = 1
        self._modular_cap = modular_cap
        self._pair_tables: dict[int, list[tuple[int, int]]] = {}
        self._pair_memo: dict[int, dict[int, tuple[int, int]]] = {}
        self._count_memo: dict[int, dict[int, tuple[int, int, int]]] = {}
        self._lock = threading.Lock()

    @classmethod
    def create(
        cls,
        growth: GrowthSpec | None = None,
        capacity_digits: int = 1,
        modular_cap: int = EXHAUSTIVE_CAP,
    ) -> "BasisContext":
        if capacity_digits < 1:
            raise ValueError(f"capacity must be >= 1 digit, got {capacity_digits}")
        ctx = cls(growth, modular_cap=modular_cap)
        ctx.ensure_capacity(capacity_digits)
        return ctx

    # ------------------------------------------------------------------ capacity

    @property
    def capacity(self) -> int:
        return len(self._bases)

    @property
    def bases(self) -> list[int]:
        return self._bases

    @property
    def radix(self) -> RadixSystem:
        return RadixSystem(tuple(self._bases))

    def level(self, i: int) -> ModularBasisSet:
        """Modular basis of digit position i + 1 (0-based index)."""
        return self._levels[i]

    def ensure_capacity(self, m: int) -> "BasisContext":
        """Grow to at least m digit positions (explicit, append-only)."""
        if m <= len(self._bases):
            return self
        with self._lock:
            self.seq.extend_to(m)
            for i in range(len(self._bases), m):
                p = self.seq[i]
                b = p * p
                self._bases.append(b)
                self._levels.append(ModularBasisSet(p))
                self._level_max.append(None)
                self._product *= b
        return self

    def ensure_capacity_for(self, n: int) -> "BasisContext":
        """Grow until n is representable (product of bases exceeds n)."""
        if n < 0:
            raise ValueError(f"expected a nonnegative integer, got {n}")
        while self._product <= n:
            self.ensure_capacity(len(self._bases) + 1)
        return self

    # ------------------------------------------------------------------ digits

    def _digits_of(self, n: int) -> list[int]:
        if n < 0:
            raise ValueError(f"expected a nonnegative integer, got {n}")
        digits: list[int] = []
        rem = n
        for b in self._bases:
            if rem == 0:
                break
            rem, d = divmod(rem, b)
            digits.append(d)
        if rem:
            raise CapacityError(
                f"{n} exceeds the current capacity of {len(self._bases)} digits; "
                "call ensure_capacity_for first"
            )
        return digits

    def digit_length(self, n: int) -> int:
        return len(self._digits_of(n))

    def to_digit_string(self, n: int) -> DigitString:
        return DigitString(tuple(self._digits_of(n)), self.radix)

    # ------------------------------------------------------------------ levels

    def level_max(self, i: int) -> int:
        """Exact multiplicity maximum of level i when p_i is under the
        exhaustive cap, else the proven ceiling.  Cached once computed."""
        got = self._level_max[i]
        if got is None:
            p = self.seq[i]
            if p <= self._modular_cap:
                report = ap_verify(p, cap=self._modular_cap)
                if not report.covers_all:
                    raise RuntimeError(
                        f"level {i + 1} (p={p}) fails to cover a residue; "
                        "modular cover property violated"
                    )
                got = report.max_sigma
            else:
                got = RESIDUE_SIGMA_BOUND
            self._level_max[i] = got
        return got

    # ------------------------------------------------------------------ membership

    def contains(self, n: int) -> bool:
        """Digit-rule membership; contains(0) is true."""
        digits = self._digits_of(n)
        for i in range(len(digits) - 1):
            if not self._levels[i].contains(digits[i]):
                return False
        return True

    # ------------------------------------------------------------------ represent

    def _scan_pair(self, i: int, r: int) -> tuple[int, int]:
        b = self._bases[i]
        level = self._levels[i]
        res = level.residues()
        rset = level.residue_set()
        for a in res:
            a2 = r - a
            if a2 < 0:
                a2 += b
            if a2 in rset:
                return a, a2
        raise RuntimeError(
            f"level {i + 1} (p={self.seq[i]}) cannot express residue {r} as a pair sum; "
            "modular cover property violated"
        )

    def _pair_for(self, i: int, r: int) -> tuple[int, int]:
        table = self._pair_tables.get(i)
        if table is not None:
            return table[r]
        b = self._bases[i]
        if b <= _PAIR_TABLE_LIMIT:
            table = [self._scan_pair(i, r2) for r2 in range(b)]
            self._pair_tables[i] = table
            return table[r]
        memo = self._pair_memo.setdefault(i, {})
        got = memo.get(r)
        if got is None:
            got = memo[r] = self._scan_pair(i, r)
        return got

    def represent(self, n: int) -> Representation:
        """Deterministic certified pair with a + a' = n.

        Every intermediate carry is 0 or 1 and the top digit of a equals
        n_k minus the final carry; both are enforced.
        """
        digits = self._digits_of(n)
        k = len(digits)
        if k == 0:
            return Representation(0, 0)
        a_val = 0
        ap_val = 0
        scale = 1
        carry = 0
        for i in range(k - 1):
            b = self._bases[i]
            need = (digits[i] - carry) % b
            da, dap = self._pair_for(i, need)
            total = da + dap + carry
            carry = total // b
            if carry not in (0, 1) or total % b != digits[i]:
                raise RuntimeError(f"carry bookkeeping violated at level {i + 1}")
            a_val += da * scale
            ap_val += dap * scale
            scale *= b
        top = digits[-1] - carry
        if not 0 <= top < self._bases[k - 1]:
            raise RuntimeError("top digit left its positional range")
        a_val += top * scale
        return Representation(a_val, ap_val)

    # ------------------------------------------------------------------ counting

    def _pair_counts(self, i: int, s: int) -> tuple[int, int, int]:
        """(member*member, member*any, any*any) counts of digit pairs
        (d, d') in [0, b_i)^2 with d + d' = s."""
        memo = self._count_memo.setdefault(i, {})
        got = memo.get(s)
        if got is None:
            b = self._bases[i]
            level = self._levels[i]
            res = level.residues()
            rset = level.residue_set()
            lo = s - b + 1 if s >= b else 0
            hi = s if s < b else b - 1
            aa = hi - lo + 1 if hi >= lo else 0
            left = bisect.bisect_left(res, lo)
            right = bisect.bisect_right(res, hi)
            ma = right - left
            mm = 0
            for d in res[left:right]:
                if (s - d) in rset:
                    mm += 1
            got = memo[s] = (mm, ma, aa)
        return got

    def sigma_exact(self, n: int) -> int:
        """Exact ordered representation count by the digit dynamic program."""
        digits = self._digits_of(n)
        k = len(digits)
        states: dict[tuple[int, int, int], int] = {(0, _OPEN, _OPEN): 1}
        for i in range(k):
            b = self._bases[i]
            nj = digits[i]
            last = i == k - 1
            new: dict[tuple[int, int, int], int] = {}
            for (c, sa, sb), cnt in states.items():
                for cout in (0, 1):
                    s = nj - c + (b if cout else 0)
                    if s < 0 or s > 2 * b - 2:
                        continue
                    if last:
                        if cout:
                            continue  # a final carry would add a digit above n's top
                        if sa == _OPEN and sb == _OPEN:
                            ways = s + 1 if s < b else 2 * b - 1 - s
                        elif sa == _OPEN or sb == _OPEN:
                            ways = 1 if s < b else 0  # frozen side contributes digit 0
                        else:
                            ways = 1 if s == 0 else 0
                        if ways:
                            key = (0, sa, sb)
                            new[key] = new.get(key, 0) + cnt * ways
                        continue
                    if sa == _OPEN and sb == _OPEN:
                        mm, ma, aa = self._pair_counts(i, s)
                        mn = ma - mm
                        nn = aa - 2 * ma + mm
                        for key, ways in (
                            ((cout, _OPEN, _OPEN), mm),
                            ((cout, _OPEN, _FROZEN), mn),
                            ((cout, _FROZEN, _OPEN), mn),
                            ((cout, _FROZEN, _FROZEN), nn),
                        ):
                            if ways:
                                new[key] = new.get(key, 0) + cnt * ways
                    elif sa == _FROZEN and sb == _FROZEN:
                        if s == 0:
                            key = (cout, _FROZEN, _FROZEN)
                            new[key] = new.get(key, 0) + cnt
                    else:
                        # exactly one side frozen: its digit is 0, the open
                        # side's digit is s and its status follows membership
                        if s >= b:
                            continue
                        member = self._levels[i].contains(s)
                        if sa == _OPEN:
                            key = (cout, _OPEN if member else _FROZEN, _FROZEN)
                        else:
                            key = (cout, _FROZEN, _OPEN if member else _FROZEN)
                        new[key] = new.get(key, 0) + cnt
            states = new
        return sum(cnt for (c, _, _), cnt in states.items() if c == 0)

    def sigma_bruteforce(self, n: int, cap: int = BRUTE_CAP) -> int:
        """Oracle count: scan every split a + (n - a) through contains."""
        if n > cap:
            raise CapacityError(f"brute-force counting capped at {cap}, got {n}")
        return sum(1 for a in range(n + 1) if self.contains(a) and self.contains(n - a))

    def bound_for_length(self, k: int) -> int:
        """Analytic ceiling for any n of digit length at most k (k >= 1)."""
        k = max(k, 1)
        self.ensure_capacity(k)
        total = 0
        mprod = 1
        for l in range(1, k + 1):
            total += self._bases[l - 1] * mprod
            if l < k:
                mprod *= self.level_max(l - 1)
        return 2 * total

    def sigma_bound(self, n: int) -> int:
        """Analytic ceiling for sigma(n); always >= sigma_exact(n)."""
        return self.bound_for_length(self.digit_length(n))

    def sigma_report(
        self, n: int, include_brute: bool = False, brute_cap: int = BRUTE_CAP
    ) -> SigmaReport:
        exact = self.sigma_exact(n)
        bound = self.sigma_bound(n)
        brute = self.sigma_bruteforce(n, cap=brute_cap) if include_brute else None
        return SigmaReport(n=n, exact=exact, bound=bound, brute=brute)

    # ------------------------------------------------------------------ enumeration

    def enumerate_upto(self, nmax: int, cap: int = ENUM_CAP) -> list[int]:
        """All members of A up to nmax, ascending."""
        if nmax > cap:
            raise CapacityError(f"enumeration capped at {cap}, got {nmax}")
        from . import bulk

        return bulk.enumerate_upto(self, nmax)
