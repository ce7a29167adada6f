"""Mixed-radix digit codec.

A radix (b_1, b_2, ...) with every b_i >= 2 represents x as
x = sum_i a_i * prod_{j<i} b_j with 0 <= a_i < b_i.  Forbidding a leading
zero on the top digit makes the representation unique; zero is the empty
digit string.  Digits are stored little-endian (index 0 is least
significant) and display big-endian as comma-separated decimals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CapacityError


@dataclass(frozen=True)
class RadixSystem:
    """A finite prefix (b_1, ..., b_m) of the positional base."""

    bases: tuple[int, ...]

    def __post_init__(self) -> None:
        for b in self.bases:
            if b < 2:
                raise ValueError(f"every base must be >= 2, got {b}")

    @classmethod
    def from_primes(cls, primes: Sequence[int]) -> "RadixSystem":
        return cls(tuple(p * p for p in primes))

    def __len__(self) -> int:
        return len(self.bases)


@dataclass(frozen=True)
class DigitString:
    """Little-endian digits of a nonnegative integer, no leading zeros."""

    digits: tuple[int, ...]
    radix: RadixSystem

    def __post_init__(self) -> None:
        if len(self.digits) > len(self.radix.bases):
            raise ValueError("more digits than the radix has positions")
        for i, d in enumerate(self.digits):
            if not 0 <= d < self.radix.bases[i]:
                raise ValueError(
                    f"digit {d} at position {i + 1} outside [0, {self.radix.bases[i]})"
                )
        if self.digits and self.digits[-1] == 0:
            raise ValueError("top digit must be nonzero (zero is the empty string)")

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __str__(self) -> str:
        return ",".join(str(d) for d in reversed(self.digits))

    def value(self) -> int:
        return from_digits(self)


def to_digits(n: int, radix: RadixSystem) -> DigitString:
    """Canonical digit string of n; CapacityError when the radix is too short."""
    if n < 0:
        raise ValueError(f"expected a nonnegative integer, got {n}")
    digits = []
    rem = n
    for b in radix.bases:
        if rem == 0:
            break
        rem, d = divmod(rem, b)
        digits.append(d)
    if rem:
        raise CapacityError(
            f"{n} needs more than {len(radix.bases)} digit positions"
        )
    return DigitString(tuple(digits), radix)


def from_digits(d: DigitString) -> int:
    """Exact inverse of to_digits."""
    total = 0
    scale = 1
    for i, a in enumerate(d.digits):
        total += a * scale
        scale *= d.radix.bases[i]
    return total


def digit_length(n: int, radix: RadixSystem) -> int:
    """Length of the canonical representation; 0 for n = 0."""
    if n < 0:
        raise ValueError(f"expected a nonnegative integer, got {n}")
    k = 0
    rem = n
    for b in radix.bases:
        if rem == 0:
            break
        rem //= b
        k += 1
    if rem:
        raise CapacityError(
            f"{n} needs more than {len(radix.bases)} digit positions"
        )
    return k
