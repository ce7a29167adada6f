"""Explicit additive basis of order 2 with provably small representation counts.

Every natural number is a sum of two members of the set A built here, no
number has many such representations, and membership of n is decidable in
time polynomial in the number of digits of n.  The construction composes a
modular additive basis of Z/p^2 (quadratic seed sets with coefficients
3, 4, 6) across a mixed-radix digit system whose bases are squares of a
canonical prime sequence.
"""

from .basis import (
    BRUTE_CAP,
    ENUM_CAP,
    BasisContext,
    Representation,
    SigmaReport,
)
from .errors import CapacityError
from .modular import (
    EXHAUSTIVE_CAP,
    RESIDUE_SIGMA_BOUND,
    SEED_COEFFICIENTS,
    SEED_SIGMA_BOUND,
    ModularBasisSet,
    ModularVerifyReport,
    ap_enumerate,
    ap_membership,
    ap_sigma,
    ap_verify,
    b_enumerate,
    b_membership,
    b_verify,
)
from .primes import (
    IS_PRIME_LIMIT,
    GrowthSpec,
    PrimeSequence,
    is_prime,
    least_p3mod8_in_doubling,
    next_p3mod8_above,
)
from .radix import DigitString, RadixSystem, digit_length, from_digits, to_digits

__version__ = "0.1.0"

__all__ = [
    "BRUTE_CAP",
    "ENUM_CAP",
    "EXHAUSTIVE_CAP",
    "IS_PRIME_LIMIT",
    "RESIDUE_SIGMA_BOUND",
    "SEED_COEFFICIENTS",
    "SEED_SIGMA_BOUND",
    "BasisContext",
    "CapacityError",
    "DigitString",
    "GrowthSpec",
    "ModularBasisSet",
    "ModularVerifyReport",
    "PrimeSequence",
    "RadixSystem",
    "Representation",
    "SigmaReport",
    "ap_enumerate",
    "ap_membership",
    "ap_sigma",
    "ap_verify",
    "b_enumerate",
    "b_membership",
    "b_verify",
    "digit_length",
    "from_digits",
    "is_prime",
    "least_p3mod8_in_doubling",
    "next_p3mod8_above",
    "to_digits",
]
