"""Exact algebra of growth rates of the form product^(1/length).

A rate is stored as a positive rational `product` and an integer root
`length`; the represented real number is product**(1/length).  Construction
canonicalizes: whenever product is a perfect k-th power for some k dividing
length, both are reduced, so structural equality of the dataclass coincides
with equality of the represented numbers.

Comparisons are decided exactly by cross-powering (p1^L2 vs p2^L1).  A
float pre-check short-circuits the common case where the two values are far
apart, so comparing rates with huge numerators stays cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateInputError

# log-gap below which the float pre-check refuses to decide a comparison
_LOG_MARGIN = 1e-9


def _int_kth_root(n: int, k: int) -> int | None:
    """Exact k-th root of a nonnegative integer, or None if not a power."""
    if n < 0:
        return None
    if n in (0, 1) or k == 1:
        return n
    # integer Newton from an upper bound; floats would overflow on big n
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r if r**k == n else None


def _canonical(product: Fraction, length: int) -> tuple[Fraction, int]:
    for k in range(length, 1, -1):
        if length % k:
            continue
        num = _int_kth_root(product.numerator, k)
        if num is None:
            continue
        den = _int_kth_root(product.denominator, k)
        if den is None:
            continue
        return Fraction(num, den), length // k
    return product, length


@dataclass(frozen=True)
class AlgebraicGrowthRate:
    product: Fraction
    length: int
    approx: float = field(init=False, compare=False)

    def __post_init__(self):
        if self.length < 1:
            raise DegenerateInputError(f"rate length must be >= 1, got {self.length}")
        if self.product <= 0:
            raise DegenerateInputError(f"rate product must be positive, got {self.product}")
        p, length = _canonical(Fraction(self.product), self.length)
        object.__setattr__(self, "product", p)
        object.__setattr__(self, "length", length)
        log = (math.log(p.numerator) - math.log(p.denominator)) / length
        object.__setattr__(self, "approx", math.exp(log))

    # -- ordering ------------------------------------------------------

    def _log(self) -> float:
        return (math.log(self.product.numerator) - math.log(self.product.denominator)) / self.length

    def compare(self, other: "AlgebraicGrowthRate") -> int:
        """-1, 0, or 1; exact despite the float fast path."""
        if self.product == other.product and self.length == other.length:
            return 0
        la, lb = self._log(), other._log()
        if abs(la - lb) > _LOG_MARGIN * max(1.0, abs(la), abs(lb)):
            return -1 if la < lb else 1
        # canonical forms differ, so the values differ; decide exactly
        lhs = self.product**other.length
        rhs = other.product**self.length
        if lhs == rhs:
            return 0
        return -1 if lhs < rhs else 1

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def compare_rational(self, value: Fraction) -> int:
        """Exact comparison of the rate against a plain rational."""
        value = Fraction(value)
        if value <= 0:
            return 1
        lhs = self.product
        rhs = value**self.length
        if lhs == rhs:
            return 0
        return -1 if lhs < rhs else 1

    def power_vs_rational(self, n: int, value: Fraction) -> int:
        """Exact comparison of rate**n against a positive rational value."""
        value = Fraction(value)
        if value <= 0:
            raise DegenerateInputError("comparison target must be positive")
        lhs = self.product**n
        rhs = value**self.length
        if lhs == rhs:
            return 0
        return -1 if lhs < rhs else 1

    # -- presentation ----------------------------------------------------

    def display(self) -> str:
        p = self.product
        return f"({p.numerator}/{p.denominator})^(1/{self.length}) ≈ {self.approx:.10f}"

    def __str__(self) -> str:
        return self.display()


def rate_from_cycle(product: Fraction, length: int) -> AlgebraicGrowthRate:
    return AlgebraicGrowthRate(Fraction(product), length)


def rational_between(lo: AlgebraicGrowthRate, hi: AlgebraicGrowthRate) -> Fraction:
    """Some rational strictly between two distinct rates (lo < hi required)."""
    if not lo < hi:
        raise DegenerateInputError("rational_between needs lo < hi")
    mid = (lo.approx + hi.approx) / 2.0
    for digits in range(1, 40):
        cand = Fraction(mid).limit_denominator(10**digits)
        if cand > 0 and lo.compare_rational(cand) < 0 and hi.compare_rational(cand) > 0:
            return cand
    # fall back to exact interval splitting on continued-fraction depth
    scale = lo.product.denominator * hi.product.denominator
    for k in range(1, 64):
        den = 2**k * scale
        num = math.floor(mid * den) + 1
        cand = Fraction(num, den)
        if lo.compare_rational(cand) < 0 and hi.compare_rational(cand) > 0:
            return cand
    raise DegenerateInputError("no rational found between rates")
