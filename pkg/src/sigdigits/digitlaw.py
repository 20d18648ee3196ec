"""Closed-form significant-digit laws.

The general block law assigns ``log_b(1 + l/d)`` to the event that the
integer formed by the first ``k`` base-``b`` digits lies in ``[d, d + l)``.
Benford's first-digit law, Newcomb's second-digit law and Hill's joint law
are all special cases or marginals of it.
"""

import enum
import itertools
import math
from dataclasses import dataclass

from .errors import DomainError

# Cap on the number of prefixes summed by ith_digit_table (10**5 is position 6 in base 10).
MAX_PREFIXES = 10**5


class Source(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    ORACLE = "oracle"
    EMPIRICAL = "empirical"


@dataclass(frozen=True)
class DigitBlock:
    """Numbers whose leading ``width``-digit integer lies in ``[lead, lead + span)``."""

    base: int
    lead: int
    span: int = 1
    width: int = 1

    def __post_init__(self):
        b, d, l, k = self.base, self.lead, self.span, self.width
        if b < 2:
            raise DomainError(f"DigitBlock: base >= 2 violated (base={b})")
        if k < 1:
            raise DomainError(f"DigitBlock: width >= 1 violated (width={k})")
        if l < 1:
            raise DomainError(f"DigitBlock: span >= 1 violated (span={l})")
        if d < b ** (k - 1):
            raise DomainError(f"DigitBlock: base**(width-1) <= lead violated (lead={d}, width={k})")
        if d + l > b**k:
            raise DomainError(
                f"DigitBlock: lead + span <= base**width violated (lead={d}, span={l}, width={k})"
            )

    @classmethod
    def full(cls, base, width=1):
        """The block covering every ``width``-digit lead."""
        lo = base ** (width - 1)
        return cls(base, lo, base**width - lo, width)

    @property
    def stop(self):
        return self.lead + self.span

    @property
    def is_full(self):
        return self.lead == self.base ** (self.width - 1) and self.stop == self.base**self.width


def span_one_blocks(base, width=1):
    lo = base ** (width - 1)
    return [DigitBlock(base, d, 1, width) for d in range(lo, base**width)]


@dataclass(frozen=True)
class LawPrediction:
    """Probabilities over digit outcomes keyed by the integer value of the outcome.

    ``position`` is set only for marginal tables of a single significant digit
    beyond the first; those are keyed by digit value 0..base-1.
    """

    base: int
    probabilities: dict
    source: Source = Source.CLOSED_FORM
    width: int = 1
    position: int | None = None

    def __post_init__(self):
        for key, p in self.probabilities.items():
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"probability for {key} outside [0, 1]: {p}")

    def __getitem__(self, key):
        return self.probabilities[key]

    def total(self):
        return math.fsum(self.probabilities.values())

    def as_list(self):
        return [self.probabilities[k] for k in sorted(self.probabilities)]


def benford_prob(block):
    """``log_base(1 + span/lead)`` for a valid :class:`DigitBlock`."""
    if not isinstance(block, DigitBlock):
        raise DomainError(f"expected a DigitBlock, got {type(block).__name__}")
    if block.is_full:
        return 1.0
    return math.log1p(block.span / block.lead) / math.log(block.base)


def first_digit_table(base=10):
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    probs = {blk.lead: benford_prob(blk) for blk in span_one_blocks(base)}
    return LawPrediction(base, probs, Source.CLOSED_FORM, width=1)


def block_table(base=10, width=1):
    """General-law probabilities of every span-1 block of the given width."""
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if width < 1:
        raise DomainError(f"width must be >= 1, got {width}")
    probs = {blk.lead: benford_prob(blk) for blk in span_one_blocks(base, width)}
    return LawPrediction(base, probs, Source.CLOSED_FORM, width=width)


def digits_to_lead(base, digits):
    digits = list(digits)
    if not digits:
        raise DomainError("at least one digit is required")
    if not 1 <= digits[0] <= base - 1:
        raise DomainError(f"leading digit must be in [1, {base - 1}], got {digits[0]}")
    for i, dig in enumerate(digits[1:], start=2):
        if not 0 <= dig <= base - 1:
            raise DomainError(f"digit {i} must be in [0, {base - 1}], got {dig}")
    lead = 0
    for dig in digits:
        lead = lead * base + dig
    return lead


def hill_joint_prob(base, digits):
    """Probability that the first significant digits are exactly ``digits``."""
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    lead = digits_to_lead(base, digits)
    return benford_prob(DigitBlock(base, lead, 1, len(digits)))


def ith_digit_table(base=10, position=1):
    """Marginal law of the ``position``-th significant digit.

    Computed by explicit summation of the joint law over all
    ``(base-1) * base**(position-2)`` prefixes.
    """
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if position < 1:
        raise DomainError(f"position must be >= 1, got {position}")
    if position == 1:
        return first_digit_table(base)
    if base ** (position - 1) > MAX_PREFIXES:
        raise DomainError(
            f"position {position} in base {base} needs {base ** (position - 1)} prefixes "
            f"(limit {MAX_PREFIXES})"
        )
    lo = base ** (position - 2)
    ln_b = math.log(base)
    probs = {}
    for dig in range(base):
        terms = (math.log1p(1.0 / (p * base + dig)) / ln_b for p in range(lo, lo * base))
        probs[dig] = math.fsum(terms)
    return LawPrediction(base, probs, Source.CLOSED_FORM, width=1, position=position)


def all_digit_tuples(base, width):
    """Every valid tuple of the first ``width`` significant digits, in increasing order."""
    heads = range(1, base)
    tails = [range(base)] * (width - 1)
    return itertools.product(heads, *tails)
