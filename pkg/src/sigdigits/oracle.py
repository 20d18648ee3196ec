"""Exact digit probabilities by summing interval masses over every scale.

For a block ``[d, d + l)`` in base ``b`` the probability is the sum over all
integers ``n`` of the mass of ``[d b^n, (d + l) b^n)``. The sum is truncated
on both sides once the mass left out is provably below the tolerance.
"""

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

from ._digits import leading_block
from .digitlaw import DigitBlock, LawPrediction, Source, span_one_blocks
from .errors import DomainError, NumericalError

# Exponent guard against laws that never let the tails drop below the tolerance.
MAX_SCALES = 4000
MAX_TABLE_BLOCKS = 10**4


@dataclass(frozen=True)
class OracleResult:
    block: DigitBlock
    probability: float
    truncation_lo: int
    truncation_hi: int
    tail_bound: float


def _mass_below(dist, x):
    if dist.cdf is not None:
        return float(dist.cdf(x))
    return dist.integrate_density(dist.support_hint[0], x, epsabs=1e-15)


def _mass_above(dist, x):
    if dist.sf is not None:
        return float(dist.sf(x))
    if dist.cdf is not None:
        return max(1.0 - float(dist.cdf(x)), 0.0)
    hi = dist.support_hint[1]
    if x >= hi:
        return 0.0
    # the support hint already hides at most TAIL_MASS beyond hi
    return dist.integrate_density(x, hi, epsabs=1e-15) + 1e-12


def scale_range(dist, block, tol):
    """Indices ``n_lo..n_hi`` to keep and the certified bound on what is dropped."""
    b, lo_mult, hi_mult = block.base, block.lead, block.stop
    budget = tol / 4.0
    n_hi = 0
    while (upper := _mass_above(dist, lo_mult * float(b) ** (n_hi + 1))) >= budget:
        n_hi += 1
        if n_hi > MAX_SCALES:
            raise NumericalError(f"upper tail of {dist.spec} does not fall below {budget:g}")
    n_lo = min(0, n_hi)
    while (lower := _mass_below(dist, hi_mult * float(b) ** (n_lo - 1))) >= budget:
        n_lo -= 1
        if n_lo < -MAX_SCALES:
            raise NumericalError(f"lower tail of {dist.spec} does not fall below {budget:g}")
    return n_lo, n_hi, upper + lower


def exact_block_prob(dist, block, tol=1e-9):
    """Probability that a draw from ``dist`` falls in ``block``."""
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if not isinstance(block, DigitBlock):
        raise DomainError(f"expected a DigitBlock, got {type(block).__name__}")
    n_lo, n_hi, tail = scale_range(dist, block, tol)
    per_interval = tol / (2.0 * (n_hi - n_lo + 1))
    b = float(block.base)
    masses = []
    for n in range(n_lo, n_hi + 1):
        scale = b**n
        masses.append(dist.mass(block.lead * scale, block.stop * scale, epsabs=per_interval))
    prob = min(max(math.fsum(masses), 0.0), 1.0)
    return OracleResult(block, prob, n_lo, n_hi, tail)


def exact_table(dist, base=10, width=1, tol=1e-9):
    """Oracle probabilities of every span-1 block of the given width."""
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if width < 1:
        raise DomainError(f"width must be >= 1, got {width}")
    if base**width > MAX_TABLE_BLOCKS:
        raise DomainError(
            f"base**width = {base**width} exceeds the table limit of {MAX_TABLE_BLOCKS}"
        )
    blocks = span_one_blocks(base, width)
    each = tol / len(blocks)
    probs = {blk.lead: exact_block_prob(dist, blk, each).probability for blk in blocks}
    return LawPrediction(base, probs, Source.ORACLE, width=width)


def indicator_g(block, x):
    """1 if the leading ``width`` digits of ``x`` fall in the block, else 0.

    Accepts floats, ints, Fractions, Decimals and decimal strings. Floats are
    read through their shortest decimal repr in base 10 and exactly otherwise,
    so points on a block edge land in the half-open interval they belong to.
    """
    try:
        positive = (Decimal(x.strip()) if isinstance(x, str) else x) > 0
    except (InvalidOperation, TypeError):
        raise DomainError(f"x is not a number: {x!r}") from None
    if not positive:
        raise DomainError(f"x must be positive, got {x}")
    lead = leading_block(x, block.base, block.width)
    return int(block.lead <= lead < block.stop)
