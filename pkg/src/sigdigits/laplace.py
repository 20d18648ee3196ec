"""Laplace-side error analysis of the general digit law.

The Laplace transform of the block indicator is a lattice sum

    G(t) = (1/t) * sum_n [exp(-t d b^n) - exp(-t (d + l) b^n)],

and ``t G(t)`` oscillates around ``log_b(1 + l/d)`` with period ``ln b`` in
``s = ln t``. The deviation ``Delta(t) = t G(t) - log_b(1 + l/d)`` weighted by
a density's inverse-Laplace kernel gives the total error of the law for that
density.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy import integrate

from .digitlaw import DigitBlock, benford_prob
from .errors import DomainError, NumericalError, UnsupportedError
from .oracle import exact_block_prob

# exp(-x) is exactly 0.0 in double precision beyond this.
EXP_UNDERFLOW = 745.2
DEFAULT_SAMPLES = 4096
GOLDEN_TOL = 1e-10
# Default absolute tolerance on t*G(t) for pointwise Delta evaluations.
SERIES_TOL = 1e-15


@dataclass(frozen=True)
class SeriesEval:
    block: DigitBlock
    t: float
    value: float
    terms_used: int
    tail_bound: float


class Extremum(NamedTuple):
    max_abs: float
    argmax_s: float
    value: float


@dataclass(frozen=True)
class ErrorReport:
    block: DigitBlock
    total_error: float
    benford_term: float
    oracle_prob: float
    periodic_max: float
    bound_M: Optional[float] = None
    bound_value: Optional[float] = None
    bound_certified: bool = False


def _check_block(block):
    if not isinstance(block, DigitBlock):
        raise DomainError(f"expected a DigitBlock, got {type(block).__name__}")


def _scale_range(block, t, tol):
    """Lattice indices ``n_lo..n_hi`` for ``t G(t)`` and the bound on dropped terms.

    Terms above ``n_hi`` are exactly zero in double precision. Terms below
    ``n_lo`` sum to at most ``t l b^n_lo / (b - 1)`` since
    ``exp(-a) - exp(-c) <= c - a``.
    """
    b = block.base
    log_b = math.log(b)
    n_hi = math.floor(math.log(EXP_UNDERFLOW / (t * block.lead)) / log_b)
    # smallest n_lo with t l b^n_lo / (b - 1) < tol
    n_lo = math.floor(math.log(tol * (b - 1) / (t * block.span)) / log_b)
    while t * block.span * float(b) ** n_lo / (b - 1) >= tol:
        n_lo -= 1
    n_lo = min(n_lo, n_hi)
    return n_lo, n_hi, t * block.span * float(b) ** n_lo / (b - 1)


def _lattice_terms(block, t, n_lo, n_hi):
    scales = float(block.base) ** np.arange(n_lo, n_hi + 1)
    a = t * block.lead * scales
    gap = t * block.span * scales
    return -np.exp(-a) * np.expm1(-gap)


def scaled_transform(block, t, tol=SERIES_TOL):
    """``t G(t)`` and its diagnostics, with absolute tolerance ``tol`` on ``t G``."""
    _check_block(block)
    if not t > 0 or not math.isfinite(t):
        raise DomainError(f"t must be positive and finite, got {t}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    n_lo, n_hi, tail = _scale_range(block, t, tol)
    terms = _lattice_terms(block, t, n_lo, n_hi)
    return math.fsum(terms), terms.size, tail


def g_transform(block, t, tol=1e-12):
    """Laplace transform of the block indicator at ``t`` with certified truncation."""
    if not t > 0 or not math.isfinite(t):
        raise DomainError(f"t must be positive and finite, got {t}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    tg, count, tail = scaled_transform(block, t, tol * t)
    return SeriesEval(block, t, tg / t, count, tail / t)


def delta(block, t, tol=SERIES_TOL):
    """``t G(t) - log_b(1 + l/d)``; invariant under ``t -> b t``."""
    return scaled_transform(block, t, tol)[0] - benford_prob(block)


def delta_tilde(block, s, tol=SERIES_TOL):
    """``delta`` on the logarithmic scale ``t = e^s``; periodic with period ``ln b``."""
    return delta(block, math.exp(s), tol)


def delta_tilde_array(block, s):
    """Vectorized ``delta_tilde`` for many ``s`` at once."""
    _check_block(block)
    s = np.asarray(s, dtype=float)
    t = np.exp(s)
    t_min, t_max = float(t.min()), float(t.max())
    n_lo = _scale_range(block, t_max, SERIES_TOL)[0]
    n_hi = _scale_range(block, t_min, SERIES_TOL)[1]
    scales = float(block.base) ** np.arange(n_lo, n_hi + 1)
    a = np.multiply.outer(t, block.lead * scales)
    gap = np.multiply.outer(t, block.span * scales)
    tg = np.sum(-np.exp(-a) * np.expm1(-gap), axis=-1)
    return tg - benford_prob(block)


def golden_max(f, a, b, tol=GOLDEN_TOL):
    """Maximize a unimodal ``f`` on ``[a, b]`` by golden-section search."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def scan_delta_extrema(block, samples_per_period=DEFAULT_SAMPLES):
    """Largest ``|delta_tilde|`` over one period, located on a grid and refined.

    The grid over ``[0, ln b)`` brackets the extremum; golden-section search
    then narrows the bracket to ``GOLDEN_TOL`` in ``s``.
    """
    _check_block(block)
    if samples_per_period < 100:
        raise DomainError(f"samples_per_period must be >= 100, got {samples_per_period}")
    period = math.log(block.base)
    step = period / samples_per_period
    grid = np.arange(samples_per_period) * step
    values = np.abs(delta_tilde_array(block, grid))
    i = int(np.argmax(values))
    s_star, best = golden_max(
        lambda s: abs(delta_tilde(block, s)), grid[i] - step, grid[i] + step
    )
    if best < values[i]:
        s_star, best = float(grid[i]), float(values[i])
    s_star = math.fmod(s_star, period)
    if s_star < 0:
        s_star += period
    return Extremum(float(best), s_star, delta_tilde(block, s_star))


def period_mean(block):
    """Average of ``delta_tilde`` over one period."""
    _check_block(block)
    period = math.log(block.base)
    val, _ = integrate.quad(
        lambda s: delta_tilde(block, s), 0.0, period, epsabs=1e-13, epsrel=0.0, limit=200
    )
    return val / period


def total_error(dist, block, tol=1e-9, samples_per_period=DEFAULT_SAMPLES):
    """Exact probability minus the general-law term, with the kernel bound when available."""
    _check_block(block)
    oracle = exact_block_prob(dist, block, tol).probability
    term = benford_prob(block)
    periodic = scan_delta_extrema(block, samples_per_period).max_abs
    kernel = dist.inverse_laplace
    if kernel is None:
        return ErrorReport(block, oracle - term, term, oracle, periodic)
    m = kernel.normalization(absolute=True)
    return ErrorReport(
        block,
        oracle - term,
        term,
        oracle,
        periodic,
        bound_M=m,
        bound_value=periodic * m,
        bound_certified=kernel.sign_definite,
    )


def _kernel_window(kernel, period, target):
    """``[s_lo, s_hi]`` outside of which ``|f(e^s)|`` carries less than ``target`` each side."""
    g = lambda s: abs(kernel.log_scale(s))

    def tail(lo, hi):
        return integrate.quad(g, lo, hi, epsabs=target * 1e-3, epsrel=1e-10, limit=200)[0]

    s_hi = period
    while tail(s_hi, np.inf) >= target:
        s_hi += period
        if s_hi > 1e4:
            raise NumericalError("kernel upper tail does not decay")
    s_lo = -period
    while tail(-np.inf, s_lo) >= target:
        s_lo -= period
        if s_lo < -1e4:
            raise NumericalError("kernel lower tail does not decay")
    return s_lo, s_hi


def kernel_weighted_error(dist, block, tol=1e-9):
    """Total error computed on the kernel side: ``integral f(e^s) delta_tilde(s) ds``."""
    _check_block(block)
    kernel = dist.inverse_laplace
    if kernel is None:
        raise UnsupportedError(f"{dist.spec} has no inverse Laplace kernel")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if kernel.is_atomic:
        return math.fsum(w / t * delta(block, t) for t, w in kernel.atoms)
    period = math.log(block.base)
    periodic = max(scan_delta_extrema(block).max_abs, 1e-300)
    s_lo, s_hi = _kernel_window(kernel, period, tol / (4.0 * periodic))
    pieces = max(1, math.ceil((s_hi - s_lo) / period - 1e-9))
    budget = tol / (2.0 * pieces)
    integrand = lambda s: kernel.log_scale(s) * delta_tilde(block, s)
    parts = []
    for j in range(pieces):
        lo = s_lo + j * period
        val, err = integrate.quad(
            integrand, lo, min(lo + period, s_hi), epsabs=budget, epsrel=0.0, limit=200
        )
        if err > budget:
            raise NumericalError(
                f"kernel-side integral failed on s in [{lo:g}, {lo + period:g}]",
                interval=(lo, lo + period),
            )
        parts.append(val)
    return math.fsum(parts)
