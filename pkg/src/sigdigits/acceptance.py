"""Acceptance checks shared by the test suite and ``sigdigits selftest``.

Each check computes its quantity, compares it to a fixed tolerance and
returns a :class:`Check`. Where a check needs an independent reference value
it computes one here by a different route (brute-force sums, closed-form CDF
interval sums) rather than reusing the code path under test.
"""

import math
import time
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import dists
from .digitlaw import DigitBlock, first_digit_table, hill_joint_prob, ith_digit_table
from .empirics import Verdict, conformity, histogram, transform_data
from .laplace import delta, kernel_weighted_error, scan_delta_extrema, total_error
from .oracle import exact_block_prob, exact_table, indicator_g

TOL = 1e-9
SEED = 42
D1 = DigitBlock(10, 1, 1, 1)


class Check(NamedTuple):
    number: int
    name: str
    passed: bool
    detail: str

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


def closed_form_table():
    table = first_digit_table(10)
    worst = max(abs(table[d] - math.log10(1 + 1 / d)) for d in range(1, 10))
    ok = worst <= 1e-12 and abs(table[1] - 0.3010299957) < 5e-11 and len(table.probabilities) == 9
    return Check(1, "closed-form table", ok, f"max dev {worst:.2e}, P1={table[1]:.10f}")


def extrema_band():
    start = time.perf_counter()
    ext = scan_delta_extrema(D1)
    elapsed = time.perf_counter() - start
    ok = 0.028 < ext.max_abs < 0.031 and elapsed < 1.0
    return Check(2, "extrema band", ok, f"max|delta|={ext.max_abs:.6f} at s={ext.argmax_s:.6f} ({elapsed:.2f}s)")


def worked_errors():
    parts, ok = [], True
    for dist, target, band in ((dists.sqrt_exp(), 0.0005, 2e-4), (dists.quintic_tail(), 0.009, 2e-3)):
        start = time.perf_counter()
        err = total_error(dist, D1, TOL).total_error
        elapsed = time.perf_counter() - start
        ok &= abs(abs(err) - target) <= band and elapsed < 5.0
        parts.append(f"{dist.name} {err:+.6f} ({elapsed:.2f}s)")
    return Check(3, "worked errors", ok, ", ".join(parts))


def _kernel_dists():
    return [d for d in dists.catalog() if d.inverse_laplace is not None and d.inverse_laplace.sign_definite]


def bound_soundness():
    parts, ok = [], True
    for dist in _kernel_dists():
        rep = total_error(dist, D1, TOL)
        ok &= abs(rep.total_error) <= 0.03 * rep.bound_M + 1e-6
        ok &= abs(rep.total_error) <= rep.bound_value + 1e-6
        parts.append(f"{dist.name} |err|={abs(rep.total_error):.5f} M={rep.bound_M:.6f}")
    return Check(4, "bound soundness", ok, ", ".join(parts))


def route_equivalence():
    parts, ok = [], True
    for dist, limit in ((dists.sqrt_exp(), 1e-4), (dists.quintic_tail(), 1e-3)):
        gap = abs(kernel_weighted_error(dist, D1, TOL) - total_error(dist, D1, TOL).total_error)
        ok &= gap < limit
        parts.append(f"{dist.name} gap {gap:.2e}")
    return Check(5, "route equivalence", ok, ", ".join(parts))


def _random_blocks(rng, count):
    blocks = []
    while len(blocks) < count:
        base = int(rng.integers(2, 17))
        width = int(rng.integers(1, 4))
        lo, hi = base ** (width - 1), base**width
        lead = int(rng.integers(lo, hi))
        span = int(rng.integers(1, hi - lead + 1))
        blocks.append(DigitBlock(base, lead, span, width))
    return blocks


def periodicity_and_scale():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for block in _random_blocks(rng, 20):
        for t in np.exp(rng.uniform(-20.0, 20.0, 1000)):
            worst = max(worst, abs(delta(block, block.base * float(t)) - delta(block, float(t))))
    grid = [Fraction(k, 1000) for k in range(1, 10**4 + 1)]
    mismatches = 0
    for block in (DigitBlock(10, 1), DigitBlock(10, 31, 1, 2), DigitBlock(7, 3, 2, 1), DigitBlock(2, 2, 1, 2)):
        mismatches += sum(indicator_g(block, x) != indicator_g(block, block.base * x) for x in grid)
    ok = worst < 1e-10 and mismatches == 0
    return Check(6, "periodicity and scale invariance", ok, f"max |delta(bt)-delta(t)|={worst:.1e}, indicator mismatches={mismatches}")


def partition_and_telescoping():
    worst = 0.0
    for dist in dists.catalog():
        worst = max(worst, abs(exact_table(dist, 10, 1, TOL).total() - 1.0))
    full = DigitBlock.full(10)
    tele = max(abs(delta(full, float(t))) for t in np.exp(np.linspace(-30.0, 30.0, 601)))
    ok = worst <= 10 * TOL and tele < 1e-10
    return Check(7, "partition and telescoping", ok, f"max |sum-1|={worst:.1e}, max |delta_full|={tele:.1e}")


def hill_consistency():
    first = first_digit_table(10)
    worst = max(
        abs(math.fsum(hill_joint_prob(10, (d1, d2)) for d2 in range(10)) - first[d1]) for d1 in range(1, 10)
    )
    # independent route: direct sum of the second-digit formula
    brute = math.fsum(math.log10(1 + 1 / (10 * k)) for k in range(1, 10))
    second = ith_digit_table(10, 2)[0]
    ok = worst <= 1e-12 and abs(second - brute) <= 1e-12 and abs(second - 0.119679) <= 1e-6
    return Check(8, "Hill consistency", ok, f"max marginal dev {worst:.1e}, P(D2=0)={second:.7f}")


def exactly_benford_synthetic():
    dist = dists.log_uniform(6)
    err = total_error(dist, D1, TOL).total_error
    benford = first_digit_table(10)
    sample = dist.sample(np.random.default_rng(SEED), 10**6)
    devs = {}
    for label, data in (("raw", sample), ("scale3", transform_data(sample, "scale", 3.0)), ("power2", transform_data(sample, "power", 2.0))):
        props = histogram(data).proportions()
        devs[label] = max(abs(props[d] - benford[d]) for d in range(1, 10))
    ok = abs(err) <= 1e-9 and all(v < 0.003 for v in devs.values())
    detail = f"total_error={err:.1e}, " + ", ".join(f"{k} dev {v:.5f}" for k, v in devs.items())
    return Check(9, "exactly-Benford synthetic", ok, detail)


def violation_case():
    rng = np.random.default_rng(SEED)
    rep = conformity(histogram(dists.uniform().sample(rng, 10**5)), first_digit_table(10))
    p1 = exact_block_prob(dists.exponential(1.0), D1, TOL).probability
    # independent route: closed-form CDF interval sum
    direct = math.fsum(math.exp(-(10.0**n)) - math.exp(-2.0 * 10.0**n) for n in range(-30, 4))
    ok = (
        rep.verdict == Verdict.VIOLATES
        and abs(p1 - direct) < 1e-3
        and abs(p1 - 0.3297) < 1e-3
        and abs(p1 - math.log10(2)) < 0.03
    )
    return Check(10, "violation case", ok, f"uniform verdict={rep.verdict.value} (mad {rep.mad:.4f}), exp P1={p1:.6f} vs {direct:.6f}")


def normalization():
    parts, ok = [], True
    for dist in dists.catalog():
        if dist.inverse_laplace is None:
            continue
        norm = dist.inverse_laplace.normalization()
        ok &= abs(norm - 1.0) < 1e-6
        parts.append(f"{dist.name} {norm:.9f}")
    return Check(11, "kernel normalization", ok, ", ".join(parts))


CHECKS = (
    closed_form_table,
    extrema_band,
    worked_errors,
    bound_soundness,
    route_equivalence,
    periodicity_and_scale,
    partition_and_telescoping,
    hill_consistency,
    exactly_benford_synthetic,
    violation_case,
    normalization,
)


def run_all():
    return [check() for check in CHECKS]
