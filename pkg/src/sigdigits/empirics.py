"""Leading-digit histograms of real data and their conformity to a digit law."""

import csv
import enum
import math
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

import numpy as np
from scipy import stats

from ._digits import leading_block
from .digitlaw import LawPrediction
from .errors import DomainError


class Verdict(str, enum.Enum):
    CONFORMS = "conforms"
    MARGINAL = "marginal"
    VIOLATES = "violates"


@dataclass(frozen=True)
class Thresholds:
    """MAD cut-offs for the verdict: below ``conforms`` conforms, below ``marginal`` is marginal."""

    conforms: float = 0.006
    marginal: float = 0.012

    def verdict(self, mad):
        if mad < self.conforms:
            return Verdict.CONFORMS
        if mad < self.marginal:
            return Verdict.MARGINAL
        return Verdict.VIOLATES


@dataclass
class DigitHistogram:
    base: int
    width: int
    counts: dict
    total: int
    dropped_zeros: int = 0
    negatives_folded: int = 0
    skipped: int = 0

    def proportions(self):
        if self.total == 0:
            raise DomainError("histogram has no nonzero values")
        return {k: c / self.total for k, c in self.counts.items()}

    def merge(self, other):
        if (self.base, self.width) != (other.base, other.width):
            raise DomainError("cannot merge histograms with different base or width")
        counts = {k: self.counts[k] + other.counts[k] for k in self.counts}
        return DigitHistogram(
            self.base,
            self.width,
            counts,
            self.total + other.total,
            self.dropped_zeros + other.dropped_zeros,
            self.negatives_folded + other.negatives_folded,
            self.skipped + other.skipped,
        )


@dataclass(frozen=True)
class ConformityReport:
    histogram: DigitHistogram
    expected: LawPrediction
    chi_square: float
    degrees_of_freedom: int
    p_value: float
    mad: float
    max_abs_dev: float
    verdict: Verdict
    thresholds: Thresholds = field(default_factory=Thresholds)


def extract_digits(value, base=10, width=1):
    """Integer formed by the first ``width`` significant digits of ``|value|``.

    Decimal strings are read textually in base 10, so ``"0.0314"`` gives
    ``314`` at width 3 with no binary rounding involved.
    """
    return leading_block(value, base, width)


def _check_shape(base, width):
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if width < 1:
        raise DomainError(f"width must be >= 1, got {width}")


def _leads_float_array(x, base, width):
    """Vectorized leads of positive finite floats; near-boundary values are redone exactly."""
    log_b = math.log(base)
    e = np.floor(np.log(x) / log_b)
    scaled = x * np.power(float(base), width - 1 - e)
    lo, hi = base ** (width - 1), base**width
    # log rounding can put the exponent off by one
    scaled = np.where(scaled >= hi, scaled / base, scaled)
    scaled = np.where(scaled < lo, scaled * base, scaled)
    leads = np.floor(scaled).astype(np.int64)
    edge = np.abs(scaled - np.rint(scaled)) <= 1e-9 * scaled
    for i in np.flatnonzero(edge):
        leads[i] = leading_block(float(x[i]), base, width)
    return leads


def histogram(data, base=10, width=1):
    """Counts of the leading ``width``-digit integer over ``data``.

    Zeros are dropped and negatives folded to their absolute value; both are
    tallied on the result.
    """
    _check_shape(base, width)
    lo, hi = base ** (width - 1), base**width
    counts = dict.fromkeys(range(lo, hi), 0)
    arr = data if isinstance(data, np.ndarray) else None
    if arr is not None and arr.dtype.kind in "fiu":
        arr = arr.astype(float).ravel()
        if arr.size == 0:
            raise DomainError("no data")
        if not np.all(np.isfinite(arr)):
            raise DomainError("data contains non-finite values")
        negatives = int(np.count_nonzero(arr < 0))
        nonzero = np.abs(arr[arr != 0])
        zeros = arr.size - nonzero.size
        if nonzero.size:
            leads, tally = np.unique(_leads_float_array(nonzero, base, width), return_counts=True)
            for lead, c in zip(leads.tolist(), tally.tolist()):
                counts[lead] += c
        return DigitHistogram(base, width, counts, int(nonzero.size), zeros, negatives)

    zeros = negatives = total = 0
    seen = False
    for value in data:
        seen = True
        if _is_negative(value):
            negatives += 1
        try:
            lead = leading_block(value, base, width)
        except DomainError:
            if _is_zero(value):
                zeros += 1
                continue
            raise
        counts[lead] += 1
        total += 1
    if not seen:
        raise DomainError("no data")
    return DigitHistogram(base, width, counts, total, zeros, negatives)


def _as_decimal(value):
    if isinstance(value, str):
        try:
            return Decimal(value.strip())
        except InvalidOperation:
            raise DomainError(f"not a number: {value!r}") from None
    return value


def _is_negative(value):
    v = _as_decimal(value)
    try:
        return v < 0
    except TypeError:
        raise DomainError(f"not a number: {value!r}") from None


def _is_zero(value):
    return _as_decimal(value) == 0


def conformity(hist, expected, thresholds=None):
    """Pearson chi-square, MAD and a threshold verdict of a histogram against a law."""
    thresholds = thresholds or Thresholds()
    if hist.base != expected.base:
        raise DomainError(f"histogram base {hist.base} != law base {expected.base}")
    if expected.position is not None or hist.width != expected.width:
        raise DomainError("law does not describe the histogram's leading-digit blocks")
    missing = set(hist.counts) - set(expected.probabilities)
    if missing:
        raise DomainError(f"law lacks outcomes {sorted(missing)[:5]}")
    if hist.total == 0:
        raise DomainError("histogram has no nonzero values")
    keys = sorted(hist.counts)
    observed = np.array([hist.counts[k] for k in keys], dtype=float)
    probs = np.array([expected.probabilities[k] for k in keys])
    n = hist.total
    dev = observed / n - probs
    with np.errstate(divide="ignore", invalid="ignore"):
        cells = np.where(probs > 0, (observed - n * probs) ** 2 / (n * probs), 0.0)
    if np.any((probs == 0) & (observed > 0)):
        chi2 = math.inf
    else:
        chi2 = float(np.sum(cells))
    dof = len(keys) - 1
    p_value = float(stats.chi2.sf(chi2, dof)) if dof > 0 else 1.0
    mad = float(np.mean(np.abs(dev)))
    return ConformityReport(
        hist,
        expected,
        chi2,
        dof,
        p_value,
        mad,
        float(np.max(np.abs(dev))),
        thresholds.verdict(mad),
        thresholds,
    )


def transform_data(data, kind, param=None):
    """Apply a digit-law invariance transform elementwise.

    ``scale`` multiplies by ``param > 0``; ``power`` maps ``x`` to
    ``sign(x) |x|**param`` with ``param != 0`` (zeros stay zero); ``rebase``
    leaves the data alone, since the base is chosen when the histogram is built.
    """
    x = np.array([float(v) for v in data] if not isinstance(data, np.ndarray) else data, dtype=float)
    if kind == "rebase":
        return x
    if param is None:
        raise DomainError(f"{kind} needs a parameter")
    if kind == "scale":
        if not param > 0:
            raise DomainError(f"scale factor must be positive, got {param}")
        return x * param
    if kind == "power":
        if param == 0 or not math.isfinite(param):
            raise DomainError(f"power must be finite and nonzero, got {param}")
        out = np.zeros_like(x)
        nz = x != 0
        out[nz] = np.sign(x[nz]) * np.abs(x[nz]) ** param
        return out
    raise DomainError(f"unknown transform {kind!r} (expected scale, power or rebase)")


def _sniff_delimiter(first_line):
    return "\t" if "\t" in first_line else ","


def _numeric_cell(cell):
    text = cell.strip().strip('"').strip()
    if not text:
        return None
    try:
        value = Decimal(text)
    except InvalidOperation:
        return None
    return text if value.is_finite() else None


def read_column(path, column=0, delimiter=None):
    """Numeric cells of one column of a comma- or tab-delimited file, as decimal strings.

    ``column`` is a zero-based index or a header name; naming a column makes
    the first row a header. Blank and non-numeric cells are skipped and
    counted. Returns ``(values, skipped)``.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        first = fh.readline()
        fh.seek(0)
        reader = csv.reader(fh, delimiter=delimiter or _sniff_delimiter(first))
        rows = list(reader)
    if not rows:
        raise DomainError(f"{path}: file is empty")
    if isinstance(column, str):
        header = [h.strip() for h in rows[0]]
        if column not in header:
            raise DomainError(f"{path}: no column named {column!r} (have {header})")
        index = header.index(column)
        rows = rows[1:]
    else:
        index = int(column)
        if index < 0 or all(len(r) <= index for r in rows):
            raise DomainError(f"{path}: column index {index} out of range")
    values, skipped = [], 0
    for row in rows:
        cell = _numeric_cell(row[index]) if len(row) > index else None
        if cell is None:
            skipped += 1
        else:
            values.append(cell)
    return values, skipped
