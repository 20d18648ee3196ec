from decimal import Decimal
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sigdigits import (
    DomainError,
    Thresholds,
    conformity,
    extract_digits,
    first_digit_table,
    histogram,
    read_column,
    transform_data,
)
from sigdigits import dists
from sigdigits.digitlaw import LawPrediction, block_table, ith_digit_table
from sigdigits.empirics import Verdict

BENFORD = first_digit_table(10)


@pytest.mark.parametrize(
    "value, width, expected",
    [
        (0.0314, 2, 31),
        (0.0314, 1, 3),
        (0.0314, 3, 314),
        ("0.0314", 3, 314),
        (-2500, 3, 250),
        (0.3, 1, 3),
        (1e-300, 2, 10),
        ("2.5E+3", 3, 250),
        (Decimal("0.000999"), 2, 99),
        (Fraction(1, 3), 4, 3333),
        (7, 1, 7),
    ],
)
def test_extract_digits_base10(value, width, expected):
    assert extract_digits(value, 10, width) == expected


@pytest.mark.parametrize(
    "value, base, width, expected",
    [(5, 2, 3, 0b101), (0.375, 2, 2, 0b11), (255, 16, 2, 0xFF), (Fraction(1, 9), 3, 1, 1), (26, 3, 3, 26)],
)
def test_extract_digits_other_bases(value, base, width, expected):
    assert extract_digits(value, base, width) == expected


@pytest.mark.parametrize("value", [0, 0.0, "0.000", "abc", float("inf"), float("nan"), None])
def test_extract_digits_rejects(value):
    with pytest.raises(DomainError):
        extract_digits(value, 10, 1)


@given(st.fractions(min_value=Fraction(1, 10**9), max_value=10**9), st.integers(-20, 20), st.integers(2, 16), st.integers(1, 3))
def test_extract_digits_shift_invariant(x, n, base, width):
    if x == 0:
        return
    assert extract_digits(x, base, width) == extract_digits(x * Fraction(base) ** n, base, width)


@given(st.decimals(min_value=Decimal("1e-8"), max_value=Decimal("1e8"), allow_nan=False, places=8), st.integers(1, 4))
def test_decimal_string_extraction_is_textual(d, width):
    if d == 0:
        return
    digits = str(d.normalize()).replace(".", "").lstrip("0").split("E")[0]
    expected = int((digits + "0" * width)[:width])
    assert extract_digits(str(d), 10, width) == expected


def test_histogram_examples():
    h = histogram(range(1, 10))
    assert all(c == 1 for c in h.counts.values()) and h.total == 9
    h = histogram([0, -15, 150])
    assert h.counts[1] == 2 and sum(h.counts.values()) == 2
    assert h.dropped_zeros == 1 and h.negatives_folded == 1


def test_histogram_numpy_matches_scalar_path():
    rng = np.random.default_rng(5)
    x = np.concatenate([dists.quintic_tail().sample(rng, 3000), [0.3, 0.2, 2.0, 1e-5, -7.0, 0.0]])
    for base, width in ((10, 1), (10, 2), (2, 3), (7, 2)):
        fast = histogram(x, base, width)
        slow = histogram(x.tolist(), base, width)
        assert fast == slow


def test_histogram_errors():
    with pytest.raises(DomainError):
        histogram([])
    with pytest.raises(DomainError):
        histogram(np.array([]))
    with pytest.raises(DomainError):
        histogram([1, "x"])
    with pytest.raises(DomainError):
        histogram(np.array([1.0, np.inf]))
    with pytest.raises(DomainError):
        histogram([1], 1, 1)


def test_histogram_keys_are_valid_leads():
    h = histogram([123, 0.045, 9.99], 10, 2)
    assert sorted(h.counts) == list(range(10, 100))
    assert sum(h.counts.values()) == h.total == 3


@given(st.lists(st.integers(-10**6, 10**6), min_size=1), st.lists(st.integers(-10**6, 10**6), min_size=1))
def test_histogram_merge_is_a_fold(a, b):
    assert histogram(a).merge(histogram(b)) == histogram(a + b) == histogram(b).merge(histogram(a))


def test_log_uniform_sample_is_benford():
    x = dists.log_uniform(6).sample(np.random.default_rng(42), 10**6)
    props = histogram(x).proportions()
    assert max(abs(props[d] - BENFORD[d]) for d in range(1, 10)) < 0.003


@pytest.mark.parametrize("kind, param", [("scale", 3.0), ("power", 2.0), ("scale", 0.017), ("power", -0.5)])
def test_invariance_transforms_keep_benford(kind, param):
    x = dists.log_uniform(6).sample(np.random.default_rng(42), 10**6)
    props = histogram(transform_data(x, kind, param)).proportions()
    assert max(abs(props[d] - BENFORD[d]) for d in range(1, 10)) < 0.003


@pytest.mark.parametrize("n", [10**4, 10**5])
@pytest.mark.parametrize("kind, param", [("rebase", None), ("scale", 3.0), ("power", 2.0)])
def test_exactly_benford_conforms(n, kind, param):
    x = dists.log_uniform(6).sample(np.random.default_rng(42), n)
    rep = conformity(histogram(transform_data(x, kind, param)), BENFORD)
    assert rep.verdict == Verdict.CONFORMS


def test_scale_one_is_identity():
    data = ["0.0314", "-2500", "0", "7.25", "1e-9", 3, -0.5]
    assert histogram(transform_data(data, "scale", 1.0)) == histogram(data)
    assert histogram(transform_data(data, "scale", 1.0), 10, 2) == histogram(data, 10, 2)


def test_rebase_is_noop():
    x = np.array([1.5, -2.0, 30.0])
    assert np.array_equal(transform_data(x, "rebase"), x)


@pytest.mark.parametrize("kind, param", [("scale", 0.0), ("scale", -2.0), ("power", 0.0), ("spin", 1.0), ("scale", None)])
def test_transform_errors(kind, param):
    with pytest.raises(DomainError):
        transform_data([1.0], kind, param)


def test_power_keeps_zero():
    assert transform_data([0.0, 4.0, -9.0], "power", -0.5).tolist() == [0.0, 0.5, -1 / 3]


def test_conformity_exact_proportions():
    counts = {1: 30, 2: 20, 3: 50}
    law = LawPrediction(10, {1: 0.3, 2: 0.2, 3: 0.5})
    from sigdigits.empirics import DigitHistogram

    rep = conformity(DigitHistogram(10, 1, counts, 100), law)
    assert rep.chi_square == pytest.approx(0.0, abs=1e-12)
    assert rep.degrees_of_freedom == 2
    assert rep.mad == pytest.approx(0.0, abs=1e-15)
    assert rep.verdict == Verdict.CONFORMS


def test_conformity_chi_square_by_hand():
    from sigdigits.empirics import DigitHistogram

    law = LawPrediction(3, {1: 0.5, 2: 0.5})
    rep = conformity(DigitHistogram(3, 1, {1: 60, 2: 40}, 100), law)
    assert rep.chi_square == pytest.approx((10**2 / 50) * 2)
    assert rep.mad == pytest.approx(0.1)
    assert rep.max_abs_dev == pytest.approx(0.1)
    assert rep.verdict == Verdict.VIOLATES


def test_uniform_violates():
    x = dists.uniform().sample(np.random.default_rng(42), 10**5)
    rep = conformity(histogram(x), BENFORD)
    assert rep.verdict == Verdict.VIOLATES
    assert rep.p_value < 1e-12


def test_small_variance_half_normal_violates():
    x = dists.half_normal(0.05).sample(np.random.default_rng(1), 10**5)
    assert conformity(histogram(x), BENFORD).verdict == Verdict.VIOLATES


def test_exponential_within_envelope():
    x = dists.exponential(1.0).sample(np.random.default_rng(42), 10**5)
    assert conformity(histogram(x), BENFORD).mad < 0.03


def test_thresholds_are_configurable():
    t = Thresholds(conforms=0.1, marginal=0.2)
    assert t.verdict(0.05) == Verdict.CONFORMS
    assert t.verdict(0.15) == Verdict.MARGINAL
    assert t.verdict(0.25) == Verdict.VIOLATES
    assert Thresholds().verdict(0.009) == Verdict.MARGINAL


def test_conformity_mismatch_errors():
    h = histogram([1, 2, 3])
    with pytest.raises(DomainError):
        conformity(h, first_digit_table(8))
    with pytest.raises(DomainError):
        conformity(h, block_table(10, 2))
    with pytest.raises(DomainError):
        conformity(h, ith_digit_table(10, 2))
    with pytest.raises(DomainError):
        conformity(h, LawPrediction(10, {1: 0.5, 2: 0.5}))


def test_read_column_csv(tmp_path):
    p = tmp_path / "data.csv"
    p.write_text("name,amount\na,0.0314\nb,\nc,n/a\nd,-2500\ne,1e3\n")
    values, skipped = read_column(p, "amount")
    assert values == ["0.0314", "-2500", "1e3"]
    assert skipped == 2
    values, skipped = read_column(p, 1)
    assert skipped == 3


def test_read_column_tsv(tmp_path):
    p = tmp_path / "data.tsv"
    p.write_text("12\t5\n7\t0.5\n")
    assert read_column(p, 1) == (["5", "0.5"], 0)


def test_read_column_errors(tmp_path):
    p = tmp_path / "data.csv"
    p.write_text("x\n1\n")
    with pytest.raises(DomainError):
        read_column(p, "y")
    with pytest.raises(DomainError):
        read_column(p, 3)
    with pytest.raises(FileNotFoundError):
        read_column(tmp_path / "missing.csv")
