import math

import numpy as np
import pytest
from scipy import integrate, stats

from sigdigits import DomainError, UnsupportedError, catalog, get_distribution, parse_dist_spec, verify_pair
from sigdigits import dists
from sigdigits.dists import Kernel

PROBES = [0.5, 1.0, 2.0]
ALL = catalog()


def test_catalog_names():
    names = {d.name for d in ALL}
    assert names >= {"exp", "sqrt_exp", "quintic_tail", "loguniform", "uniform", "halfnormal"}


@pytest.mark.parametrize("dist", ALL, ids=lambda d: d.spec)
def test_density_integrates_to_one(dist):
    assert dist.total_mass() == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("dist", ALL, ids=lambda d: d.spec)
def test_cdf_matches_integrated_density(dist):
    lo, hi = dist.support_hint
    for x in np.geomspace(max(lo, 1e-6), hi, 12)[1:-1][:10]:
        assert float(dist.cdf(x)) == pytest.approx(dist.integrate_density(lo, x), abs=1e-8)


@pytest.mark.parametrize("dist", ALL, ids=lambda d: d.spec)
def test_cdf_nondecreasing_to_one(dist):
    xs = np.geomspace(1e-8, dist.support_hint[1] * 10, 400)
    values = np.asarray(dist.cdf(xs))
    assert np.all(np.diff(values) >= 0)
    assert values[-1] == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("dist", ALL, ids=lambda d: d.spec)
def test_upper_hint_hides_little_mass(dist):
    assert 1.0 - float(dist.cdf(dist.support_hint[1])) < 1e-11


@pytest.mark.parametrize("dist", ALL, ids=lambda d: d.spec)
def test_sampler_kolmogorov_distance(dist):
    draws = dist.sample(np.random.default_rng(7), 10**5)
    assert np.all(draws > 0) or dist.name == "uniform"
    d_stat = stats.kstest(draws, lambda x: np.asarray(dist.cdf(x))).statistic
    assert d_stat < 0.01


def test_sampler_is_reproducible():
    d = dists.quintic_tail()
    a = d.sample(np.random.default_rng(3), 50)
    b = d.sample(np.random.default_rng(3), 50)
    assert np.array_equal(a, b)


def test_sqrt_exp_kernel_formula():
    k = dists.sqrt_exp().inverse_laplace
    for t in (0.1, 1.0, 3.0):
        # unit-mass scaling of 2/sqrt(pi t) exp(-1/(4t))
        assert k(t) == pytest.approx(0.25 * 2 / math.sqrt(math.pi * t) * math.exp(-1 / (4 * t)), rel=1e-14)


def test_quintic_kernel_formula():
    k = dists.quintic_tail().inverse_laplace
    for t in (0.5, 1.0, 4.0, 20.0):
        assert k(t) == pytest.approx(t**4 * math.exp(-t) / 6, rel=1e-13)


def test_exponential_cdf():
    d = dists.exponential(1.0)
    for x in (0.1, 1.0, 5.0):
        assert float(d.cdf(x)) == pytest.approx(1 - math.exp(-x), abs=1e-15)


def test_verify_pair_point_mass_is_exact():
    assert verify_pair(dists.exponential(1.0), PROBES) == pytest.approx(0.0, abs=1e-15)
    assert verify_pair(dists.exponential(2.5), PROBES) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("make", [dists.sqrt_exp, dists.quintic_tail], ids=["sqrt_exp", "quintic_tail"])
def test_verify_pair_continuous(make):
    assert verify_pair(make(), PROBES) < 1e-6


def test_verify_pair_independent_quadrature():
    # plain quad over t, no log substitution
    d = dists.quintic_tail()
    for x in PROBES:
        val = integrate.quad(lambda t: d.inverse_laplace(t) * math.exp(-t * x), 0, np.inf, epsabs=1e-13)[0]
        assert val == pytest.approx(float(d.density(x)), abs=1e-10)


def test_verify_pair_requires_kernel():
    with pytest.raises(UnsupportedError):
        verify_pair(dists.uniform(), PROBES)


@pytest.mark.parametrize("dist", [d for d in ALL if d.inverse_laplace], ids=lambda d: d.spec)
def test_kernel_normalization(dist):
    assert dist.inverse_laplace.normalization() == pytest.approx(1.0, abs=1e-6)
    assert dist.inverse_laplace.normalization(absolute=True) == pytest.approx(1.0, abs=1e-6)


def test_kernel_needs_exactly_one_form():
    with pytest.raises(DomainError):
        Kernel()
    with pytest.raises(DomainError):
        Kernel(func=math.exp, atoms=((1.0, 1.0),))
    with pytest.raises(UnsupportedError):
        Kernel(atoms=((1.0, 1.0),))(1.0)


@pytest.mark.parametrize(
    "text, name, params",
    [
        ("exp:rate=1", "exp", {"rate": 1.0}),
        ("exponential:rate=2.5", "exp", {"rate": 2.5}),
        ("loguniform:decades=6", "loguniform", {"decades": 6.0}),
        ("sqrt_exp", "sqrt_exp", {}),
        ("halfnormal:sigma=0.1", "halfnormal", {"sigma": 0.1}),
    ],
)
def test_parse_dist_spec(text, name, params):
    d = parse_dist_spec(text)
    assert d.name == name
    assert d.params == params


@pytest.mark.parametrize("text", ["nope", "exp:rate", "exp:rate=x", "exp:scale=1", "exp:rate=-1"])
def test_parse_dist_spec_errors(text):
    with pytest.raises(DomainError):
        parse_dist_spec(text)


def test_spec_round_trip():
    d = get_distribution("loguniform", decades=3)
    assert parse_dist_spec(d.spec).params == d.params
