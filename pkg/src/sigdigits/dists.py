"""Positive-support distributions with densities, CDFs, samplers and inverse-Laplace kernels.

A kernel ``f`` of a density ``F`` satisfies ``F(x) = integral f(t) exp(-t x) dt``
over ``t > 0``. The exponential law has a single point-mass kernel, which is
kept as a discrete atom rather than approximated by a narrow continuous bump.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate, special

from .errors import DomainError, NumericalError, UnsupportedError

# Upper support hints are chosen so the omitted tail mass is below this.
TAIL_MASS = 1e-12


@dataclass(frozen=True)
class Kernel:
    """Inverse Laplace transform of a density.

    Exactly one of ``func`` (a function of ``t > 0``) or ``atoms`` (pairs of
    ``(t, weight)`` meaning ``F(x) = sum weight * exp(-t x)``) is set.
    """

    func: Optional[Callable[[float], float]] = None
    atoms: tuple = ()
    sign_definite: bool = True

    def __post_init__(self):
        if (self.func is None) == (not self.atoms):
            raise DomainError("Kernel needs exactly one of func or atoms")

    @property
    def is_atomic(self):
        return self.func is None

    def __call__(self, t):
        if self.is_atomic:
            raise UnsupportedError("point-mass kernel has no pointwise value")
        return self.func(t)

    def log_scale(self, s):
        """Kernel on the logarithmic scale, ``f(e^s)``; integrates to 1 over s."""
        if s > 709.0 or s < -745.0:
            return 0.0
        return self.func(math.exp(s))

    def transform(self, x, epsabs=1e-13):
        """``integral f(t) exp(-t x) dt`` by quadrature (atoms are summed exactly)."""
        if self.is_atomic:
            return math.fsum(w * math.exp(-t * x) for t, w in self.atoms)

        def integrand(s):
            if s > 709.0:
                return 0.0
            return self.log_scale(s) * math.exp(s - x * math.exp(s))

        return _quad_line(integrand, epsabs)

    def normalization(self, absolute=False, epsabs=1e-13):
        """``integral f(t)/t dt``; with ``absolute`` the integrand is ``|f(t)/t|``."""
        if self.is_atomic:
            return math.fsum((abs(w) if absolute else w) / t for t, w in self.atoms)
        g = (lambda s: abs(self.log_scale(s))) if absolute else self.log_scale
        return _quad_line(g, epsabs)


def _quad_line(g, epsabs):
    """Integrate over the whole real line, split at 0 so quad sees each half separately."""
    total, err_total = 0.0, 0.0
    for lo, hi in ((-np.inf, 0.0), (0.0, np.inf)):
        val, err = integrate.quad(g, lo, hi, epsabs=epsabs, epsrel=1e-12, limit=400)
        total += val
        err_total += err
    if err_total > max(1e3 * epsabs, 1e-9):
        raise NumericalError(f"kernel integral did not converge (error estimate {err_total:.3g})")
    return total


@dataclass(frozen=True)
class Distribution:
    """A probability law on ``(0, inf)``.

    ``density`` must be vectorizable over numpy arrays. ``sampler(rng, size)``
    draws from the law using the caller's ``numpy.random.Generator``.
    ``singular_at_zero`` marks an integrable pole at the origin, which
    quadrature handles through the substitution ``x = u**2``.
    """

    name: str
    density: Callable
    cdf: Optional[Callable] = None
    sf: Optional[Callable] = None
    inverse_laplace: Optional[Kernel] = None
    sampler: Optional[Callable] = None
    support_hint: tuple = (0.0, math.inf)
    singular_at_zero: bool = False
    params: dict = field(default_factory=dict)

    @property
    def spec(self):
        if not self.params:
            return self.name
        return self.name + ":" + ",".join(f"{k}={v:g}" for k, v in self.params.items())

    def mass(self, a, b, epsabs=1e-13):
        """Probability of ``[a, b)``; exact via the CDF when available."""
        if b <= a:
            return 0.0
        if self.cdf is not None:
            if self.sf is not None and self.cdf(a) > 0.5:
                return max(float(self.sf(a) - self.sf(b)), 0.0)
            return max(float(self.cdf(b) - self.cdf(a)), 0.0)
        return self.integrate_density(a, b, epsabs)

    def integrate_density(self, a, b, epsabs=1e-13):
        lo, hi = self.support_hint
        a, b = max(a, lo), min(b, hi)
        if b <= a:
            return 0.0
        if self.singular_at_zero:
            g = lambda u: float(self.density(u * u)) * 2.0 * u
            a, b = math.sqrt(a), math.sqrt(b)
        else:
            g = lambda x: float(self.density(x))
        val, err = integrate.quad(g, a, b, epsabs=epsabs, epsrel=1e-12, limit=200)
        if err > max(10 * epsabs, 1e-14):
            raise NumericalError(
                f"quadrature of {self.name} density on [{a:g}, {b:g}) did not converge "
                f"(error estimate {err:.3g})",
                interval=(a, b),
            )
        return val

    def total_mass(self):
        lo, hi = self.support_hint
        return self.integrate_density(lo, hi, epsabs=1e-12)

    def sample(self, rng, size):
        if self.sampler is None:
            raise UnsupportedError(f"{self.name} has no sampler")
        return self.sampler(rng, size)


def _checked(dist):
    mass = dist.total_mass()
    if abs(mass - 1.0) > 1e-8:
        raise NumericalError(f"{dist.spec} density integrates to {mass!r}, not 1")
    return dist


def _positive(name, value):
    if not value > 0:
        raise DomainError(f"{name} must be positive, got {value}")
    return float(value)


def exponential(rate=1.0):
    lam = _positive("rate", rate)
    return _checked(
        Distribution(
            name="exp",
            density=lambda x: lam * np.exp(-lam * np.asarray(x)),
            cdf=lambda x: -np.expm1(-lam * np.asarray(x)),
            sf=lambda x: np.exp(-lam * np.asarray(x)),
            inverse_laplace=Kernel(atoms=((lam, lam),)),
            sampler=lambda rng, size: rng.exponential(1.0 / lam, size),
            support_hint=(0.0, -math.log(TAIL_MASS) / lam),
            params={"rate": lam},
        )
    )


def sqrt_exp():
    """``F(x) = exp(-sqrt x) / (2 sqrt x)`` with kernel ``exp(-1/(4t)) / (2 sqrt(pi t))``.

    The unit-mass member of the ``exp(-sqrt x)/sqrt x`` family.
    """
    c = 0.5 / math.sqrt(math.pi)

    def kernel(t):
        return c / math.sqrt(t) * math.exp(-0.25 / t) if t > 0 else 0.0

    return _checked(
        Distribution(
            name="sqrt_exp",
            density=lambda x: np.exp(-np.sqrt(x)) / (2.0 * np.sqrt(x)),
            cdf=lambda x: -np.expm1(-np.sqrt(x)),
            sf=lambda x: np.exp(-np.sqrt(x)),
            inverse_laplace=Kernel(func=kernel),
            sampler=lambda rng, size: rng.exponential(1.0, size) ** 2,
            support_hint=(0.0, math.log(TAIL_MASS) ** 2),
            singular_at_zero=True,
        )
    )


def quintic_tail():
    """``F(x) = 4 / (x + 1)**5`` with kernel ``t**4 exp(-t) / 6``."""

    def kernel(t):
        return math.exp(4.0 * math.log(t) - t) / 6.0 if t > 0 else 0.0

    return _checked(
        Distribution(
            name="quintic_tail",
            density=lambda x: 4.0 / (np.asarray(x) + 1.0) ** 5,
            cdf=lambda x: 1.0 - (np.asarray(x) + 1.0) ** -4.0,
            sf=lambda x: (np.asarray(x) + 1.0) ** -4.0,
            inverse_laplace=Kernel(func=kernel),
            # inverse CDF; 1 - U and U share a law
            sampler=lambda rng, size: rng.random(size) ** -0.25 - 1.0,
            support_hint=(0.0, TAIL_MASS**-0.25),
        )
    )


def log_uniform(decades=6):
    """Uniform in ``log10 x`` over ``[1, 10**decades)``; exactly Benford in base 10."""
    m = _positive("decades", decades)
    hi = 10.0**m

    def cdf(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return np.clip(np.log10(np.where(x > 0, x, 1.0)) / m, 0.0, 1.0)

    def density(x):
        x = np.asarray(x, dtype=float)
        inside = (x >= 1.0) & (x < hi)
        return np.where(inside, 1.0 / (np.where(inside, x, 1.0) * m * math.log(10.0)), 0.0)

    return _checked(
        Distribution(
            name="loguniform",
            density=density,
            cdf=cdf,
            sampler=lambda rng, size: 10.0 ** (m * rng.random(size)),
            support_hint=(1.0, hi),
            params={"decades": m},
        )
    )


def uniform(upper=1.0):
    u = _positive("upper", upper)
    return _checked(
        Distribution(
            name="uniform",
            density=lambda x: np.where((np.asarray(x) >= 0) & (np.asarray(x) < u), 1.0 / u, 0.0),
            cdf=lambda x: np.clip(np.asarray(x) / u, 0.0, 1.0),
            sampler=lambda rng, size: u * rng.random(size),
            support_hint=(0.0, u),
            params={"upper": u},
        )
    )


def half_normal(sigma=1.0):
    s = _positive("sigma", sigma)
    z = s * math.sqrt(2.0)
    return _checked(
        Distribution(
            name="halfnormal",
            density=lambda x: math.sqrt(2.0 / math.pi) / s * np.exp(-0.5 * (np.asarray(x) / s) ** 2),
            cdf=lambda x: special.erf(np.asarray(x) / z),
            sf=lambda x: special.erfc(np.asarray(x) / z),
            sampler=lambda rng, size: np.abs(rng.normal(0.0, s, size)),
            support_hint=(0.0, s * special.erfcinv(TAIL_MASS) * math.sqrt(2.0)),
            params={"sigma": s},
        )
    )


_FACTORIES = {
    "exp": exponential,
    "sqrt_exp": sqrt_exp,
    "quintic_tail": quintic_tail,
    "loguniform": log_uniform,
    "uniform": uniform,
    "halfnormal": half_normal,
}

_ALIASES = {
    "exponential": "exp",
    "log_uniform": "loguniform",
    "half_normal": "halfnormal",
    "quintic": "quintic_tail",
    "sqrtexp": "sqrt_exp",
}


def catalog():
    """Every catalog family at its default parameters."""
    return [factory() for factory in _FACTORIES.values()]


def get_distribution(name, **params):
    key = _ALIASES.get(name, name)
    if key not in _FACTORIES:
        known = ", ".join(sorted(_FACTORIES))
        raise DomainError(f"unknown distribution {name!r} (known: {known})")
    try:
        return _FACTORIES[key](**params)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {key}: {exc}") from None


def parse_dist_spec(text):
    """Build a distribution from ``name:key=value,key=value``, e.g. ``exp:rate=1``."""
    name, _, rest = text.strip().partition(":")
    params = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq:
            raise DomainError(f"malformed parameter {item!r} in {text!r}")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise DomainError(f"parameter {key.strip()!r} is not a number: {value!r}") from None
    return get_distribution(name, **params)


def verify_pair(dist, probes):
    """Largest ``|integral f(t) exp(-t x) dt - F(x)|`` over the probe points."""
    if dist.inverse_laplace is None:
        raise UnsupportedError(f"{dist.spec} has no inverse Laplace kernel")
    worst = 0.0
    for x in probes:
        if not x > 0:
            raise DomainError(f"probe points must be positive, got {x}")
        worst = max(worst, abs(dist.inverse_laplace.transform(x) - float(dist.density(x))))
    return worst
