"""Standard normal density, tail probabilities, and the tail bounds the rounding analysis uses.

All bounds require tau >= 2, where the classical sandwich
phi(tau)/(2 tau) <= Pr[Z >= tau] <= phi(tau)/tau holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = [
    "TailBounds",
    "std_normal_pdf",
    "std_normal_tail",
    "univariate_tail_bounds",
    "bivariate_tail_lower",
    "bivariate_tail_upper",
    "sample_standard_vector",
    "sample_correlated_pairs",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class TailBounds:
    """A certified (lower, upper) probability bracket."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.lower <= self.upper <= 1.0):
            raise ValueError(f"bounds ({self.lower}, {self.upper}) are not an ordered probability pair")


def std_normal_pdf(x):
    """Density of N(0, 1); accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * x * x) / _SQRT_2PI
    return float(out) if out.ndim == 0 else out


def std_normal_tail(tau):
    """Pr[Z >= tau] via the complementary error function.

    erfc keeps full double precision in the far tail, which a naive
    1 - cdf(tau) subtraction would destroy.
    """
    tau = np.asarray(tau, dtype=float)
    out = 0.5 * special.erfc(tau / math.sqrt(2.0))
    return float(out) if out.ndim == 0 else out


def _require_tau(tau: float) -> float:
    tau = float(tau)
    if tau < 2.0:
        raise ValueError(f"tail bounds require tau >= 2, got {tau}")
    return tau


def univariate_tail_bounds(tau: float) -> TailBounds:
    """Bracket phi(tau)/(2 tau) <= Pr[Z >= tau] <= phi(tau)/tau, valid for tau >= 2."""
    tau = _require_tau(tau)
    density = std_normal_pdf(tau)
    return TailBounds(lower=density / (2.0 * tau), upper=density / tau)


def bivariate_tail_lower(tau: float) -> float:
    """Lower bound phi(tau)^2 / (4 tau^2) on Pr[X >= tau, Y >= tau] for
    jointly Gaussian unit pairs with nonnegative correlation, tau >= 2."""
    tau = _require_tau(tau)
    return std_normal_pdf(tau) ** 2 / (4.0 * tau * tau)


def bivariate_tail_upper(tau: float, rho: float) -> float:
    """Upper bound (sqrt(pi)/tau) phi(tau)^2 exp(rho tau^2) on
    Pr[X >= tau, Y >= tau] for unit Gaussian pairs with correlation rho in (-1, 0)."""
    tau = _require_tau(tau)
    rho = float(rho)
    if not -1.0 < rho < 0.0:
        raise ValueError(f"negative-correlation bound requires rho in (-1, 0), got {rho}")
    return (_SQRT_PI / tau) * std_normal_pdf(tau) ** 2 * math.exp(rho * tau * tau)


def sample_standard_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    """One draw from N(0, I_d); deterministic given the generator state."""
    d = int(d)
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return rng.standard_normal(d)


def sample_correlated_pairs(rho: float, size: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Unit Gaussian pairs with correlation rho, via y = rho x + sqrt(1-rho^2) z."""
    rho = float(rho)
    if not -1.0 <= rho <= 1.0:
        raise ValueError(f"correlation must lie in [-1, 1], got {rho}")
    x = rng.standard_normal(size)
    z = rng.standard_normal(size)
    return x, rho * x + math.sqrt(1.0 - rho * rho) * z
