"""Sanity-check the Gaussian tail estimates the rounding analysis leans on.

Prints the univariate sandwich phi(tau)/(2 tau) <= Pr[Z >= tau] <= phi(tau)/tau
against an erfc reference, then Monte Carlo estimates of the joint tail
Pr[X >= tau, Y >= tau] for correlated unit pairs against the one-sided bounds
used for edge pairs (nonnegative correlation, lower bound) and non-edge pairs
(negative correlation, upper bound).
"""

import numpy as np

from mbb_sdp import (
    bivariate_tail_lower,
    bivariate_tail_upper,
    sample_correlated_pairs,
    std_normal_tail,
    univariate_tail_bounds,
)

PAIRS = 2_000_000
TAU = 2.0


def main():
    print("univariate tail, lower < truth < upper")
    for tau in (2.0, 2.5, 3.0, 3.5, 4.0):
        b = univariate_tail_bounds(tau)
        truth = std_normal_tail(tau)
        print(f"  tau={tau:3.1f}   {b.lower:.6e} < {truth:.6e} < {b.upper:.6e}")

    print()
    print(f"joint tail at tau={TAU}, {PAIRS:,} sampled pairs per correlation")
    rng = np.random.default_rng(7)
    for rho in (0.0, 0.3, 0.8):
        x, y = sample_correlated_pairs(rho, PAIRS, rng)
        est = np.count_nonzero((x >= TAU) & (y >= TAU)) / PAIRS
        bound = bivariate_tail_lower(TAU)
        print(f"  rho={rho:+.1f}   estimate {est:.6e}  >=  lower bound {bound:.6e}")
    for rho in (-0.1, -0.5, -0.9):
        x, y = sample_correlated_pairs(rho, PAIRS, rng)
        est = np.count_nonzero((x >= TAU) & (y >= TAU)) / PAIRS
        bound = bivariate_tail_upper(TAU, rho)
        print(f"  rho={rho:+.1f}   estimate {est:.6e}  <=  upper bound {bound:.6e}")

    print()
    print("The lower bound is what keeps planted-pair survivors together;")
    print("the exp(rho tau^2) factor in the upper bound is what starves")
    print("anticorrelated non-edge pairs out of the survivor subgraph.")


if __name__ == "__main__":
    main()
