"""Empirical-distribution utilities: standard normal CDF, exact one-sample
Kolmogorov distance against it, the uniform DKW confidence band, and the
regression-slope estimate used by the linearity check."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc


@dataclass
class KolmogorovReport:
    d_stat: float
    count: int
    delta: float
    dkw_epsilon: float
    bound_compared: float | None
    passed: bool | None

    def to_json_dict(self) -> dict:
        return {
            "d_stat": self.d_stat,
            "count": self.count,
            "delta": self.delta,
            "dkw_epsilon": self.dkw_epsilon,
            "bound_compared": self.bound_compared,
            "passed": self.passed,
        }


def normal_cdf(x):
    """Standard normal CDF via the complementary error function; absolute
    error well below 1e-12 over the whole line."""
    x = np.asarray(x, dtype=float)
    out = 0.5 * erfc(-x / math.sqrt(2.0))
    return float(out) if out.ndim == 0 else out


def dkw_epsilon(count: int, delta: float = 0.01) -> float:
    """Half-width sqrt(ln(2/delta) / (2 m)) of the uniform empirical-CDF
    confidence band at level 1 - delta."""
    if count < 1:
        raise ValueError("count must be positive")
    if not (0.0 < delta < 1.0):
        raise ValueError("delta must be in (0, 1)")
    return math.sqrt(math.log(2.0 / delta) / (2.0 * count))


def kolmogorov_distance(
    values, delta: float = 0.01, bound: float | None = None
) -> KolmogorovReport:
    """Exact sup-distance between the empirical CDF of the sample and the
    standard normal CDF, with the DKW band and an optional bound comparison.

    d = max over sorted w_(i) of max(|i/m - Phi(w_(i))|, |(i-1)/m - Phi(w_(i))|).
    """
    w = np.sort(np.asarray(values, dtype=float))
    m = len(w)
    if m < 2:
        raise ValueError("need at least two samples")
    phi = normal_cdf(w)
    i = np.arange(1, m + 1)
    d_stat = float(
        np.maximum(np.abs(i / m - phi), np.abs((i - 1) / m - phi)).max()
    )
    eps = dkw_epsilon(m, delta)
    passed = None if bound is None else bool(d_stat + eps <= bound)
    return KolmogorovReport(
        d_stat=d_stat,
        count=m,
        delta=delta,
        dkw_epsilon=eps,
        bound_compared=bound,
        passed=passed,
    )


def linearity_check(w, w_prime, min_count: int = 1000):
    """Least-squares slope of W' on W with its standard error.

    Under the pair construction E(W'|W) = (1 - a) W, so the slope estimates
    1 - a.
    """
    w = np.asarray(w, dtype=float)
    wp = np.asarray(w_prime, dtype=float)
    if len(w) != len(wp):
        raise ValueError("w and w_prime must have equal length")
    if len(w) < min_count:
        raise ValueError(f"need at least {min_count} pairs, got {len(w)}")
    wc = w - w.mean()
    sxx = float(wc @ wc)
    if sxx == 0.0:
        raise ValueError("degenerate sample: all W values equal")
    slope = float(wc @ (wp - wp.mean())) / sxx
    resid = (wp - wp.mean()) - slope * wc
    dof = len(w) - 2
    stderr = math.sqrt(float(resid @ resid) / dof / sxx)
    return slope, stderr
