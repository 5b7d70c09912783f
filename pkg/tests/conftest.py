"""Shared oracles for the test suite.

The bisection oracle enumerates roots of f^p(x) - x on [0, 1] by exhaustive
sign scanning on a uniform grid followed by bisection refinement.  It is
deliberately independent of the Newton/certification path it is used to
check.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def logistic_pow(mu: float, x: np.ndarray, p: int) -> np.ndarray:
    y = np.asarray(x, dtype=np.float64).copy()
    for _ in range(p):
        y = mu * y * (1.0 - y)
    return y


def bisection_roots(mu: float, p: int, step: float = 1e-6, refine: int = 60):
    """All roots of f^p(x) - x on [0, 1], located by exhaustive scanning."""
    n = int(round(1.0 / step))
    grid = np.linspace(0.0, 1.0, n + 1)
    g = logistic_pow(mu, grid, p) - grid
    roots = [float(grid[i]) for i in np.nonzero(g == 0.0)[0]]
    idx = np.nonzero(g[:-1] * g[1:] < 0.0)[0]
    for i in idx:
        lo, hi = float(grid[i]), float(grid[i + 1])
        glo = float(g[i])
        for _ in range(refine):
            mid = 0.5 * (lo + hi)
            gm = float(logistic_pow(mu, np.array([mid]), p)[0] - mid)
            if gm == 0.0:
                lo = hi = mid
                break
            if (glo < 0.0) == (gm < 0.0):
                lo, glo = mid, gm
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    return sorted(roots)


def true_period_roots(mu: float, p: int, step: float = 1e-6, tol: float = 1e-4):
    """Roots of f^p - id whose actual period is exactly p."""
    roots = bisection_roots(mu, p, step)
    out = []
    for r in roots:
        genuine = True
        for d in range(1, p):
            if p % d == 0:
                if abs(float(logistic_pow(mu, np.array([r]), d)[0]) - r) < tol:
                    genuine = False
                    break
        if genuine:
            out.append(r)
    return out


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240917)
