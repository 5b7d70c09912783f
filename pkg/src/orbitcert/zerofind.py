"""Zero-finding setup for period-p orbits and numerical candidate generation.

A period-p orbit of f is a zero of the cyclic map

    F(x)_0 = f(x_{p-1}) - x_0,    F(x)_k = f(x_{k-1}) - x_k  (k = 1..p-1),

whose Jacobian has -1 on the diagonal and f' entries on the cyclic
subdiagonal.  Candidates are produced in plain floats (forward iteration
with recurrence detection plus random multistart), refined by Newton's
method, and deduplicated up to cyclic rotation; everything rigorous happens
later in :mod:`orbitcert.certify`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .interval import IntervalVector
from .maps import MapDef

__all__ = [
    "Candidate",
    "NewtonFailure",
    "build_F",
    "build_DF",
    "newton_refine",
    "approx_inverse",
    "canonicalize_orbit",
    "seed_candidates",
]

NEWTON_TOL = 1e-14
NEWTON_MAX_ITER = 50
DEDUP_RADIUS = 1e-8


class NewtonFailure(RuntimeError):
    """Newton iteration did not produce a usable candidate."""


@dataclass
class Candidate:
    """A numerical approximate orbit with its approximate inverse Jacobian."""

    map_id: str
    params: dict[str, float]
    period: int
    x_bar: np.ndarray
    A: np.ndarray | None = None
    residual: float = math.inf
    newton_iters: int = 0
    residual_history: list[float] = field(default_factory=list)

    def canonical(self) -> np.ndarray:
        return canonicalize_orbit(self.x_bar)


def build_F(m: MapDef, p: int, x, mode: str = "native"):
    """The period-p zero-finding map; row k holds f(x_{k-1 mod p}) - x_k."""
    if mode == "native":
        x = np.asarray(x, dtype=np.float64)
        if x.size != p * m.dim:
            raise ValueError(f"expected {p * m.dim} coordinates, got {x.size}")
        out = np.empty_like(x)
        for k in range(p):
            out[k] = m.f(x[(k - 1) % p]) - x[k]
        return out
    if mode == "rigorous":
        xi = _as_interval_vector(x, p * m.dim)
        rows = []
        for k in range(p):
            rows.append(m.f_iv(xi[(k - 1) % p]) - xi[k])
        return IntervalVector.from_intervals(rows)
    raise ValueError(f"unknown mode {mode!r}")


def build_DF(m: MapDef, p: int, x, mode: str = "native"):
    """Jacobian of build_F: -1 diagonal, f'(x_{k-1}) in the cyclic pattern."""
    if mode == "native":
        x = np.asarray(x, dtype=np.float64)
        J = -np.eye(p)
        for k in range(p):
            J[k, (k - 1) % p] += m.df(x[(k - 1) % p])
        return J
    if mode == "rigorous":
        from .interval import IntervalMatrix

        xi = _as_interval_vector(x, p * m.dim)
        lo = -np.eye(p)
        hi = -np.eye(p)
        for k in range(p):
            d = m.df_iv(xi[(k - 1) % p])
            j = (k - 1) % p
            if j == k:  # p = 1: single entry f'(x_0) - 1
                e = d - 1
                lo[k, j], hi[k, j] = e.lo, e.hi
            else:
                lo[k, j], hi[k, j] = d.lo, d.hi
        return IntervalMatrix(lo, hi)
    raise ValueError(f"unknown mode {mode!r}")


def _as_interval_vector(x, size: int) -> IntervalVector:
    if isinstance(x, IntervalVector):
        v = x
    else:
        v = IntervalVector.from_floats(np.asarray(x, dtype=np.float64))
    if len(v) != size:
        raise ValueError(f"expected {size} coordinates, got {len(v)}")
    return v


def newton_refine(
    m: MapDef,
    p: int,
    x0,
    tol: float = NEWTON_TOL,
    max_iter: int = NEWTON_MAX_ITER,
) -> Candidate:
    """Refine a candidate orbit by Newton's method on build_F.

    Raises :class:`NewtonFailure` on a singular Jacobian or when the
    residual does not reach ``tol`` within ``max_iter`` steps.  The residual
    history is recorded so callers can inspect the quadratic-convergence
    diagnostic.
    """
    x = np.asarray(x0, dtype=np.float64).copy()
    history = [float(np.abs(build_F(m, p, x)).sum())]
    iters = 0
    for iters in range(1, max_iter + 1):
        if history[-1] <= tol:
            iters -= 1
            break
        J = build_DF(m, p, x)
        try:
            step = np.linalg.solve(J, build_F(m, p, x))
        except np.linalg.LinAlgError as exc:
            raise NewtonFailure(f"singular Jacobian at iteration {iters}") from exc
        x = x - step
        if not np.all(np.isfinite(x)):
            raise NewtonFailure("iterates diverged to non-finite values")
        history.append(float(np.abs(build_F(m, p, x)).sum()))
    residual = history[-1]
    if residual > tol:
        raise NewtonFailure(
            f"no convergence: residual {residual:.3e} > tol {tol:.1e} "
            f"after {max_iter} iterations"
        )
    A = approx_inverse(build_DF(m, p, x))
    return Candidate(
        map_id=m.map_id,
        params=dict(m.params_native),
        period=p,
        x_bar=x,
        A=A,
        residual=residual,
        newton_iters=iters,
        residual_history=history,
    )


def approx_inverse(J: np.ndarray) -> np.ndarray:
    """Float approximate inverse of the Jacobian (quality is judged by Z1)."""
    J = np.asarray(J, dtype=np.float64)
    if J.ndim != 2 or J.shape[0] != J.shape[1]:
        raise ValueError("Jacobian must be square")
    try:
        return np.linalg.inv(J)
    except np.linalg.LinAlgError as exc:
        raise NewtonFailure("numerically singular Jacobian") from exc


def canonicalize_orbit(x) -> np.ndarray:
    """Rotate orbit coordinates so the minimal entry comes first.

    Idempotent and invariant under cyclic shifts, which makes deduplication
    of rotated copies of one orbit a plain distance check.
    """
    x = np.asarray(x, dtype=np.float64)
    k = int(np.argmin(x))
    return np.roll(x, -k)


def _dedup(cands: list[Candidate], radius: float) -> list[Candidate]:
    ordered = sorted(cands, key=lambda c: tuple(c.canonical()))
    kept: list[Candidate] = []
    for c in ordered:
        cc = c.canonical()
        dup = any(
            np.abs(cc - k.canonical()).sum() < radius for k in kept
        )
        if not dup:
            kept.append(c)
    return kept


def seed_candidates(
    m: MapDef,
    p: int,
    budget: int,
    rng: np.random.Generator | None = None,
    strategy: str = "both",
    tol: float = NEWTON_TOL,
    dedup_radius: float = DEDUP_RADIUS,
) -> list[Candidate]:
    """Generate refined, deduplicated period-p candidates.

    ``strategy`` selects forward iteration with near-recurrence detection
    ("iterate"), Newton from random p-vectors ("random"), or both.  An empty
    result simply means no seed converged.  Output order is deterministic
    (canonical forms sorted lexicographically) for a fixed rng state.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if rng is None:
        rng = np.random.default_rng(0)
    lo, hi = m.seed_box()
    seeds: list[np.ndarray] = []

    if strategy in ("iterate", "both"):
        n_tracks = max(4, budget // 8)
        for _ in range(n_tracks):
            z = rng.uniform(lo, hi)
            ok = True
            for _ in range(200):  # burn-in toward an attractor
                z = m.f(z)
                if not math.isfinite(z) or abs(z) > 1e8:
                    ok = False
                    break
            if not ok:
                continue
            orbit = [z]
            for _ in range(p - 1):
                orbit.append(m.f(orbit[-1]))
            if abs(m.f(orbit[-1]) - orbit[0]) < 0.05 * max(1.0, hi - lo):
                seeds.append(np.array(orbit))

    if strategy in ("random", "both"):
        for _ in range(budget):
            seeds.append(rng.uniform(lo, hi, size=p))

    out: list[Candidate] = []
    for s in seeds:
        try:
            out.append(newton_refine(m, p, s, tol=tol))
        except NewtonFailure:
            continue
    box_lo, box_hi = lo - 2 * (hi - lo) - 1, hi + 2 * (hi - lo) + 1
    out = [
        c for c in out
        if np.all(c.x_bar >= box_lo) and np.all(c.x_bar <= box_hi)
    ]
    return _dedup(out, dedup_radius)
