"""Uniform contraction certificates for period-doubling candidate curves.

For the predator-prey map f(x) = beta + x + kappa*h(x), h(x) = -1/(1+e^x),
a period-doubling of a period-p orbit is recast as a zero of the extended
map (periodicity rows stacked with the multiplier-equals-minus-one rows)

    F_k = f(x_{k-1 mod p}) - x_k,
    G_0 = f'(x_{p-1}) u_{p-2} ... u_0 + 1,
    G_k = f'(x_{k-1}) - u_{k-1},          w = (x, u, beta),

with kappa reparametrized over a window [kappa_1, kappa_2] by
kappa(alpha) = kappa_1 + (alpha+1)(kappa_2-kappa_1)/2, alpha in [-1, 1].
Solving at Chebyshev nodes and interpolating yields polynomial families
w_bar(alpha) and A(alpha); uniform Y/Z1/Z2 bounds over alpha then follow
from the l1 sequence algebra, with the non-polynomial part of h controlled
through a Taylor split around per-coordinate centers chi_i and the
remainder supremum of h^(N+1) (691/8 for N = 10).

A verified radius r means: for every alpha there is exactly one zero
w*(alpha) within l1 distance r of w_bar(alpha), and alpha -> w*(alpha) is
continuous, so beta*(kappa) is a genuine curve of period-doubling
candidates (non-degeneracy of the crossing is not claimed).

Only p in {1, 2} ship; the p = 1 curve has the closed form
kappa = beta^2/(beta+2), which the tests use as a free oracle.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .certify import RadiiSelection, _radii_conditions_hold, select_radius
from .cheb import ChebOpMatrix, ChebSeq, cheb_interpolate, cheb_nodes, seq_vec_norm
from .interval import Interval, IntervalMatrix, IntervalVector
from .maps import (
    SigmoidJet,
    make_map,
    sigma_iv,
    sigmoid_derivative,
    sigmoid_derivative_sup,
    taylor_jet,
)

__all__ = [
    "ExtendedCandidate",
    "CurveCertificate",
    "ContinuationError",
    "SUPPORTED_PERIODS",
    "kappa_of_alpha",
    "kappa_seq",
    "build_extended_F",
    "extended_DF_native",
    "analytic_p1_beta",
    "analytic_p1_seed",
    "find_doubling_seed",
    "node_solve",
    "uniform_bounds",
    "certify_curve",
    "patch_curves",
    "certify_window_adaptive",
    "pointwise_extended_certify",
    "curve_samples",
    "curve_certificate_to_json",
]

SUPPORTED_PERIODS = (1, 2)
DEFAULT_K = 16
DEFAULT_N = 10
DEFAULT_R = 1e-2
MIN_WINDOW_WIDTH = 1.0 / 16.0

NODE_TOL = 1e-12
NODE_MAX_ITER = 60


class ContinuationError(RuntimeError):
    """Node continuation failed (Newton breakdown or fold indicator)."""


# ---------------------------------------------------------------------------
# Parameter window.
# ---------------------------------------------------------------------------

def kappa_of_alpha(window: tuple[float, float], alpha):
    """kappa(alpha) = kappa_1 + (alpha+1)(kappa_2-kappa_1)/2."""
    k1, k2 = window
    if isinstance(alpha, Interval):
        return k1 + (alpha + 1) * ((Interval.point(k2) - k1) * 0.5)
    return k1 + (alpha + 1.0) * 0.5 * (k2 - k1)


def kappa_seq(window: tuple[float, float]) -> ChebSeq:
    """kappa(alpha) as a degree-1 sequence; its l1 norm is
    |kappa_1+kappa_2|/2 + |kappa_2-kappa_1|/2."""
    k1, k2 = window
    mid = (Interval.point(k1) + k2) * 0.5
    slope_half = (Interval.point(k2) - k1) * 0.25  # halved first coefficient
    return ChebSeq.from_intervals([mid, slope_half])


# ---------------------------------------------------------------------------
# Extended map: native and interval evaluation with Taylor splits.
# ---------------------------------------------------------------------------

def _check_period(p: int) -> None:
    if p not in SUPPORTED_PERIODS:
        raise ValueError(f"period {p} not supported (only {SUPPORTED_PERIODS})")


def _split_w(p: int, w):
    x = w[:p]
    u = w[p : 2 * p - 1]
    beta = w[2 * p - 1]
    return x, u, beta


def _h_native(x: float) -> float:
    if x >= 0.0:
        t = math.exp(-x)
        return 1.0 / (1.0 + t) - 1.0
    t = math.exp(x)
    return t / (1.0 + t) - 1.0


def _h1_native(x: float) -> float:
    s = 1.0 / (1.0 + math.exp(-x)) if x >= 0.0 else math.exp(x) / (1.0 + math.exp(x))
    return s * (1.0 - s)


def _h2_native(x: float) -> float:
    s = 1.0 / (1.0 + math.exp(-x)) if x >= 0.0 else math.exp(x) / (1.0 + math.exp(x))
    return s * (1.0 - s) * (1.0 - 2.0 * s)


def extended_F_native(p: int, w, alpha: float, window) -> np.ndarray:
    _check_period(p)
    w = np.asarray(w, dtype=np.float64)
    x, u, beta = _split_w(p, w)
    kap = kappa_of_alpha(window, alpha)
    out = np.empty(2 * p)
    for k in range(p):
        xm = x[(k - 1) % p]
        out[k] = beta + xm + kap * _h_native(xm) - x[k]
    uprod = float(np.prod(u)) if p > 1 else 1.0
    out[p] = (1.0 + kap * _h1_native(x[p - 1])) * uprod + 1.0
    for k in range(1, p):
        out[p + k] = 1.0 + kap * _h1_native(x[k - 1]) - u[k - 1]
    return out


def extended_DF_native(p: int, w, alpha: float, window) -> np.ndarray:
    _check_period(p)
    w = np.asarray(w, dtype=np.float64)
    x, u, beta = _split_w(p, w)
    kap = kappa_of_alpha(window, alpha)
    n = 2 * p
    J = np.zeros((n, n))
    for k in range(p):
        jm = (k - 1) % p
        J[k, jm] += 1.0 + kap * _h1_native(x[jm])
        J[k, k] += -1.0
        J[k, n - 1] = 1.0
    # G_0 row
    uprod = float(np.prod(u)) if p > 1 else 1.0
    J[p, p - 1] = kap * _h2_native(x[p - 1]) * uprod
    for j in range(p - 1):
        others = float(np.prod(np.delete(u, j))) if p > 2 else 1.0
        J[p, p + j] = (1.0 + kap * _h1_native(x[p - 1])) * others
    for k in range(1, p):
        J[p + k, k - 1] = kap * _h2_native(x[k - 1])
        J[p + k, p + k - 1] = -1.0
    return J


def _jets_for(p: int, chi: list[Interval], N: int) -> list[SigmoidJet]:
    return [taylor_jet(chi_i, N) for chi_i in chi]


def build_extended_F(
    p: int,
    w,
    alpha,
    window,
    mode: str = "native",
    split: str = "full",
    chi: list[Interval] | None = None,
    N: int = DEFAULT_N,
):
    """Extended map evaluation.

    mode 'native' evaluates in floats (split must be 'full'); mode
    'rigorous' returns an IntervalVector and supports the Taylor split:
    'full' uses the exact sigmoid, 'poly' substitutes the degree-N Taylor
    polynomials around the centers chi, and 'remainder' returns full minus
    poly (so poly + remainder always encloses full).
    """
    _check_period(p)
    if mode == "native":
        if split != "full":
            raise ValueError("native evaluation has no Taylor split")
        return extended_F_native(p, w, float(alpha), window)
    if mode != "rigorous":
        raise ValueError(f"unknown mode {mode!r}")

    wi = w if isinstance(w, IntervalVector) else IntervalVector.from_floats(
        np.asarray(w, dtype=np.float64)
    )
    ai = alpha if isinstance(alpha, Interval) else Interval.point(float(alpha))
    if split == "full":
        return _extended_F_iv_full(p, wi, ai, window)
    if chi is None:
        raise ValueError("poly/remainder splits need expansion centers chi")
    jets = _jets_for(p, chi, N)
    if split == "poly":
        return _extended_F_iv_poly(p, wi, ai, window, jets)
    if split == "remainder":
        full = _extended_F_iv_full(p, wi, ai, window)
        poly = _extended_F_iv_poly(p, wi, ai, window, jets)
        return full - poly
    raise ValueError(f"unknown split {split!r}")


def _extended_F_iv_full(p, w: IntervalVector, alpha: Interval, window) -> IntervalVector:
    x = [w[i] for i in range(p)]
    u = [w[p + i] for i in range(p - 1)]
    beta = w[2 * p - 1]
    kap = kappa_of_alpha(window, alpha)
    rows = []
    for k in range(p):
        xm = x[(k - 1) % p]
        h = sigma_iv(xm) - 1
        rows.append(beta + xm + kap * h - x[k])
    uprod = Interval.point(1.0)
    for ui in u:
        uprod = uprod * ui
    rows.append((1 + kap * sigmoid_derivative(1, x[p - 1])) * uprod + 1)
    for k in range(1, p):
        rows.append(1 + kap * sigmoid_derivative(1, x[k - 1]) - u[k - 1])
    return IntervalVector.from_intervals(rows)


def _extended_F_iv_poly(
    p, w: IntervalVector, alpha: Interval, window, jets: list[SigmoidJet]
) -> IntervalVector:
    x = [w[i] for i in range(p)]
    u = [w[p + i] for i in range(p - 1)]
    beta = w[2 * p - 1]
    kap = kappa_of_alpha(window, alpha)
    rows = []
    for k in range(p):
        i = (k - 1) % p
        rows.append(beta + x[i] + kap * jets[i].eval_poly(x[i]) - x[k])
    uprod = Interval.point(1.0)
    for ui in u:
        uprod = uprod * ui
    rows.append((1 + kap * jets[p - 1].eval_poly_deriv(x[p - 1])) * uprod + 1)
    for k in range(1, p):
        i = k - 1
        rows.append(1 + kap * jets[i].eval_poly_deriv(x[i]) - u[i])
    return IntervalVector.from_intervals(rows)


def extended_DF_iv(p: int, w, alpha, window) -> IntervalMatrix:
    """Rigorous Jacobian of the extended map (full nonlinearity)."""
    _check_period(p)
    wi = w if isinstance(w, IntervalVector) else IntervalVector.from_floats(
        np.asarray(w, dtype=np.float64)
    )
    ai = alpha if isinstance(alpha, Interval) else Interval.point(float(alpha))
    x = [wi[i] for i in range(p)]
    u = [wi[p + i] for i in range(p - 1)]
    kap = kappa_of_alpha(window, ai)
    n = 2 * p
    lo = np.zeros((n, n))
    hi = np.zeros((n, n))

    def put(i, j, v: Interval):
        lo[i, j], hi[i, j] = v.lo, v.hi

    for k in range(p):
        jm = (k - 1) % p
        d = 1 + kap * sigmoid_derivative(1, x[jm])
        if jm == k:
            put(k, jm, d - 1)
        else:
            put(k, jm, d)
            put(k, k, Interval.point(-1.0))
        put(k, n - 1, Interval.point(1.0))
    uprod = Interval.point(1.0)
    for ui in u:
        uprod = uprod * ui
    put(p, p - 1, kap * sigmoid_derivative(2, x[p - 1]) * uprod)
    for j in range(p - 1):
        others = Interval.point(1.0)
        for i2, ui in enumerate(u):
            if i2 != j:
                others = others * ui
        put(p, p + j, (1 + kap * sigmoid_derivative(1, x[p - 1])) * others)
    for k in range(1, p):
        put(p + k, k - 1, kap * sigmoid_derivative(2, x[k - 1]))
        put(p + k, p + k - 1, Interval.point(-1.0))
    return IntervalMatrix(lo, hi)


# ---------------------------------------------------------------------------
# Seeds.
# ---------------------------------------------------------------------------

def analytic_p1_beta(kappa: float) -> float:
    """beta on the steep branch (beta < -4) of kappa = beta^2/(beta+2)."""
    disc = kappa * kappa + 8.0 * kappa
    if disc < 0.0:
        raise ValueError(f"no real fixed-point doubling for kappa={kappa} > -8")
    return 0.5 * (kappa - math.sqrt(disc))


def analytic_p1_seed(kappa: float) -> np.ndarray:
    """Exact-formula seed (x_fp, beta) for the fixed-point doubling curve."""
    beta = analytic_p1_beta(kappa)
    x = math.log(kappa / beta - 1.0)
    return np.array([x, beta])


def find_doubling_seed(
    p: int,
    kappa: float,
    beta_range: tuple[float, float],
    n_scan: int = 200,
    budget: int = 120,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Locate w with a period-p orbit of multiplier -1 at fixed kappa.

    One period-p orbit is found at the start of the beta range (forward
    iteration plus Newton), then continued along a beta grid; the first
    sign change of (multiplier + 1) is refined by bisection on the
    continued branch.  The result is assembled into an extended-system
    vector and polished by Newton.
    """
    from .zerofind import NewtonFailure, newton_refine, seed_candidates

    _check_period(p)
    if rng is None:
        rng = np.random.default_rng(12345)

    def continue_orbit(orbit: np.ndarray, beta: float) -> tuple[np.ndarray, float]:
        m = make_map("predprey", beta=beta, kappa=kappa)
        cand = newton_refine(m, p, orbit)
        if p > 1 and np.abs(np.diff(np.sort(cand.x_bar))).min() < 1e-8:
            raise NewtonFailure("collapsed onto a lower-period orbit")
        mult = float(np.prod([m.df(x) for x in cand.x_bar]))
        return cand.x_bar, mult

    betas = np.linspace(beta_range[0], beta_range[1], n_scan)
    orbit = None
    start_idx = 0
    for i, b in enumerate(betas):
        m = make_map("predprey", beta=float(b), kappa=kappa)
        cands = [
            c for c in seed_candidates(m, p, budget=budget, rng=rng)
            if p == 1 or np.abs(np.diff(np.sort(c.x_bar))).min() > 1e-8
        ]
        if cands:
            orbit = cands[0].x_bar
            start_idx = i
            break
    if orbit is None:
        raise ContinuationError(
            f"no period-{p} orbit found along beta in {beta_range} at kappa={kappa}"
        )
    prev_b = float(betas[start_idx])
    _, prev_m = continue_orbit(orbit, prev_b)
    bracket = None
    for b in betas[start_idx + 1 :]:
        try:
            orbit, mult = continue_orbit(orbit, float(b))
        except NewtonFailure as exc:
            raise ContinuationError(f"orbit continuation lost at beta={b}: {exc}") from exc
        if (prev_m + 1.0) * (mult + 1.0) < 0.0:
            bracket = (prev_b, float(b))
            break
        prev_b, prev_m = float(b), mult
    if bracket is None:
        raise ContinuationError(
            f"no multiplier -1 crossing for p={p}, kappa={kappa} in {beta_range}"
        )
    lo_b, hi_b = bracket
    _, lo_m = continue_orbit(orbit, lo_b)
    for _ in range(80):
        mid = 0.5 * (lo_b + hi_b)
        orbit, mid_m = continue_orbit(orbit, mid)
        if (lo_m + 1.0) * (mid_m + 1.0) <= 0.0:
            hi_b = mid
        else:
            lo_b, lo_m = mid, mid_m
        if hi_b - lo_b < 1e-12:
            break
    beta = 0.5 * (lo_b + hi_b)
    orbit, _ = continue_orbit(orbit, beta)
    m = make_map("predprey", beta=beta, kappa=kappa)
    u = [m.df(orbit[k]) for k in range(p - 1)]
    w0 = np.concatenate([orbit, u, [beta]])
    window = (kappa, kappa + 1.0)
    try:
        return _newton_extended(p, w0, -1.0, window)
    except NewtonFailure as exc:
        raise ContinuationError(f"extended polish failed: {exc}") from exc


def _newton_extended(
    p: int, w0: np.ndarray, alpha: float, window,
    tol: float = NODE_TOL, max_iter: int = NODE_MAX_ITER,
) -> np.ndarray:
    from .zerofind import NewtonFailure

    w = np.asarray(w0, dtype=np.float64).copy()
    for _ in range(max_iter):
        F = extended_F_native(p, w, alpha, window)
        if np.abs(F).sum() <= tol:
            return w
        try:
            step = np.linalg.solve(extended_DF_native(p, w, alpha, window), F)
        except np.linalg.LinAlgError as exc:
            raise NewtonFailure("singular extended Jacobian") from exc
        w = w - step
        if not np.all(np.isfinite(w)):
            raise NewtonFailure("extended iterates diverged")
    if np.abs(extended_F_native(p, w, alpha, window)).sum() <= tol:
        return w
    raise NewtonFailure(f"no convergence at alpha={alpha}")


# ---------------------------------------------------------------------------
# Candidate curves.
# ---------------------------------------------------------------------------

@dataclass
class ExtendedCandidate:
    """Interpolated approximate solution family over one kappa window."""

    period: int
    window: tuple[float, float]
    K: int
    N: int
    w_bar: list[ChebSeq]
    A_cheb: ChebOpMatrix
    chi: list[Interval]
    node_w: np.ndarray
    node_residuals: np.ndarray


@dataclass
class CurveCertificate:
    """Uniform-contraction proof record for one window."""

    candidate: ExtendedCandidate
    R: float
    Y: Interval | None = None
    Z1: Interval | None = None
    Z2: Interval | None = None
    r_minus: Interval | None = None
    r_plus: Interval | None = None
    r_star: float | None = None
    r_tight: float | None = None
    r_uniqueness: float | None = None
    verified: bool = False
    reason: str | None = None
    endpoint_lo: IntervalVector | None = None  # w_bar(-1)
    endpoint_hi: IntervalVector | None = None  # w_bar(+1)


def node_solve(
    p: int,
    window: tuple[float, float],
    K: int = DEFAULT_K,
    w0=None,
    N: int = DEFAULT_N,
    tol: float = NODE_TOL,
) -> ExtendedCandidate:
    """Continuation through the Chebyshev nodes of a window.

    w0 is the initial guess at alpha = -1 (left edge); each solved node
    seeds the next.  Aborts on Newton failure or on a sign flip of any
    eigen-direction coordinate across nodes (fold indicator).
    """
    from .zerofind import NewtonFailure

    _check_period(p)
    if window[0] >= window[1]:
        raise ValueError("window must satisfy kappa_1 < kappa_2")
    if w0 is None:
        if p != 1:
            raise ValueError("node_solve needs an explicit seed for p > 1")
        w0 = analytic_p1_seed(window[0])
    alphas = cheb_nodes(K)
    sols = np.empty((K + 1, 2 * p))
    residuals = np.empty(K + 1)
    w = np.asarray(w0, dtype=np.float64)
    for k, a in enumerate(alphas):
        try:
            w = _newton_extended(p, w, float(a), window, tol=tol)
        except NewtonFailure as exc:
            raise ContinuationError(
                f"node {k} (alpha={a:.6f}, kappa={kappa_of_alpha(window, float(a)):.6f}) "
                f"failed: {exc}"
            ) from exc
        sols[k] = w
        residuals[k] = np.abs(extended_F_native(p, w, float(a), window)).sum()
        if k > 0 and p > 1:
            flips = np.sign(sols[k, p : 2 * p - 1]) != np.sign(sols[k - 1, p : 2 * p - 1])
            if np.any(flips):
                raise ContinuationError(
                    f"eigen-direction sign flip between nodes {k - 1} and {k} "
                    "(fold suspected); window not certified"
                )
    w_bar = [cheb_interpolate(sols[:, i]) for i in range(2 * p)]
    A_nodes = np.empty((K + 1, 2 * p, 2 * p))
    for k, a in enumerate(alphas):
        A_nodes[k] = np.linalg.inv(extended_DF_native(p, sols[k], float(a), window))
    rows = [
        [cheb_interpolate(A_nodes[:, i, j]) for j in range(2 * p)]
        for i in range(2 * p)
    ]
    chi = [Interval.point(float(np.mean(sols[:, i]))) for i in range(p)]
    return ExtendedCandidate(
        period=p,
        window=(float(window[0]), float(window[1])),
        K=K,
        N=N,
        w_bar=w_bar,
        A_cheb=ChebOpMatrix(rows),
        chi=chi,
        node_w=sols,
        node_residuals=residuals,
    )


# ---------------------------------------------------------------------------
# Uniform bounds.
# ---------------------------------------------------------------------------

def _jet_seq_horner(jet: SigmoidJet, d: ChebSeq, deriv: int) -> ChebSeq:
    """Taylor polynomial (or its derivative) of h composed with x_bar - chi,
    evaluated in the sequence algebra."""
    N = jet.order
    if deriv == 0:
        coeffs = [jet.coeffs[n] for n in range(N + 1)]
    else:
        coeffs = [
            jet.coeffs[n] * _falling(n, deriv) for n in range(deriv, N + 1)
        ]
    acc = ChebSeq.from_intervals([coeffs[-1]])
    for c in reversed(coeffs[:-1]):
        acc = acc * d + ChebSeq.from_intervals([c])
    return acc


def _falling(n: int, k: int) -> float:
    out = 1
    for j in range(k):
        out *= n - j
    return float(out)


def _poly_family(cand: ExtendedCandidate):
    """Sequences of F_poly, its Jacobian entries and helper norms."""
    p = cand.period
    x = cand.w_bar[:p]
    u = cand.w_bar[p : 2 * p - 1]
    beta = cand.w_bar[2 * p - 1]
    kap = kappa_seq(cand.window)
    jets = _jets_for(p, cand.chi, cand.N)
    d = [x[i] - cand.chi[i] for i in range(p)]
    hp = [_jet_seq_horner(jets[i], d[i], 0) for i in range(p)]
    hp1 = [_jet_seq_horner(jets[i], d[i], 1) for i in range(p)]
    hp2 = [_jet_seq_horner(jets[i], d[i], 2) for i in range(p)]

    F_rows: list[ChebSeq] = []
    for k in range(p):
        i = (k - 1) % p
        F_rows.append(beta + x[i] + kap * hp[i] - x[k])
    uprod = ChebSeq.from_floats([1.0])
    for ui in u:
        uprod = uprod * ui
    F_rows.append((1 + kap * hp1[p - 1]) * uprod + 1)
    for k in range(1, p):
        F_rows.append(1 + kap * hp1[k - 1] - u[k - 1])

    n = 2 * p
    zero = ChebSeq.from_floats([0.0])
    one = ChebSeq.from_floats([1.0])
    rows = [[zero for _ in range(n)] for _ in range(n)]
    for k in range(p):
        jm = (k - 1) % p
        dfj = 1 + kap * hp1[jm]
        if jm == k:
            rows[k][jm] = dfj - 1
        else:
            rows[k][jm] = dfj
            rows[k][k] = -one
        rows[k][n - 1] = one
    rows[p][p - 1] = kap * hp2[p - 1] * uprod
    for j in range(p - 1):
        others = ChebSeq.from_floats([1.0])
        for i2, ui in enumerate(u):
            if i2 != j:
                others = others * ui
        rows[p][p + j] = (1 + kap * hp1[p - 1]) * others
    for k in range(1, p):
        rows[p + k][k - 1] = kap * hp2[k - 1]
        rows[p + k][p + k - 1] = -one
    return F_rows, ChebOpMatrix(rows), d, kap, u


def _remainder_sups(cand: ExtendedCandidate, d: list[ChebSeq]):
    """Uniform sups of the Taylor remainders of h, h', h'' along x_bar.

    |h~_i| <= ||(x_i - chi_i)^(N+1)|| / (N+1)! * sup|h^(N+1)|, and one less
    power (and factorial) for each derivative taken.
    """
    N = cand.N
    sup_hN1 = sigmoid_derivative_sup(N + 1)
    rem0, rem1, rem2 = [], [], []
    for di in d:
        pw = di.power(N - 1)
        nm2 = pw.norm_l1()
        pw = pw * di
        nm1 = pw.norm_l1()
        pw = pw * di
        nm0 = pw.norm_l1()
        rem0.append(nm0 * sup_hN1 / math.factorial(N + 1))
        rem1.append(nm1 * sup_hN1 / math.factorial(N))
        rem2.append(nm2 * sup_hN1 / math.factorial(N - 1))
    return rem0, rem1, rem2


def uniform_bounds(
    cand: ExtendedCandidate, R: float = DEFAULT_R
) -> tuple[Interval, Interval, Interval]:
    """Uniform Y/Z1/Z2 over alpha in [-1, 1] for the candidate family.

    Y  = ||A F_poly(w_bar)|| + ||A|| * sup||F - F_poly|| (triangle inequality),
    Z1 = ||I - A D F_poly(w_bar)|| + ||A|| * sup||D(F - F_poly)||,
    Z2 = ||A|| ||kappa|| (sup|h''| + max(sup|h''|, max(1, ||u||+R) sup|h'''|)),

    with all polynomial parts computed exactly in the sequence algebra and
    the remainder parts from the Taylor split.
    """
    _check_period(cand.period)
    if not (0.0 < R < math.inf):
        raise ValueError("uniform bounds need a finite positive R")
    if cand.N + 1 > 12:
        raise ValueError("no supremum bound registered beyond order 12")
    p = cand.period
    A = cand.A_cheb
    F_rows, Dpoly, d, kap, u = _poly_family(cand)
    rem0, rem1, rem2 = _remainder_sups(cand, d)
    kap_norm = kap.norm_l1()
    u_norm = seq_vec_norm(u) if u else Interval.point(0.0)
    norm_A = A.opnorm()

    Y_poly = seq_vec_norm(A.matvec(F_rows))
    if p == 1:
        F_tail = kap_norm * (rem0[0] + rem1[0])
    else:
        F_tail = kap_norm * (rem0[1] + rem0[0] + u_norm * rem1[1] + rem1[0])
    Y = Y_poly + norm_A * F_tail

    Z1_poly = (ChebOpMatrix.identity(2 * p) - (A @ Dpoly)).opnorm()
    if p == 1:
        D_tail = kap_norm * (rem1[0] + rem2[0])
    else:
        col0 = rem1[0] + rem2[0]
        col1 = rem1[1] + u_norm * rem2[1]
        D_tail = kap_norm * Interval(max(col0.lo, col1.lo), max(col0.hi, col1.hi))
    Z1 = Z1_poly + norm_A * D_tail

    s2 = sigmoid_derivative_sup(2)
    s3 = sigmoid_derivative_sup(3)
    reach = (u_norm + R)
    scale = Interval(max(1.0, reach.lo), max(1.0, reach.hi))
    inner = scale * s3
    second = Interval(max(s2.lo, inner.lo), max(s2.hi, inner.hi))
    Z2 = norm_A * kap_norm * (s2 + second)
    return Y, Z1, Z2


def certify_curve(cand: ExtendedCandidate, R: float = DEFAULT_R) -> CurveCertificate:
    """Verify the uniform contraction over the window and record radii."""
    cert = CurveCertificate(candidate=cand, R=R)
    try:
        Y, Z1, Z2 = uniform_bounds(cand, R)
    except Exception as exc:  # noqa: BLE001
        cert.reason = f"uniform bounds failed: {exc}"
        return cert
    cert.Y, cert.Z1, cert.Z2 = Y, Z1, Z2
    sel: RadiiSelection = select_radius(Y, Z1, Z2, R)
    cert.r_minus, cert.r_plus = sel.r_minus, sel.r_plus
    if not sel.ok:
        cert.reason = sel.reason
        return cert
    cert.r_star = sel.r_star
    cert.r_tight = sel.r_tight
    cert.r_uniqueness = _largest_verified_radius(Y, Z1, Z2, sel, R)
    cert.verified = True
    cert.endpoint_lo = _eval_family(cand, Interval.point(-1.0))
    cert.endpoint_hi = _eval_family(cand, Interval.point(1.0))
    return cert


def _largest_verified_radius(Y, Z1, Z2, sel: RadiiSelection, R: float) -> float:
    caps = [R]
    if sel.r_plus is not None:
        caps.append(sel.r_plus.lo)
    if Z2.hi > 0.0:
        caps.append(((1 - Z1) / Z2).lo)
    r = min(caps)
    for _ in range(200):
        if r <= sel.r_star:
            break
        if _radii_conditions_hold(Y, Z1, Z2, r, R):
            return r
        r *= 0.995
    return sel.r_star


def _eval_family(cand: ExtendedCandidate, alpha: Interval) -> IntervalVector:
    return IntervalVector.from_intervals([s.eval(alpha) for s in cand.w_bar])


@dataclass(frozen=True)
class PatchResult:
    ok: bool
    gap: float
    allowance: float
    detail: str


def patch_curves(a: CurveCertificate, b: CurveCertificate) -> PatchResult:
    """Glue check: a's right endpoint ball must sit inside b's left
    uniqueness ball, so the two certified branches share their zero there."""
    if not (a.verified and b.verified):
        return PatchResult(False, math.nan, math.nan, "both certificates must be verified")
    if a.candidate.window[1] != b.candidate.window[0]:
        return PatchResult(
            False, math.nan, math.nan,
            f"windows do not abut: {a.candidate.window} vs {b.candidate.window}",
        )
    diff = a.endpoint_hi - b.endpoint_lo
    gap = diff.norm1().hi
    allowance = b.r_uniqueness - a.r_star
    ok = gap <= allowance
    detail = "ok" if ok else (
        f"endpoint gap {gap:.3e} exceeds allowance {allowance:.3e} "
        f"(= b.r_uniqueness - a.r_star)"
    )
    return PatchResult(ok, gap, allowance, detail)


def certify_window_adaptive(
    p: int,
    window: tuple[float, float],
    K: int = DEFAULT_K,
    N: int = DEFAULT_N,
    R: float = DEFAULT_R,
    w0=None,
    min_width: float = MIN_WINDOW_WIDTH,
) -> list[CurveCertificate]:
    """Certify a window, splitting it in half recursively on failure.

    Returns the certificates of the pieces in left-to-right order; raises
    ContinuationError when a piece below ``min_width`` still fails.
    """
    if w0 is None and p == 1:
        w0 = analytic_p1_seed(window[0])
    cand = None
    try:
        cand = node_solve(p, window, K=K, w0=w0, N=N)
        cert = certify_curve(cand, R=R)
    except ContinuationError as exc:
        cert = None
        fail_reason = str(exc)
    if cert is not None and cert.verified:
        return [cert]
    if cert is not None:
        fail_reason = cert.reason or "unverified"
    width = window[1] - window[0]
    if width <= min_width:
        raise ContinuationError(
            f"window {window} below minimum width {min_width}: {fail_reason}"
        )
    mid = 0.5 * (window[0] + window[1])
    left = certify_window_adaptive(p, (window[0], mid), K, N, R, w0=w0,
                                   min_width=min_width)
    seed_right = np.array(left[-1].candidate.node_w[-1])
    right = certify_window_adaptive(p, (mid, window[1]), K, N, R, w0=seed_right,
                                    min_width=min_width)
    return left + right


# ---------------------------------------------------------------------------
# Pointwise cross-check of the uniform result at a frozen alpha.
# ---------------------------------------------------------------------------

def pointwise_extended_certify(
    p: int, w, alpha: float, window, R: float = DEFAULT_R
) -> RadiiSelection:
    """Certify the extended system at one frozen alpha (same bound recipe,
    pointwise); used to cross-check uniform certificates."""
    _check_period(p)
    w = np.asarray(w, dtype=np.float64)
    A = np.linalg.inv(extended_DF_native(p, w, alpha, window))
    w_iv = IntervalVector.from_floats(w)
    a_iv = Interval.point(alpha)
    A_iv = IntervalMatrix.from_floats(A)
    F = _extended_F_iv_full(p, w_iv, a_iv, window)
    DF = extended_DF_iv(p, w_iv, a_iv, window)
    Y = (A_iv @ F).norm1()
    Z1 = (IntervalMatrix.identity(2 * p) - (A_iv @ DF)).opnorm1()
    kap_mag = abs(kappa_of_alpha(window, a_iv))
    u_mag = abs(w_iv[p]) if p > 1 else Interval.point(0.0)
    s2 = sigmoid_derivative_sup(2)
    s3 = sigmoid_derivative_sup(3)
    reach = u_mag + R
    scale = Interval(max(1.0, reach.lo), max(1.0, reach.hi))
    inner = scale * s3
    second = Interval(max(s2.lo, inner.lo), max(s2.hi, inner.hi))
    Z2 = A_iv.opnorm1() * kap_mag * (s2 + second)
    return select_radius(Y, Z1, Z2, R)


# ---------------------------------------------------------------------------
# Reporting helpers.
# ---------------------------------------------------------------------------

def curve_samples(cert: CurveCertificate, n: int = 101) -> list[tuple[float, float, float]]:
    """(kappa, beta_lo, beta_hi) rows sampling the certified beta band."""
    if not cert.verified:
        raise ValueError("cannot sample an unverified curve certificate")
    cand = cert.candidate
    beta_seq = cand.w_bar[2 * cand.period - 1]
    rows = []
    for al in np.linspace(-1.0, 1.0, n):
        kap = kappa_of_alpha(cand.window, float(al))
        b = beta_seq.eval(Interval.point(float(al)))
        rows.append((kap, b.lo - cert.r_star, b.hi + cert.r_star))
    return rows


def curve_certificate_to_json(cert: CurveCertificate) -> str:
    cand = cert.candidate

    def iv(v: Interval | None):
        return None if v is None else v.to_hex()

    def fx(v: float | None):
        if v is None:
            return None
        return "inf" if math.isinf(v) else float.hex(v)

    doc = {
        "kind": "period_doubling_candidate_curve",
        "map": "predprey",
        "period": cand.period,
        "window": [float.hex(cand.window[0]), float.hex(cand.window[1])],
        "K": cand.K,
        "N": cand.N,
        "chi": [iv(c) for c in cand.chi],
        "w_bar": [
            {"convention": "halved", "coeffs": [iv(c) for c in seq.coeffs()]}
            for seq in cand.w_bar
        ],
        "R": fx(cert.R),
        "Y": iv(cert.Y),
        "Z1": iv(cert.Z1),
        "Z2": iv(cert.Z2),
        "r_minus": iv(cert.r_minus),
        "r_plus": iv(cert.r_plus),
        "r_star": fx(cert.r_star),
        "r_uniqueness": fx(cert.r_uniqueness),
        "verified": cert.verified,
        "reason": cert.reason,
        "endpoint_lo": None if cert.endpoint_lo is None else [iv(v) for v in cert.endpoint_lo],
        "endpoint_hi": None if cert.endpoint_hi is None else [iv(v) for v in cert.endpoint_hi],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))
