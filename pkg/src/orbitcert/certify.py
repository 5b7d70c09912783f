"""Pointwise contraction certificates for periodic orbit candidates.

Given a candidate orbit x_bar with approximate inverse Jacobian A, the
certifier computes rigorous bounds

    Y  >= ||A F(x_bar)||_1,
    Z1 >= ||I - A DF(x_bar)||_1,
    Z2 >= Lip(A DF) on B_R(x_bar)  (here Z2 = sup|f''| * ||A||_1, valid
                                    globally, so R = inf is allowed),

and verifies that the radii polynomial P(r) = Y + r(Z1 - 1) + r^2 Z2 / 2
is nonpositive at some admissible radius with Z1 + r Z2 < 1.  Success
proves existence and local uniqueness of a true zero within 1-norm
distance r of x_bar.  Genuine period p is established by disjointness of
the component balls, and stability by an interval enclosure of the orbit
multiplier (product of f' over the enclosed orbit points).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .interval import (
    Interval,
    IntervalMatrix,
    IntervalVector,
    iv_sqrt,
)
from .maps import MapDef, make_map
from .zerofind import Candidate, build_DF, build_F

__all__ = [
    "Certificate",
    "RadiiSelection",
    "compute_bounds",
    "select_radius",
    "check_distinct",
    "assess_stability",
    "certify_orbit",
    "gershgorin_disks",
    "gershgorin_stability",
    "certificate_to_json",
    "certificate_from_json",
]

STABLE = "stable"
UNSTABLE = "unstable"
INCONCLUSIVE = "inconclusive"

_RSTAR_FALLBACK_BUMP = 1.0 + 2.0 ** -20


@dataclass(frozen=True)
class RadiiSelection:
    """Outcome of the radii-polynomial root analysis."""

    ok: bool
    reason: str | None
    r_minus: Interval | None
    r_plus: Interval | None
    r_star: float | None
    r_tight: float | None  # smallest directly re-verified radius


@dataclass
class Certificate:
    """Proof record for one candidate orbit."""

    candidate: Candidate
    R: float = math.inf
    Y: Interval | None = None
    Z1: Interval | None = None
    Z2: Interval | None = None
    r_minus: Interval | None = None
    r_plus: Interval | None = None
    r_star: float | None = None
    r_tight: float | None = None
    distinct: bool | None = None
    eigenvalue: Interval | None = None
    stability: str = INCONCLUSIVE
    verified: bool = False
    reason: str | None = None
    warnings: list[str] = field(default_factory=list)


def _radii_conditions_hold(
    Y: Interval, Z1: Interval, Z2: Interval, r: float, R: float
) -> bool:
    """Direct interval verification of P(r) <= 0 and Z1 + r Z2 < 1."""
    if not (0.0 <= r <= R) or not math.isfinite(r):
        return False
    ri = Interval.point(r)
    P = Y + ri * (Z1 - 1) + ri * ri * Z2 * 0.5
    cond1 = P.hi <= 0.0
    cond2 = (Z1 + ri * Z2).hi < 1.0
    return cond1 and cond2


def select_radius(
    Y: Interval, Z1: Interval, Z2: Interval, R: float = math.inf
) -> RadiiSelection:
    """Enclose the roots r+- of the radii polynomial and pick a radius.

    r_star is the smallest power of two at or above sup(r-) that passes
    direct re-verification of both contraction inequalities (falling back
    to sup(r-) scaled up by 2^-20 relative); r_tight is sup(r-) itself when
    that verifies directly, giving the sharpest error bound on x_bar.
    """
    if Z1.lo >= 1.0:
        return RadiiSelection(False, "Z1 >= 1 (A too inaccurate)", None, None, None, None)
    if Z2.hi == 0.0:
        # linear case: P(r) = Y + r(Z1 - 1) <= 0 from r = Y/(1-Z1) on
        r_minus = Y / (1 - Z1)
        r_star = _verify_candidates(Y, Z1, Z2, r_minus.hi, R)
        if r_star is None:
            return RadiiSelection(False, "no admissible radius", r_minus, None, None, None)
        tight = r_minus.hi if _radii_conditions_hold(Y, Z1, Z2, r_minus.hi, R) else r_star
        return RadiiSelection(True, None, r_minus, None, r_star, tight)

    disc = (1 - Z1) ** 2 - 2 * Y * Z2
    if disc.lo <= 0.0:
        return RadiiSelection(
            False, "negative-discriminant (candidate not accurate enough)",
            None, None, None, None,
        )
    sq = iv_sqrt(disc)
    r_minus = ((1 - Z1) - sq) / Z2
    r_plus = ((1 - Z1) + sq) / Z2
    if r_minus.hi < 0.0:
        return RadiiSelection(False, "negative root enclosure", r_minus, r_plus, None, None)

    r_star = _verify_candidates(Y, Z1, Z2, max(r_minus.hi, 0.0), R)
    if r_star is None:
        return RadiiSelection(
            False, "contraction inequality fails at every admissible radius",
            r_minus, r_plus, None, None,
        )
    tight = max(r_minus.hi, 0.0)
    if not _radii_conditions_hold(Y, Z1, Z2, tight, R):
        tight = r_star
    return RadiiSelection(True, None, r_minus, r_plus, r_star, tight)


def _verify_candidates(
    Y: Interval, Z1: Interval, Z2: Interval, r_base: float, R: float
) -> float | None:
    if r_base == 0.0:
        if _radii_conditions_hold(Y, Z1, Z2, 0.0, R):
            return 0.0
        return None
    candidates = [2.0 ** math.ceil(math.log2(r_base))]
    candidates.append(r_base * _RSTAR_FALLBACK_BUMP)
    candidates.append(r_base)
    for r in candidates:
        if _radii_conditions_hold(Y, Z1, Z2, r, R):
            return r
    return None


def compute_bounds(
    m: MapDef, cand: Candidate, R: float = math.inf
) -> tuple[Interval, Interval, Interval]:
    """Rigorous Y, Z1, Z2 for a candidate, with x_bar and A as point intervals.

    Z2 uses the global supremum of |f''| supplied by the map, so the bound
    holds on all of R^p regardless of R; R only restricts the admissible
    radius later.
    """
    p = cand.period
    if cand.A is None:
        raise ValueError("candidate carries no approximate inverse")
    x_iv = IntervalVector.from_floats(cand.x_bar)
    A_iv = IntervalMatrix.from_floats(cand.A)
    F_iv = build_F(m, p, x_iv, mode="rigorous")
    DF_iv = build_DF(m, p, x_iv, mode="rigorous")
    Y = (A_iv @ F_iv).norm1()
    Z1 = (IntervalMatrix.identity(p * m.dim) - (A_iv @ DF_iv)).opnorm1()
    Z2 = m.lipschitz_df() * A_iv.opnorm1()
    return Y, Z1, Z2


def check_distinct(x_bar, r_star: float) -> bool:
    """True iff the closed 1-norm balls of radius r_star around the orbit
    coordinates are pairwise disjoint (sufficient for genuine period p)."""
    x = np.asarray(x_bar, dtype=np.float64)
    p = x.size
    for i in range(p):
        for j in range(i + 1, p):
            gap = abs(Interval.point(x[i]) - Interval.point(x[j]))
            if not gap.lo > 2.0 * r_star:
                return False
    return True


def assess_stability(
    m: MapDef, x_bar, r: float
) -> tuple[Interval, str]:
    """Interval enclosure of the orbit multiplier and the stability verdict.

    Each true orbit point lies in [x_k - r, x_k + r]; the multiplier is the
    chain-rule product of f' over those enclosures.  The verdict is
    'stable' when sup|lambda| < 1, 'unstable' when the enclosure excludes
    the closed unit interval, and 'inconclusive' otherwise.
    """
    if m.dim != 1:
        raise NotImplementedError(
            "stability for n > 1 maps goes through gershgorin_stability"
        )
    x = np.asarray(x_bar, dtype=np.float64)
    lam = Interval.point(1.0)
    for xk in x:
        lam = lam * m.df_iv(Interval(xk - r, xk + r))
    return lam, _verdict_from_interval(lam)


def _verdict_from_interval(lam: Interval) -> str:
    if lam.mag() < 1.0:
        return STABLE
    if lam.mig() > 1.0:
        return UNSTABLE
    return INCONCLUSIVE


def gershgorin_disks(M: IntervalMatrix) -> list[tuple[Interval, float]]:
    """Row-wise Gershgorin disks: (diagonal enclosure, off-diagonal radius sup)."""
    disks = []
    for i in range(M.n):
        center = M[i, i]
        radius = 0.0
        for j in range(M.n):
            if j != i:
                radius = (Interval.point(radius) + abs(M[i, j])).hi
        disks.append((center, radius))
    return disks


def gershgorin_stability(M: IntervalMatrix) -> tuple[list[tuple[Interval, float]], str]:
    """Stability verdict for an interval matrix via Gershgorin disks.

    Stable when every disk lies inside the open unit disk; unstable when
    some disk lies entirely outside the closed unit disk; inconclusive
    otherwise.
    """
    disks = gershgorin_disks(M)
    if all(c.mag() + rad < 1.0 for c, rad in disks):
        return disks, STABLE
    if any(c.mig() - rad > 1.0 for c, rad in disks):
        return disks, UNSTABLE
    return disks, INCONCLUSIVE


def certify_orbit(m: MapDef, cand: Candidate, R: float = math.inf) -> Certificate:
    """Full certification pipeline: bounds, radius, distinctness, stability.

    Never raises for a failing candidate; the certificate records the
    failure stage in ``reason`` with ``verified=False``.
    """
    cert = Certificate(candidate=cand, R=R)
    if m.region_warning:
        cert.warnings.append(m.region_warning)
    if cand.A is None:
        cert.reason = "candidate has no approximate inverse"
        return cert
    try:
        Y, Z1, Z2 = compute_bounds(m, cand, R)
    except Exception as exc:  # noqa: BLE001 - recorded, not raised
        cert.reason = f"bound computation failed: {exc}"
        return cert
    cert.Y, cert.Z1, cert.Z2 = Y, Z1, Z2
    sel = select_radius(Y, Z1, Z2, R)
    cert.r_minus, cert.r_plus = sel.r_minus, sel.r_plus
    if not sel.ok:
        cert.reason = sel.reason
        return cert
    cert.r_star = sel.r_star
    cert.r_tight = sel.r_tight
    cert.verified = True
    cert.distinct = check_distinct(cand.x_bar, sel.r_star)
    # the tightest verified radius gives the sharpest eigenvalue enclosure
    lam, verdict = assess_stability(m, cand.x_bar, sel.r_tight)
    cert.eigenvalue = lam
    cert.stability = verdict
    return cert


# ---------------------------------------------------------------------------
# Serialization: hex floats for bit-exact round trips.
# ---------------------------------------------------------------------------

def _iv_hex(iv: Interval | None):
    return None if iv is None else iv.to_hex()


def _float_hex(x: float | None):
    if x is None:
        return None
    return "inf" if math.isinf(x) else float.hex(x)


def certificate_to_json(cert: Certificate) -> str:
    c = cert.candidate
    doc = {
        "map": c.map_id,
        "params": {k: float.hex(v) for k, v in sorted(c.params.items())},
        "period": c.period,
        "x_bar": [float.hex(float(v)) for v in c.x_bar],
        "A": None if c.A is None else [[float.hex(float(v)) for v in row] for row in c.A],
        "residual": _float_hex(c.residual),
        "R": _float_hex(cert.R),
        "Y": _iv_hex(cert.Y),
        "Z1": _iv_hex(cert.Z1),
        "Z2": _iv_hex(cert.Z2),
        "r_minus": _iv_hex(cert.r_minus),
        "r_plus": _iv_hex(cert.r_plus),
        "r_star": _float_hex(cert.r_star),
        "r_tight": _float_hex(cert.r_tight),
        "distinct": cert.distinct,
        "eigenvalue": _iv_hex(cert.eigenvalue),
        "stability": cert.stability,
        "verified": cert.verified,
        "reason": cert.reason,
        "warnings": cert.warnings,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _iv_from(pair):
    return None if pair is None else Interval.from_hex(pair)


def _float_from(s):
    if s is None:
        return None
    return math.inf if s == "inf" else float.fromhex(s)


def certificate_from_json(text: str) -> Certificate:
    doc = json.loads(text)
    cand = Candidate(
        map_id=doc["map"],
        params={k: float.fromhex(v) for k, v in doc["params"].items()},
        period=doc["period"],
        x_bar=np.array([float.fromhex(v) for v in doc["x_bar"]]),
        A=None if doc["A"] is None else np.array(
            [[float.fromhex(v) for v in row] for row in doc["A"]]
        ),
        residual=_float_from(doc["residual"]),
    )
    cert = Certificate(
        candidate=cand,
        R=_float_from(doc["R"]),
        Y=_iv_from(doc["Y"]),
        Z1=_iv_from(doc["Z1"]),
        Z2=_iv_from(doc["Z2"]),
        r_minus=_iv_from(doc["r_minus"]),
        r_plus=_iv_from(doc["r_plus"]),
        r_star=_float_from(doc["r_star"]),
        r_tight=_float_from(doc["r_tight"]),
        distinct=doc["distinct"],
        eigenvalue=_iv_from(doc["eigenvalue"]),
        stability=doc["stability"],
        verified=doc["verified"],
        reason=doc["reason"],
        warnings=list(doc.get("warnings", ())),
    )
    return cert


def recertify(cert: Certificate) -> Certificate:
    """Re-run certification from the embedded candidate (archive audit)."""
    m = make_map(cert.candidate.map_id, **cert.candidate.params)
    return certify_orbit(m, cert.candidate, R=cert.R)
