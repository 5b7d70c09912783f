"""Map definitions: the logistic map and a discretized predator-prey model.

Each map carries a native float evaluator (used by Newton refinement and
seeding) and a rigorous interval evaluator (used when computing certificate
bounds), together with the global supremum of |f''| that feeds the second
order bound of the contraction argument.

The predator-prey nonlinearity is the reflected sigmoid h(x) = -1/(1+e^x).
Its derivatives are polynomials in the standard logistic sigma(x), obtained
by the recurrence sigma' = sigma(1-sigma) with exact integer coefficients;
this module also produces rigorous Taylor jets of h used by the uniform
(curve) bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .interval import Interval, iv_exp, sqrt3_over_18

__all__ = [
    "MapDef",
    "SigmoidJet",
    "make_map",
    "registered_maps",
    "eval_map",
    "eval_dmap",
    "sigma_iv",
    "sigmoid_derivative",
    "sigmoid_derivative_sup",
    "taylor_jet",
    "MAX_SIGMOID_ORDER",
]

MAX_SIGMOID_ORDER = 12


# ---------------------------------------------------------------------------
# Sigmoid derivative machinery.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _sigma_deriv_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Q_n with sigma^(n) = Q_n(sigma), for n >= 1.

    Q_1(y) = y - y^2 and Q_{n+1} = Q_n'(y) * (y - y^2); the coefficients stay
    well below 2**53 for n <= MAX_SIGMOID_ORDER, so they are exact floats.
    """
    if n < 1 or n > MAX_SIGMOID_ORDER:
        raise ValueError(f"sigmoid derivative order {n} outside 1..{MAX_SIGMOID_ORDER}")
    if n == 1:
        return (0, 1, -1)
    prev = _sigma_deriv_poly(n - 1)
    dprev = tuple(j * prev[j] for j in range(1, len(prev)))
    # multiply dprev by (y - y^2)
    out = [0] * (len(dprev) + 2)
    for j, c in enumerate(dprev):
        out[j + 1] += c
        out[j + 2] -= c
    assert all(abs(c) < 2 ** 53 for c in out)
    return tuple(out)


def _sigma_point_bounds(v: float) -> Interval:
    """Tight enclosure of sigma(v) = 1/(1+e^-v) at a float point."""
    if v >= 0.0:
        return 1 / (1 + iv_exp(Interval.point(-v)))
    t = iv_exp(Interval.point(v))
    return t / (1 + t)


def sigma_iv(x: Interval) -> Interval:
    """Enclosure of the logistic sigmoid over x (monotone evaluation)."""
    lo = _sigma_point_bounds(x.lo).lo
    hi = _sigma_point_bounds(x.hi).hi
    return Interval(max(lo, 0.0), min(hi, 1.0))


def _poly_eval_iv(coeffs: tuple[int, ...], y: Interval) -> Interval:
    acc = Interval.point(float(coeffs[-1]))
    for c in reversed(coeffs[:-1]):
        acc = acc * y + float(c)
    return acc


def sigmoid_derivative(n: int, x: Interval) -> Interval:
    """Enclosure of h^(n) over x, where h(x) = -1/(1+e^x) = sigma(x) - 1."""
    if n < 0 or n > MAX_SIGMOID_ORDER:
        raise ValueError(f"order {n} outside 0..{MAX_SIGMOID_ORDER}")
    y = sigma_iv(x)
    if n == 0:
        return y - 1
    return _poly_eval_iv(_sigma_deriv_poly(n), y)


def sigmoid_derivative_sup(n: int) -> Interval:
    """Upper enclosure of sup over the reals of |h^(n)|.

    Orders 2, 3 and 11 carry the sharp values sqrt(3)/18, 1/8 and 691/8;
    remaining orders fall back to the coefficient-sum bound for Q_n on [0,1].
    """
    if n == 0:
        return Interval.point(1.0)
    if n == 1:
        return Interval.point(0.25)
    if n == 2:
        return sqrt3_over_18()
    if n == 3:
        return Interval.point(0.125)
    if n == 11:
        return Interval.from_fraction(691, 8)
    total = sum(abs(c) for c in _sigma_deriv_poly(n))
    return Interval.from_fraction(total)


@dataclass(frozen=True)
class SigmoidJet:
    """Rigorous Taylor coefficients of h around a center chi.

    coeffs[n] encloses h^(n)(chi)/n! for n = 0..order.
    """

    center: Interval
    order: int
    coeffs: tuple[Interval, ...]

    def eval_poly(self, x: Interval) -> Interval:
        """Enclosure of the truncated Taylor polynomial at x."""
        d = x - self.center
        acc = self.coeffs[self.order]
        for n in range(self.order - 1, -1, -1):
            acc = acc * d + self.coeffs[n]
        return acc

    def eval_poly_deriv(self, x: Interval, order: int = 1) -> Interval:
        """Enclosure of the order-th derivative of the Taylor polynomial."""
        if order > self.order:
            return Interval.point(0.0)
        d = x - self.center
        top = self.coeffs[self.order] * _falling(self.order, order)
        acc = top
        for n in range(self.order - 1, order - 1, -1):
            acc = acc * d + self.coeffs[n] * _falling(n, order)
        return acc


def _falling(n: int, k: int) -> float:
    out = 1
    for j in range(k):
        out *= n - j
    return float(out)


def taylor_jet(center: Interval, order: int) -> SigmoidJet:
    """Taylor jet of h at the given center, exact up to interval rounding."""
    if order < 0 or order > MAX_SIGMOID_ORDER - 1:
        raise ValueError(f"jet order {order} outside 0..{MAX_SIGMOID_ORDER - 1}")
    y = sigma_iv(center)
    coeffs = [y - 1]
    for n in range(1, order + 1):
        coeffs.append(_poly_eval_iv(_sigma_deriv_poly(n), y) / math.factorial(n))
    return SigmoidJet(center=center, order=order, coeffs=tuple(coeffs))


# ---------------------------------------------------------------------------
# Map registry.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MapDef:
    """A registered one-dimensional map with fixed parameter enclosures.

    ``params`` hold the rigorous enclosures used by interval evaluators;
    ``params_native`` hold the float midpoints used by Newton and seeding.
    Instances are immutable and picklable (workers rebuild evaluators from
    the registry by id).
    """

    map_id: str
    dim: int
    params: Mapping[str, Interval]
    params_native: Mapping[str, float]
    region_warning: str | None = None

    def f(self, x: float) -> float:
        return _REGISTRY[self.map_id].f_native(x, self.params_native)

    def df(self, x: float) -> float:
        return _REGISTRY[self.map_id].df_native(x, self.params_native)

    def f_iv(self, x: Interval) -> Interval:
        return _REGISTRY[self.map_id].f_rigorous(x, self.params)

    def df_iv(self, x: Interval) -> Interval:
        return _REGISTRY[self.map_id].df_rigorous(x, self.params)

    def lipschitz_df(self) -> Interval:
        """Global supremum of |f''| (valid on all of R, so R may be inf)."""
        return _REGISTRY[self.map_id].lipschitz(self.params)

    def seed_box(self) -> tuple[float, float]:
        return _REGISTRY[self.map_id].seed_box(self.params_native)

    def describe(self) -> str:
        pars = ", ".join(f"{k}={v}" for k, v in self.params_native.items())
        return f"{self.map_id}({pars})"


class _MapSpec:
    id: str
    param_names: tuple[str, ...]

    def f_native(self, x, params):  # pragma: no cover - interface
        raise NotImplementedError

    def df_native(self, x, params):  # pragma: no cover
        raise NotImplementedError

    def f_rigorous(self, x, params):  # pragma: no cover
        raise NotImplementedError

    def df_rigorous(self, x, params):  # pragma: no cover
        raise NotImplementedError

    def lipschitz(self, params):  # pragma: no cover
        raise NotImplementedError

    def seed_box(self, params):  # pragma: no cover
        raise NotImplementedError

    def region_warning(self, params_native) -> str | None:
        return None


class _Logistic(_MapSpec):
    id = "logistic"
    param_names = ("mu",)

    def f_native(self, x, params):
        return params["mu"] * x * (1.0 - x)

    def df_native(self, x, params):
        return params["mu"] * (1.0 - 2.0 * x)

    def f_rigorous(self, x, params):
        return params["mu"] * x * (1 - x)

    def df_rigorous(self, x, params):
        return params["mu"] * (1 - 2 * x)

    def lipschitz(self, params):
        # |f''| = 2|mu| everywhere
        return abs(params["mu"]) * 2

    def seed_box(self, params):
        return (0.0, 1.0)


def _sigma_native(x: float) -> float:
    # Same evaluation tree as sigma_iv so that the native value always lies
    # inside the rigorous enclosure.
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    t = math.exp(x)
    return t / (1.0 + t)


class _PredPrey(_MapSpec):
    id = "predprey"
    param_names = ("beta", "kappa")

    def f_native(self, x, params):
        # beta + x + kappa*h(x) with h(x) = -1/(1+e^x) = sigma(x) - 1
        h = _sigma_native(x) - 1.0
        return params["beta"] + x + params["kappa"] * h

    def df_native(self, x, params):
        s = _sigma_native(x)
        return 1.0 + params["kappa"] * (s * (1.0 - s))

    def f_rigorous(self, x, params):
        h = sigma_iv(x) - 1
        return params["beta"] + x + params["kappa"] * h

    def df_rigorous(self, x, params):
        s = sigma_iv(x)
        return 1 + params["kappa"] * (s * (1 - s))

    def lipschitz(self, params):
        # |f''| = |kappa| e^x |1-e^x| / (1+e^x)^3 <= sqrt(3)|kappa|/18
        return abs(params["kappa"]) * sqrt3_over_18()

    def seed_box(self, params):
        beta = params["beta"]
        kappa = params["kappa"]
        ratio = kappa / beta - 1.0
        center = math.log(ratio) if ratio > 0.0 else 0.0
        spread = abs(beta) + abs(kappa)
        return (center - spread, center + spread)

    def region_warning(self, params_native) -> str | None:
        beta = params_native["beta"]
        kappa = params_native["kappa"]
        if not (kappa < beta < 0.0):
            return (
                f"parameters (beta={beta}, kappa={kappa}) lie outside the "
                "region kappa < beta < 0 studied for this model"
            )
        return None


_REGISTRY: dict[str, _MapSpec] = {spec.id: spec for spec in (_Logistic(), _PredPrey())}


def registered_maps() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def _coerce_param(value) -> Interval:
    if isinstance(value, Interval):
        return value
    if isinstance(value, str):
        return Interval.from_decimal(value)
    if isinstance(value, tuple) and len(value) == 2:
        return Interval.from_fraction(value[0], value[1])
    if isinstance(value, Fraction):
        return Interval.from_fraction(value)
    return Interval.point(float(value))


def make_map(map_id: str, **params) -> MapDef:
    """Build a MapDef; parameter values may be floats, decimal/rational
    strings, (num, den) tuples, or Interval enclosures."""
    if map_id not in _REGISTRY:
        raise KeyError(f"unknown map {map_id!r}; known: {registered_maps()}")
    spec = _REGISTRY[map_id]
    missing = set(spec.param_names) - set(params)
    extra = set(params) - set(spec.param_names)
    if missing or extra:
        raise ValueError(
            f"map {map_id!r} takes parameters {spec.param_names}; "
            f"missing {sorted(missing)}, unexpected {sorted(extra)}"
        )
    iv_params = {k: _coerce_param(v) for k, v in params.items()}
    native = {k: v.mid for k, v in iv_params.items()}
    return MapDef(
        map_id=map_id,
        dim=1,
        params=iv_params,
        params_native=native,
        region_warning=spec.region_warning(native),
    )


def eval_map(m: MapDef, x, mode: str = "native"):
    """Evaluate f in 'native' (float) or 'rigorous' (interval) mode."""
    if mode == "native":
        return m.f(float(x))
    if mode == "rigorous":
        return m.f_iv(x if isinstance(x, Interval) else Interval.point(float(x)))
    raise ValueError(f"unknown mode {mode!r}")


def eval_dmap(m: MapDef, x, mode: str = "native"):
    """Evaluate f' in 'native' or 'rigorous' mode."""
    if mode == "native":
        return m.df(float(x))
    if mode == "rigorous":
        return m.df_iv(x if isinstance(x, Interval) else Interval.point(float(x)))
    raise ValueError(f"unknown mode {mode!r}")
