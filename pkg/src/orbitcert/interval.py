"""Directed-rounding interval arithmetic kernel.

Every value of the :class:`Interval` family encloses a set of reals between
two finite binary64 endpoints, and every operation returns an interval that
provably contains the exact real image of its inputs.

Rounding policy (fixed for the whole kernel, so that certificates are
bit-reproducible):

* ``+ - * /`` and ``sqrt`` on endpoints use error-free transformations
  (TwoSum, Dekker's product, residual signs) to detect whether the
  round-to-nearest result is exact; inexact results are moved outward by
  exactly one unit in the last place.  This is equivalent to hardware
  directed rounding.
* Sums and dot products (vector norms, matrix products, convolutions) go
  through :func:`math.fsum`, which is exactly rounded, and are then moved
  outward by at most one ulp; endpoint selections inside dot products are
  made on exact product representations, so these reductions are also
  tightest-possible.
* ``exp`` evaluates libm at the endpoints and widens each result outward by
  two ulps (libm is assumed faithful to within one ulp).  ``exp(0)`` is the
  exact point 1.
* Magnitudes beyond ``2**510`` or products below ``2**-1000`` fall back to
  unconditional one-ulp widening, where the error-free transformations are
  no longer valid.  Overflow to infinity raises :class:`UnboundedResultError`.

All values are immutable after construction and safe to share between
workers; no global rounding state exists.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Interval",
    "IntervalVector",
    "IntervalMatrix",
    "DomainError",
    "UnboundedResultError",
    "iv_arith",
    "iv_exp",
    "iv_sqrt",
    "vec_norm1",
    "op_norm1",
    "sqrt3_over_18",
]

_INF = math.inf
_SPLITTER = 134217729.0        # 2**27 + 1, Veltkamp split constant
_BIG_GUARD = 2.0 ** 510        # above this the Veltkamp split can overflow
_SMALL_GUARD = 2.0 ** -1000    # below this product residuals can be inexact


class DomainError(ZeroDivisionError):
    """Division by an interval containing zero, or sqrt of a negative."""


class UnboundedResultError(OverflowError):
    """An operation overflowed the finite binary64 range."""


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _require_finite(x: float) -> float:
    if math.isinf(x) or math.isnan(x):
        raise UnboundedResultError("result overflowed the binary64 range")
    return x


# ---------------------------------------------------------------------------
# Error-free transformations (scalar).
# ---------------------------------------------------------------------------

def _two_sum(a: float, b: float) -> tuple[float, float]:
    """Knuth's TwoSum: s = fl(a+b) and e with s + e == a + b exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def _two_prod(a: float, b: float) -> tuple[float, float]:
    """Dekker's product: p = fl(a*b) and e with p + e == a*b exactly.

    Caller must keep |a|, |b| below ``_BIG_GUARD`` and |p| above
    ``_SMALL_GUARD`` (or treat the residual as untrusted).
    """
    p = a * b
    ca = _SPLITTER * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLITTER * b
    bhi = cb - (cb - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


def _prod_unsafe(a: float, b: float) -> bool:
    return abs(a) > _BIG_GUARD or abs(b) > _BIG_GUARD or 0.0 < abs(a * b) < _SMALL_GUARD


def _add_rd(a: float, b: float) -> float:
    s, e = _two_sum(a, b)
    _require_finite(s)
    return _down(s) if e < 0.0 else s


def _add_ru(a: float, b: float) -> float:
    s, e = _two_sum(a, b)
    _require_finite(s)
    return _up(s) if e > 0.0 else s


def _mul_rd(a: float, b: float) -> float:
    if _prod_unsafe(a, b):
        return _down(_require_finite(a * b))
    p, e = _two_prod(a, b)
    _require_finite(p)
    return _down(p) if e < 0.0 else p


def _mul_ru(a: float, b: float) -> float:
    if _prod_unsafe(a, b):
        return _up(_require_finite(a * b))
    p, e = _two_prod(a, b)
    _require_finite(p)
    return _up(p) if e > 0.0 else p


def _div_residual_sign(a: float, q: float, b: float) -> float:
    """Sign of a - q*b, exact; returns nan when the guards fail."""
    if _prod_unsafe(q, b):
        return math.nan
    p, e = _two_prod(q, b)
    if not (0.5 * abs(a) <= abs(p) <= 2.0 * abs(a)):
        # Sterbenz condition for exactness of a - p fails.
        return math.nan
    d = a - p
    # d and e are exact; the sign of their float difference is the true sign
    # because differences of doubles below one ulp are still representable.
    return d - e


def _div_rd(a: float, b: float) -> float:
    if a == 0.0:
        return 0.0
    q = a / b
    _require_finite(q)
    r = _div_residual_sign(a, q, b)
    if math.isnan(r):
        return _down(q)
    # true quotient - q has the sign of (a - q*b) / b
    return _down(q) if (r < 0.0) != (b < 0.0) and r != 0.0 else q


def _div_ru(a: float, b: float) -> float:
    if a == 0.0:
        return 0.0
    q = a / b
    _require_finite(q)
    r = _div_residual_sign(a, q, b)
    if math.isnan(r):
        return _up(q)
    return _up(q) if (r > 0.0) != (b < 0.0) and r != 0.0 else q


def _sqrt_rd(x: float) -> float:
    if x == 0.0:
        return 0.0
    s = math.sqrt(x)
    if _prod_unsafe(s, s):
        return _down(s)
    p, e = _two_prod(s, s)
    if not (0.5 * x <= p <= 2.0 * x):
        return _down(s)
    d = p - x
    r = d + e  # sign of s*s - x, exact
    return _down(s) if r > 0.0 else s


def _sqrt_ru(x: float) -> float:
    if x == 0.0:
        return 0.0
    s = math.sqrt(x)
    if _prod_unsafe(s, s):
        return _up(s)
    p, e = _two_prod(s, s)
    if not (0.5 * x <= p <= 2.0 * x):
        return _up(s)
    d = p - x
    r = d + e
    return _up(s) if r < 0.0 else s


def _sum_bounds(xs: Iterable[float]) -> tuple[float, float]:
    """Directed enclosure of an exact sum of floats (tight via fsum)."""
    vals = list(xs)
    s = math.fsum(vals)
    _require_finite(s)
    vals.append(-s)
    r = math.fsum(vals)  # exact sign of (true sum - s)
    if r > 0.0:
        return s, _up(s)
    if r < 0.0:
        return _down(s), s
    return s, s


# ---------------------------------------------------------------------------
# Scalar intervals.
# ---------------------------------------------------------------------------

class Interval:
    """Closed interval [lo, hi] with finite binary64 endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        lo = float(lo)
        hi = lo if hi is None else float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("interval endpoints cannot be NaN")
        if math.isinf(lo) or math.isinf(hi):
            raise UnboundedResultError("interval endpoints must be finite")
        if lo > hi:
            raise ValueError(f"invalid interval: lo={lo!r} > hi={hi!r}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Interval is immutable")

    def __reduce__(self):
        return (Interval, (self.lo, self.hi))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_fraction(cls, num: int | Fraction, den: int = 1) -> "Interval":
        """Tightest enclosure of the exact rational num/den."""
        value = Fraction(num, den)
        f = float(value)
        if math.isinf(f):
            raise UnboundedResultError("rational outside binary64 range")
        exact = Fraction(f)
        if exact == value:
            return cls(f, f)
        if exact < value:
            return cls(f, _up(f))
        return cls(_down(f), f)

    @classmethod
    def from_decimal(cls, text: str) -> "Interval":
        """Tightest enclosure of a decimal literal (exact when representable).

        Hex-float literals (``0x1.91eb...p+1``) and rational literals
        (``32/10``) are accepted as well, for bit-exact round trips.
        """
        text = text.strip()
        if text.lower().startswith(("0x", "-0x", "+0x")):
            return cls.point(float.fromhex(text))
        if "/" in text:
            num, den = text.split("/", 1)
            return cls.from_fraction(int(num), int(den))
        return cls.from_fraction(Fraction(text))

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @classmethod
    def hull(cls, items: Iterable["Interval | float"]) -> "Interval":
        los, his = [], []
        for it in items:
            it = _coerce(it)
            los.append(it.lo)
            his.append(it.hi)
        if not los:
            raise ValueError("hull of empty collection")
        return cls(min(los), max(his))

    # -- serialization -----------------------------------------------------

    def to_hex(self) -> list[str]:
        return [float.hex(self.lo), float.hex(self.hi)]

    @classmethod
    def from_hex(cls, pair: Sequence[str]) -> "Interval":
        return cls(float.fromhex(pair[0]), float.fromhex(pair[1]))

    # -- diagnostics -------------------------------------------------------

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def mag(self) -> float:
        """sup |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> float:
        """inf |x| over the interval."""
        if self.lo > 0.0:
            return self.lo
        if self.hi < 0.0:
            return -self.hi
        return 0.0

    def __contains__(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= float(x) <= self.hi

    def encloses(self, other: "Interval | float") -> bool:
        return other in self

    def issubset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other: "Interval") -> "Interval":
        if not self.intersects(other):
            raise ValueError("empty intersection")
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Interval)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __abs__(self) -> "Interval":
        return Interval(self.mig(), self.mag())

    def __add__(self, other) -> "Interval":
        o = _coerce(other)
        return Interval(_add_rd(self.lo, o.lo), _add_ru(self.hi, o.hi))

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        o = _coerce(other)
        return Interval(_add_rd(self.lo, -o.hi), _add_ru(self.hi, -o.lo))

    def __rsub__(self, other) -> "Interval":
        return _coerce(other).__sub__(self)

    def __mul__(self, other) -> "Interval":
        o = _coerce(other)
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        lo = min(_mul_rd(a, c), _mul_rd(a, d), _mul_rd(b, c), _mul_rd(b, d))
        hi = max(_mul_ru(a, c), _mul_ru(a, d), _mul_ru(b, c), _mul_ru(b, d))
        return Interval(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = _coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise DomainError("division by an interval containing zero")
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        lo = min(_div_rd(a, c), _div_rd(a, d), _div_rd(b, c), _div_rd(b, d))
        hi = max(_div_ru(a, c), _div_ru(a, d), _div_ru(b, c), _div_ru(b, d))
        return Interval(lo, hi)

    def __rtruediv__(self, other) -> "Interval":
        return _coerce(other).__truediv__(self)

    def __pow__(self, n: int) -> "Interval":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        if n == 0:
            return Interval(1.0, 1.0)
        if n % 2 == 0:
            m = abs(self)
            out = m
            for _ in range(n - 1):
                out = out * m
            return out
        out = self
        for _ in range(n - 1):
            out = out * self
        return out


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, (int, float, np.floating, np.integer)):
        return Interval.point(float(x))
    raise TypeError(f"cannot interpret {type(x).__name__} as Interval")


def iv_arith(op: str, x: Interval, y: Interval) -> Interval:
    """Dispatch form of the four arithmetic operations (add/sub/mul/div)."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def iv_exp(x: Interval) -> Interval:
    """Enclosure of exp over x; endpoints widened two ulps (libm faithful)."""
    try:
        lo = 1.0 if x.lo == 0.0 else _down(_down(math.exp(x.lo)))
        if lo < 0.0:
            lo = 0.0
        if x.hi == 0.0:
            hi = 1.0
        else:
            hi = _up(_up(_require_finite(math.exp(x.hi))))
            _require_finite(hi)
    except OverflowError as exc:
        raise UnboundedResultError("exp overflowed the binary64 range") from exc
    return Interval(lo, hi)


def iv_sqrt(x: Interval) -> Interval:
    if x.lo < 0.0:
        raise DomainError("sqrt of an interval reaching below zero")
    return Interval(_sqrt_rd(x.lo), _sqrt_ru(x.hi))


def sqrt3_over_18() -> Interval:
    """Enclosure of sqrt(3)/18, the global supremum of |h''| for the sigmoid."""
    return iv_sqrt(Interval(3.0)) / 18


# ---------------------------------------------------------------------------
# Vectorized directed product machinery (shared by vectors and sequences).
# ---------------------------------------------------------------------------

def _v_two_prod(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p = a * b
    ca = _SPLITTER * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLITTER * b
    bhi = cb - (cb - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


def _pair_min(p0, e0, p1, e1):
    take = (p1 < p0) | ((p1 == p0) & (e1 < e0))
    return np.where(take, p1, p0), np.where(take, e1, e0)


def _pair_max(p0, e0, p1, e1):
    take = (p1 > p0) | ((p1 == p0) & (e1 > e0))
    return np.where(take, p1, p0), np.where(take, e1, e0)


def _dot_bounds(alo, ahi, blo, bhi) -> tuple[float, float]:
    """Tight directed enclosure of the interval dot product sum_i A_i * B_i.

    Corner products are kept as exact (p, e) pairs so both the min/max corner
    selection and the final fsum reduction are performed on exact values.
    """
    if alo.size == 0:
        return 0.0, 0.0
    big = max(
        np.max(np.abs(alo)), np.max(np.abs(ahi)),
        np.max(np.abs(blo)), np.max(np.abs(bhi)),
    )
    p1, e1 = _v_two_prod(alo, blo)
    p2, e2 = _v_two_prod(alo, bhi)
    p3, e3 = _v_two_prod(ahi, blo)
    p4, e4 = _v_two_prod(ahi, bhi)
    ps = np.concatenate([p1, p2, p3, p4])
    if big > _BIG_GUARD or np.any((ps != 0.0) & (np.abs(ps) < _SMALL_GUARD)):
        # residuals untrusted: fall back to one-ulp widened corner products
        lo_c = np.nextafter(np.minimum(np.minimum(p1, p2), np.minimum(p3, p4)), -_INF)
        hi_c = np.nextafter(np.maximum(np.maximum(p1, p2), np.maximum(p3, p4)), _INF)
        lo = _sum_bounds(lo_c)[0]
        hi = _sum_bounds(hi_c)[1]
        return lo, hi
    pl, el = _pair_min(p1, e1, p2, e2)
    pl, el = _pair_min(pl, el, p3, e3)
    pl, el = _pair_min(pl, el, p4, e4)
    ph, eh = _pair_max(p1, e1, p2, e2)
    ph, eh = _pair_max(ph, eh, p3, e3)
    ph, eh = _pair_max(ph, eh, p4, e4)
    lo = _sum_bounds(np.concatenate([pl, el]))[0]
    hi = _sum_bounds(np.concatenate([ph, eh]))[1]
    return lo, hi


def _abs_bounds(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mig = np.where(lo > 0.0, lo, np.where(hi < 0.0, -hi, 0.0))
    mag = np.maximum(np.abs(lo), np.abs(hi))
    return mig, mag


def _v_add_rd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    s = a + b
    if not np.all(np.isfinite(s)):
        raise UnboundedResultError("vector sum overflowed")
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return np.where(e < 0.0, np.nextafter(s, -_INF), s)


def _v_add_ru(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    s = a + b
    if not np.all(np.isfinite(s)):
        raise UnboundedResultError("vector sum overflowed")
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return np.where(e > 0.0, np.nextafter(s, _INF), s)


def _v_mul_rd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    p, e = _v_two_prod(a, b)
    if not np.all(np.isfinite(p)):
        raise UnboundedResultError("vector product overflowed")
    down = np.nextafter(p, -_INF)
    unsafe = (
        (np.abs(a) > _BIG_GUARD)
        | (np.abs(b) > _BIG_GUARD)
        | ((p != 0.0) & (np.abs(p) < _SMALL_GUARD))
    )
    return np.where(unsafe | (e < 0.0), down, p)


def _v_mul_ru(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    p, e = _v_two_prod(a, b)
    if not np.all(np.isfinite(p)):
        raise UnboundedResultError("vector product overflowed")
    up = np.nextafter(p, _INF)
    unsafe = (
        (np.abs(a) > _BIG_GUARD)
        | (np.abs(b) > _BIG_GUARD)
        | ((p != 0.0) & (np.abs(p) < _SMALL_GUARD))
    )
    return np.where(unsafe | (e > 0.0), up, p)


# ---------------------------------------------------------------------------
# Interval vectors and square matrices.
# ---------------------------------------------------------------------------

class IntervalVector:
    """Fixed-length vector of intervals, stored as endpoint arrays."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: np.ndarray, hi: np.ndarray):
        lo = np.asarray(lo, dtype=np.float64)
        hi = np.asarray(hi, dtype=np.float64)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("endpoint arrays must be equal-length 1-D")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise UnboundedResultError("vector endpoints must be finite")
        if np.any(lo > hi):
            raise ValueError("invalid vector: lo > hi somewhere")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("IntervalVector is immutable")

    def __reduce__(self):
        return (IntervalVector, (np.array(self.lo), np.array(self.hi)))

    @classmethod
    def from_floats(cls, xs) -> "IntervalVector":
        arr = np.asarray(xs, dtype=np.float64)
        return cls(arr, arr.copy())

    @classmethod
    def from_intervals(cls, items: Iterable[Interval]) -> "IntervalVector":
        items = list(items)
        return cls(
            np.array([i.lo for i in items]),
            np.array([i.hi for i in items]),
        )

    def __len__(self) -> int:
        return self.lo.size

    def __getitem__(self, k: int) -> Interval:
        return Interval(self.lo[k], self.hi[k])

    def __iter__(self):
        for k in range(len(self)):
            yield self[k]

    def __add__(self, other: "IntervalVector") -> "IntervalVector":
        lo = np.empty_like(self.lo)
        hi = np.empty_like(self.hi)
        for k in range(self.lo.size):
            lo[k] = _add_rd(self.lo[k], other.lo[k])
            hi[k] = _add_ru(self.hi[k], other.hi[k])
        return IntervalVector(lo, hi)

    def __sub__(self, other: "IntervalVector") -> "IntervalVector":
        lo = np.empty_like(self.lo)
        hi = np.empty_like(self.hi)
        for k in range(self.lo.size):
            lo[k] = _add_rd(self.lo[k], -other.hi[k])
            hi[k] = _add_ru(self.hi[k], -other.lo[k])
        return IntervalVector(lo, hi)

    def __neg__(self) -> "IntervalVector":
        return IntervalVector(-self.hi, -self.lo)

    def norm1(self) -> Interval:
        mig, mag = _abs_bounds(self.lo, self.hi)
        return Interval(_sum_bounds(mig)[0], _sum_bounds(mag)[1])

    def contains_point(self, xs) -> bool:
        arr = np.asarray(xs, dtype=np.float64)
        return bool(np.all(self.lo <= arr) and np.all(arr <= self.hi))


class IntervalMatrix:
    """Square matrix of intervals (row-major endpoint grids)."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: np.ndarray, hi: np.ndarray):
        lo = np.asarray(lo, dtype=np.float64)
        hi = np.asarray(hi, dtype=np.float64)
        if lo.shape != hi.shape or lo.ndim != 2 or lo.shape[0] != lo.shape[1]:
            raise ValueError("endpoint grids must be equal square 2-D arrays")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise UnboundedResultError("matrix endpoints must be finite")
        if np.any(lo > hi):
            raise ValueError("invalid matrix: lo > hi somewhere")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("IntervalMatrix is immutable")

    def __reduce__(self):
        return (IntervalMatrix, (np.array(self.lo), np.array(self.hi)))

    @classmethod
    def from_floats(cls, arr) -> "IntervalMatrix":
        a = np.asarray(arr, dtype=np.float64)
        return cls(a, a.copy())

    @classmethod
    def identity(cls, n: int) -> "IntervalMatrix":
        eye = np.eye(n)
        return cls(eye, eye.copy())

    @property
    def n(self) -> int:
        return self.lo.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> Interval:
        i, j = ij
        return Interval(self.lo[i, j], self.hi[i, j])

    def __add__(self, other: "IntervalMatrix") -> "IntervalMatrix":
        n = self.n
        lo = np.empty((n, n))
        hi = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                lo[i, j] = _add_rd(self.lo[i, j], other.lo[i, j])
                hi[i, j] = _add_ru(self.hi[i, j], other.hi[i, j])
        return IntervalMatrix(lo, hi)

    def __sub__(self, other: "IntervalMatrix") -> "IntervalMatrix":
        return self + (-other)

    def __neg__(self) -> "IntervalMatrix":
        return IntervalMatrix(-self.hi, -self.lo)

    def matvec(self, v: IntervalVector) -> IntervalVector:
        n = self.n
        lo = np.empty(n)
        hi = np.empty(n)
        for i in range(n):
            lo[i], hi[i] = _dot_bounds(self.lo[i], self.hi[i], v.lo, v.hi)
        return IntervalVector(lo, hi)

    def __matmul__(self, other):
        if isinstance(other, IntervalVector):
            return self.matvec(other)
        n = self.n
        lo = np.empty((n, n))
        hi = np.empty((n, n))
        o_lo_t = other.lo.T.copy()
        o_hi_t = other.hi.T.copy()
        for i in range(n):
            for j in range(n):
                lo[i, j], hi[i, j] = _dot_bounds(
                    self.lo[i], self.hi[i], o_lo_t[j], o_hi_t[j]
                )
        return IntervalMatrix(lo, hi)

    def opnorm1(self) -> Interval:
        """Enclosure of the operator 1-norm (max column sum of |entries|)."""
        mig, mag = _abs_bounds(self.lo, self.hi)
        col_lo = [_sum_bounds(mig[:, j])[0] for j in range(self.n)]
        col_hi = [_sum_bounds(mag[:, j])[1] for j in range(self.n)]
        return Interval(max(col_lo), max(col_hi))

    def contains_point(self, arr) -> bool:
        a = np.asarray(arr, dtype=np.float64)
        return bool(np.all(self.lo <= a) and np.all(a <= self.hi))


def vec_norm1(x: IntervalVector) -> Interval:
    return x.norm1()


def op_norm1(a: IntervalMatrix) -> Interval:
    return a.opnorm1()
