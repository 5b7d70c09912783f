"""Finite Chebyshev coefficient sequences in the l1 convention.

Storage convention ("halved"): a sequence psi with coefficients
psi_0, ..., psi_K represents

    psi(alpha) = psi_0 + 2 * sum_{k>=1} psi_k T_k(alpha),

matching the two-sided norm ||psi|| = sum_{k in Z} |psi_{|k|}| and the
folded convolution

    (psi * phi)_k = sum_{j in Z} psi_{|k-j|} phi_{|j|},

under which the space is a commutative Banach algebra and the l1 norm of a
sequence equals the operator norm of its multiplication action.  The sup of
|psi| over [-1, 1] never exceeds ||psi||, which is what transfers the
coefficient computations to uniform C0 bounds.

Products are exact folded convolutions (no truncation); all coefficient
arithmetic goes through the directed-rounding kernel.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .interval import (
    Interval,
    _abs_bounds,
    _dot_bounds,
    _sum_bounds,
    _v_add_rd,
    _v_add_ru,
    _v_mul_rd,
    _v_mul_ru,
    iv_sqrt,
)

__all__ = [
    "ChebSeq",
    "ChebOpMatrix",
    "cheb_mul",
    "cheb_nodes",
    "cheb_nodes_interval",
    "cheb_interpolate",
    "cheb_eval",
    "opmatrix_norm",
    "seq_vec_norm",
]

DIRECT_TRANSFORM_MAX_ORDER = 64  # direct O(K^2) cosine transform is fine here


class ChebSeq:
    """Finite Chebyshev coefficient sequence with interval coefficients."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: np.ndarray, hi: np.ndarray):
        lo = np.atleast_1d(np.asarray(lo, dtype=np.float64))
        hi = np.atleast_1d(np.asarray(hi, dtype=np.float64))
        if lo.shape != hi.shape or lo.ndim != 1 or lo.size == 0:
            raise ValueError("coefficient arrays must be equal-length 1-D")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("coefficients must be finite")
        if np.any(lo > hi):
            raise ValueError("invalid coefficient interval (lo > hi)")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("ChebSeq is immutable")

    def __reduce__(self):
        return (ChebSeq, (np.array(self.lo), np.array(self.hi)))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_floats(cls, coeffs) -> "ChebSeq":
        arr = np.atleast_1d(np.asarray(coeffs, dtype=np.float64))
        return cls(arr, arr.copy())

    @classmethod
    def from_intervals(cls, items: Iterable[Interval]) -> "ChebSeq":
        items = list(items)
        return cls(
            np.array([i.lo for i in items]),
            np.array([i.hi for i in items]),
        )

    @classmethod
    def constant(cls, c) -> "ChebSeq":
        c = c if isinstance(c, Interval) else Interval.point(float(c))
        return cls(np.array([c.lo]), np.array([c.hi]))

    @classmethod
    def identity(cls) -> "ChebSeq":
        """The coordinate function alpha itself: (0, 1/2) in halved storage."""
        return cls.from_floats([0.0, 0.5])

    @property
    def degree(self) -> int:
        return self.lo.size - 1

    def __len__(self) -> int:
        return self.lo.size

    def coeff(self, k: int) -> Interval:
        if k > self.degree:
            return Interval.point(0.0)
        return Interval(self.lo[k], self.hi[k])

    def coeffs(self) -> list[Interval]:
        return [self.coeff(k) for k in range(len(self))]

    def pad(self, length: int) -> "ChebSeq":
        if length <= len(self):
            return self
        lo = np.zeros(length)
        hi = np.zeros(length)
        lo[: len(self)] = self.lo
        hi[: len(self)] = self.hi
        return ChebSeq(lo, hi)

    # -- ring operations ---------------------------------------------------

    def __neg__(self) -> "ChebSeq":
        return ChebSeq(-self.hi, -self.lo)

    def __add__(self, other) -> "ChebSeq":
        other = _coerce_seq(other)
        n = max(len(self), len(other))
        a, b = self.pad(n), other.pad(n)
        return ChebSeq(_v_add_rd(a.lo, b.lo), _v_add_ru(a.hi, b.hi))

    __radd__ = __add__

    def __sub__(self, other) -> "ChebSeq":
        return self + (-_coerce_seq(other))

    def __rsub__(self, other) -> "ChebSeq":
        return _coerce_seq(other) + (-self)

    def __mul__(self, other) -> "ChebSeq":
        if isinstance(other, ChebSeq):
            return cheb_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "ChebSeq":
        c = c if isinstance(c, Interval) else Interval.point(float(c))
        cands_lo = [
            _v_mul_rd(self.lo, np.full(len(self), c.lo)),
            _v_mul_rd(self.lo, np.full(len(self), c.hi)),
            _v_mul_rd(self.hi, np.full(len(self), c.lo)),
            _v_mul_rd(self.hi, np.full(len(self), c.hi)),
        ]
        cands_hi = [
            _v_mul_ru(self.lo, np.full(len(self), c.lo)),
            _v_mul_ru(self.lo, np.full(len(self), c.hi)),
            _v_mul_ru(self.hi, np.full(len(self), c.lo)),
            _v_mul_ru(self.hi, np.full(len(self), c.hi)),
        ]
        return ChebSeq(np.minimum.reduce(cands_lo), np.maximum.reduce(cands_hi))

    def power(self, n: int) -> "ChebSeq":
        """n-th convolution power (exact, no truncation)."""
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = ChebSeq.from_floats([1.0])
        base = self
        k = n
        while k:  # binary powering keeps the number of convolutions small
            if k & 1:
                out = cheb_mul(out, base)
            k >>= 1
            if k:
                base = cheb_mul(base, base)
        return out

    # -- analysis ----------------------------------------------------------

    def norm_l1(self) -> Interval:
        """Two-sided l1 norm |psi_0| + 2 sum_{k>=1} |psi_k|."""
        mig, mag = _abs_bounds(self.lo, self.hi)
        w = np.full(len(self), 2.0)
        w[0] = 1.0
        lo = _sum_bounds(_v_mul_rd(mig, w))[0]
        hi = _sum_bounds(_v_mul_ru(mag, w))[1]
        return Interval(max(lo, 0.0), hi)

    def eval(self, alpha) -> Interval:
        return cheb_eval(self, alpha)

    def eval_native(self, alphas: np.ndarray) -> np.ndarray:
        """Float evaluation at many points (midpoint coefficients)."""
        full = 0.5 * (self.lo + self.hi).copy()
        full[1:] *= 2.0
        return np.polynomial.chebyshev.chebval(np.asarray(alphas), full)

    def __repr__(self) -> str:
        mid = 0.5 * (self.lo + self.hi)
        return f"ChebSeq(degree={self.degree}, mid={np.array2string(mid, precision=6)})"


def _coerce_seq(x) -> ChebSeq:
    if isinstance(x, ChebSeq):
        return x
    if isinstance(x, (int, float, np.floating, Interval)):
        return ChebSeq.constant(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as ChebSeq")


def cheb_mul(a: ChebSeq, b: ChebSeq) -> ChebSeq:
    """Folded convolution (psi*phi)_k = sum_{j in Z} psi_{|k-j|} phi_{|j|}.

    Output degree is deg(a) + deg(b); every entry is a tight directed dot
    product over the two-sided index range.
    """
    if len(b) > len(a):
        a, b = b, a
    da, db = a.degree, b.degree
    j = np.arange(-db, db + 1)
    absj = np.abs(j)
    blo = b.lo[absj]
    bhi = b.hi[absj]
    n_out = da + db + 1
    lo = np.empty(n_out)
    hi = np.empty(n_out)
    for k in range(n_out):
        ia = np.abs(k - j)
        mask = ia <= da
        lo[k], hi[k] = _dot_bounds(
            a.lo[ia[mask]], a.hi[ia[mask]], blo[mask], bhi[mask]
        )
    return ChebSeq(lo, hi)


def cheb_eval(psi: ChebSeq, alpha) -> Interval:
    """Clenshaw evaluation of psi at alpha (interval in [-1, 1])."""
    a = alpha if isinstance(alpha, Interval) else Interval.point(float(alpha))
    if a.lo < -1.0 or a.hi > 1.0:
        raise ValueError(f"evaluation point {a!r} outside [-1, 1]")
    # full-convention coefficients: c_0 = psi_0, c_k = 2 psi_k
    two_a = 2 * a
    b1 = Interval.point(0.0)
    b2 = Interval.point(0.0)
    for k in range(psi.degree, 0, -1):
        b1, b2 = psi.coeff(k) * 2 + two_a * b1 - b2, b1
    return psi.coeff(0) + a * b1 - b2


def cheb_nodes(K: int) -> np.ndarray:
    """Float Chebyshev nodes alpha^[k] = -cos(k pi / K), k = 0..K."""
    if K == 0:
        return np.array([-1.0])
    return -np.cos(np.arange(K + 1) * math.pi / K)


@lru_cache(maxsize=None)
def _cos_pi_frac(num: int, den: int) -> Interval:
    """Enclosure of cos(num*pi/den) for 0 <= num/den <= 2.

    A handful of rational angles are exact or kernel-computable; the rest
    are taken from 40-digit extended precision and widened by four ulps per
    side.  These constants only enter the interpolation of interval-valued
    samples, never the certificate bound chain.
    """
    g = math.gcd(num, den) if num else den
    num, den = num // g, den // g
    table = {(0, 1): Interval.point(1.0), (1, 1): Interval.point(-1.0),
             (2, 1): Interval.point(1.0), (1, 2): Interval.point(0.0),
             (3, 2): Interval.point(0.0), (1, 3): Interval.from_fraction(1, 2),
             (2, 3): Interval.from_fraction(-1, 2)}
    if (num, den) in table:
        return table[(num, den)]
    if (num, den) in ((1, 4), (7, 4)):
        return iv_sqrt(Interval.point(2.0)) / 2
    if (num, den) in ((3, 4), (5, 4)):
        return -(iv_sqrt(Interval.point(2.0)) / 2)
    with mpmath.workdps(40):
        v = float(mpmath.cos(mpmath.pi * num / den))
    lo, hi = v, v
    for _ in range(4):
        lo = math.nextafter(lo, -math.inf)
        hi = math.nextafter(hi, math.inf)
    return Interval(lo, hi)


def cheb_nodes_interval(K: int) -> list[Interval]:
    """Rigorous enclosures of the nodes -cos(k pi / K)."""
    if K == 0:
        return [Interval.point(-1.0)]
    return [-_cos_pi_frac(k, K) for k in range(K + 1)]


def cheb_interpolate(samples) -> ChebSeq:
    """Interpolant through samples at the nodes -cos(k pi / K), K = len - 1.

    Float samples go through the plain cosine-transform matrix and come
    back as point coefficients; interval samples are pushed through the
    same transform in interval arithmetic with enclosed cosine weights.
    """
    samples = list(samples)
    K = len(samples) - 1
    if K < 0:
        raise ValueError("need at least one sample")
    if K > DIRECT_TRANSFORM_MAX_ORDER:
        raise ValueError(
            f"interpolation order {K} > {DIRECT_TRANSFORM_MAX_ORDER} "
            "(direct transform only)"
        )
    rigorous = any(isinstance(s, Interval) for s in samples)
    if K == 0:
        s0 = samples[0]
        return ChebSeq.from_intervals([s0]) if rigorous else ChebSeq.from_floats([float(s0)])
    if rigorous:
        vals = [s if isinstance(s, Interval) else Interval.point(float(s)) for s in samples]
        return _interpolate_rigorous(vals, K)
    return _interpolate_native(np.asarray(samples, dtype=np.float64), K)


def _interpolate_native(samples: np.ndarray, K: int) -> ChebSeq:
    # reorder to the standard x_j = cos(j pi / K) grid
    v = samples[::-1].copy()
    j = np.arange(K + 1)
    weights = np.ones(K + 1)
    weights[0] = weights[K] = 0.5
    C = np.cos(np.outer(j, j) * (math.pi / K))
    full = (2.0 / K) * (C @ (weights * v))
    full[0] *= 0.5
    full[K] *= 0.5
    halved = full.copy()
    halved[1:] *= 0.5
    return ChebSeq.from_floats(halved)


def _interpolate_rigorous(vals: list[Interval], K: int) -> ChebSeq:
    v = vals[::-1]
    w = [Interval.from_fraction(1, 2) if j in (0, K) else Interval.point(1.0)
         for j in range(K + 1)]
    out: list[Interval] = []
    inv_k = Interval.from_fraction(2, K)
    for m in range(K + 1):
        acc = Interval.point(0.0)
        for j in range(K + 1):
            acc = acc + _cos_pi_frac(m * j, K) * w[j] * v[j]
        c = acc * inv_k
        if m in (0, K):
            c = c * 0.5
        if m >= 1:
            c = c * 0.5  # halved storage
        out.append(c)
    return ChebSeq.from_intervals(out)


# ---------------------------------------------------------------------------
# Matrices of multiplication operators.
# ---------------------------------------------------------------------------

class ChebOpMatrix:
    """Square grid of sequences acting as a matrix of multiplication operators."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[ChebSeq]]):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("operator matrix must be square")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("ChebOpMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "ChebOpMatrix":
        one = ChebSeq.from_floats([1.0])
        zero = ChebSeq.from_floats([0.0])
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> ChebSeq:
        i, j = ij
        return self.rows[i][j]

    def matvec(self, v: Sequence[ChebSeq]) -> list[ChebSeq]:
        if len(v) != self.n:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.n):
            acc = cheb_mul(self.rows[i][0], v[0])
            for j in range(1, self.n):
                acc = acc + cheb_mul(self.rows[i][j], v[j])
            out.append(acc)
        return out

    def __matmul__(self, other):
        if isinstance(other, ChebOpMatrix):
            n = self.n
            rows = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = cheb_mul(self.rows[i][0], other.rows[0][j])
                    for k in range(1, n):
                        acc = acc + cheb_mul(self.rows[i][k], other.rows[k][j])
                    row.append(acc)
                rows.append(row)
            return ChebOpMatrix(rows)
        return self.matvec(list(other))

    def __sub__(self, other: "ChebOpMatrix") -> "ChebOpMatrix":
        return ChebOpMatrix(
            [[self.rows[i][j] - other.rows[i][j] for j in range(self.n)]
             for i in range(self.n)]
        )

    def __rsub__(self, other) -> "ChebOpMatrix":
        if isinstance(other, ChebOpMatrix):
            return other.__sub__(self)
        raise TypeError("can only subtract from another ChebOpMatrix")

    def opnorm(self) -> Interval:
        """Uniform operator-norm bound: max column sum of entry l1 norms."""
        col_lo, col_hi = [], []
        for j in range(self.n):
            s = Interval.point(0.0)
            for i in range(self.n):
                s = s + self.rows[i][j].norm_l1()
            col_lo.append(s.lo)
            col_hi.append(s.hi)
        return Interval(max(col_lo), max(col_hi))

    def eval(self, alpha) -> list[list[Interval]]:
        return [[e.eval(alpha) for e in row] for row in self.rows]


def opmatrix_norm(W: ChebOpMatrix) -> Interval:
    return W.opnorm()


def seq_vec_norm(w: Sequence[ChebSeq]) -> Interval:
    """Norm of a vector of sequences: sum of component l1 norms."""
    s = Interval.point(0.0)
    for seq in w:
        s = s + seq.norm_l1()
    return s
