"""Rigorous certification of periodic orbits and period-doubling curves.

The package proves existence, local uniqueness and stability of period-p
orbits of one-dimensional maps by verifying contraction of a quasi-Newton
operator with interval arithmetic, and encloses period-doubling candidate
curves in parameter space by a uniform contraction argument over Chebyshev
interpolants.
"""

from .certify import Certificate, certify_orbit
from .interval import Interval, IntervalMatrix, IntervalVector
from .maps import MapDef, make_map
from .zerofind import Candidate, newton_refine, seed_candidates

__version__ = "0.1.0"

__all__ = [
    "Interval",
    "IntervalVector",
    "IntervalMatrix",
    "MapDef",
    "make_map",
    "Candidate",
    "newton_refine",
    "seed_candidates",
    "Certificate",
    "certify_orbit",
    "__version__",
]
