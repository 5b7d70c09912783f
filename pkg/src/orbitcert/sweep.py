"""Parameter sweeps: seed, refine, certify and count orbits over a grid.

Work items are (grid cell, period) pairs, each with its own deterministic
random stream derived from the sweep seed, so census counts are invariant
under the worker count and work order.  Every counted orbit is backed by a
verified, distinct certificate in the archive (one JSON document per line);
the census can be recounted from the archive alone.

Census magnitudes produced by the desk-scale default grids are certified
lower bounds on the number of orbits, never exhaustive totals: seeding
budgets are finite.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .certify import (
    Certificate,
    INCONCLUSIVE,
    STABLE,
    UNSTABLE,
    certificate_from_json,
    certificate_to_json,
    certify_orbit,
    recertify,
)
from .maps import make_map
from .zerofind import seed_candidates

__all__ = [
    "SweepConfig",
    "CensusRow",
    "SweepResult",
    "default_config",
    "run_sweep",
    "aggregate_figures",
    "write_archive",
    "read_archive",
    "recount",
]

ARCHIVE_NAME = "certificates.jsonl"
CENSUS_NAME = "census.csv"
BIFURCATION_NAME = "bifurcation.csv"
HEATMAP_NAME = "heatmap.csv"


@dataclass(frozen=True)
class SweepConfig:
    """Grid + budget description of one sweep (values all picklable)."""

    map_id: str
    grid: tuple[tuple[str, tuple[float, ...]], ...]  # (param, values), ordered
    p_min: int = 1
    p_max: int = 6
    budget: int = 100
    seed: int = 0
    workers: int = 1
    R: float = math.inf

    def cells(self) -> list[dict[str, float]]:
        names = [g[0] for g in self.grid]
        values = [g[1] for g in self.grid]
        return [dict(zip(names, combo)) for combo in itertools.product(*values)]

    def param_names(self) -> list[str]:
        return [g[0] for g in self.grid]


@dataclass
class CensusRow:
    params: dict[str, float]
    period: int
    n_stable: int
    n_unstable: int
    n_inconclusive: int

    @property
    def total(self) -> int:
        return self.n_stable + self.n_unstable + self.n_inconclusive


@dataclass
class SweepResult:
    config: SweepConfig
    rows: list[CensusRow]
    certificates: list[Certificate] = field(default_factory=list)

    def counts_by_cell(self) -> dict[tuple, int]:
        out: dict[tuple, int] = {}
        for r in self.rows:
            key = tuple(sorted(r.params.items()))
            out[key] = out.get(key, 0) + r.total
        return out


def _grid_range(lo: float, hi: float, step: float) -> tuple[float, ...]:
    n = int(round((hi - lo) / step))
    return tuple(float(lo + k * step) for k in range(n + 1))


def default_config(map_id: str, **overrides) -> SweepConfig:
    """Desk-scale default grids (documented lower-bound census scales)."""
    if map_id == "logistic":
        cfg = SweepConfig(
            map_id="logistic",
            grid=(("mu", _grid_range(2.8, 4.0, 0.01)),),
            p_min=1,
            p_max=16,
            budget=200,
            seed=0,
        )
    elif map_id == "predprey":
        cfg = SweepConfig(
            map_id="predprey",
            grid=(
                ("beta", _grid_range(-20.0, -2.0, 0.25)),
                ("kappa", _grid_range(-45.0, -5.0, 0.5)),
            ),
            p_min=1,
            p_max=6,
            budget=100,
            seed=0,
        )
    else:
        raise KeyError(f"no default sweep for map {map_id!r}")
    if overrides:
        cfg = SweepConfig(**{**cfg.__dict__, **overrides})
    return cfg


def _ball_dedup(certs: list[Certificate]) -> list[Certificate]:
    """Drop certificates whose uniqueness balls overlap an earlier one
    (same true orbit proved twice); keep the tightest."""
    verified = [c for c in certs if c.verified and c.distinct]
    verified.sort(key=lambda c: (c.r_tight, tuple(c.candidate.canonical())))
    kept: list[Certificate] = []
    for c in verified:
        cc = c.candidate.canonical()
        dup = False
        for k in kept:
            if c.candidate.period != k.candidate.period:
                continue
            gap = float(np.abs(cc - k.candidate.canonical()).sum())
            if gap <= c.r_tight + k.r_tight:
                dup = True
                break
        if not dup:
            kept.append(c)
    kept.sort(key=lambda c: tuple(c.candidate.canonical()))
    return kept


def _run_task(args: tuple) -> tuple[tuple, list[str]]:
    """One (cell, period) work item; returns (sort key, certificate JSONs)."""
    map_id, cell_items, period, budget, seed, cell_idx, R = args
    params = dict(cell_items)
    m = make_map(map_id, **params)
    rng = np.random.default_rng(np.random.SeedSequence([seed, cell_idx, period]))
    cands = seed_candidates(m, period, budget=budget, rng=rng)
    certs = [certify_orbit(m, c, R=R) for c in cands]
    kept = _ball_dedup(certs)
    key = (cell_idx, period)
    return key, [certificate_to_json(c) for c in kept]


def run_sweep(cfg: SweepConfig, progress=None) -> SweepResult:
    """Execute the sweep; deterministic for a fixed config regardless of
    worker count."""
    cells = cfg.cells()
    tasks = []
    for ci, cell in enumerate(cells):
        for p in range(cfg.p_min, cfg.p_max + 1):
            tasks.append(
                (cfg.map_id, tuple(sorted(cell.items())), p, cfg.budget,
                 cfg.seed, ci, cfg.R)
            )
    results: dict[tuple, list[str]] = {}
    workers = cfg.workers or 1
    if workers <= 1:
        for i, t in enumerate(tasks):
            key, docs = _run_task(t)
            results[key] = docs
            if progress:
                progress(i + 1, len(tasks))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for i, (key, docs) in enumerate(pool.map(_run_task, tasks, chunksize=1)):
                results[key] = docs
                if progress:
                    progress(i + 1, len(tasks))

    rows: list[CensusRow] = []
    certificates: list[Certificate] = []
    for ci, cell in enumerate(cells):
        for p in range(cfg.p_min, cfg.p_max + 1):
            docs = results.get((ci, p), [])
            certs = [certificate_from_json(d) for d in docs]
            certificates.extend(certs)
            rows.append(
                CensusRow(
                    params=dict(cell),
                    period=p,
                    n_stable=sum(1 for c in certs if c.stability == STABLE),
                    n_unstable=sum(1 for c in certs if c.stability == UNSTABLE),
                    n_inconclusive=sum(
                        1 for c in certs if c.stability == INCONCLUSIVE
                    ),
                )
            )
    return SweepResult(config=cfg, rows=rows, certificates=certificates)


# ---------------------------------------------------------------------------
# Output files.
# ---------------------------------------------------------------------------

def write_archive(certs: list[Certificate], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fh:
        for c in certs:
            fh.write(certificate_to_json(c))
            fh.write("\n")
    return path


def read_archive(path: Path) -> list[Certificate]:
    out = []
    with Path(path).open() as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(certificate_from_json(line))
    return out


def aggregate_figures(result: SweepResult, out_dir: Path) -> dict[str, Path]:
    """Write the delimited outputs: census, bifurcation points, heatmap."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = result.config.param_names()

    census_path = out_dir / CENSUS_NAME
    with census_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names + ["period", "n_stable", "n_unstable", "n_inconclusive"])
        for r in result.rows:
            w.writerow(
                [repr(r.params[n]) for n in names]
                + [r.period, r.n_stable, r.n_unstable, r.n_inconclusive]
            )

    bif_path = out_dir / BIFURCATION_NAME
    with bif_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names + ["coordinate", "period", "stability"])
        for c in result.certificates:
            for coord in c.candidate.x_bar:
                w.writerow(
                    [repr(c.candidate.params[n]) for n in names]
                    + [repr(float(coord)), c.candidate.period, c.stability]
                )

    heat_path = out_dir / HEATMAP_NAME
    max_p: dict[tuple, int] = {}
    for r in result.rows:
        key = tuple(r.params[n] for n in names)
        if r.total > 0:
            max_p[key] = max(max_p.get(key, 0), r.period)
        else:
            max_p.setdefault(key, 0)
    with heat_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names + ["max_period"])
        for key in sorted(max_p):
            w.writerow([repr(v) for v in key] + [max_p[key]])

    archive_path = write_archive(result.certificates, out_dir / ARCHIVE_NAME)

    # record the exact configuration (grid, budget, PRNG seed) with the data
    cfg_path = out_dir / "sweep_config.json"
    cfg = result.config
    cfg_path.write_text(json.dumps({
        "map": cfg.map_id,
        "grid": {name: [repr(v) for v in vals] for name, vals in cfg.grid},
        "p_min": cfg.p_min,
        "p_max": cfg.p_max,
        "budget": cfg.budget,
        "seed": cfg.seed,
        "R": "inf" if math.isinf(cfg.R) else repr(cfg.R),
    }, indent=2, sort_keys=True) + "\n")

    return {
        "census": census_path,
        "bifurcation": bif_path,
        "heatmap": heat_path,
        "archive": archive_path,
        "config": cfg_path,
    }


def recount(archive_path: Path, verify: bool = False) -> list[CensusRow]:
    """Rebuild census rows from an archive; with verify=True every
    certificate is re-certified from its embedded candidate first."""
    certs = read_archive(archive_path)
    if verify:
        for c in certs:
            redo = recertify(c)
            if not (redo.verified and redo.distinct):
                raise ValueError(
                    "archive certificate failed re-verification: "
                    f"{c.candidate.map_id} p={c.candidate.period} "
                    f"params={c.candidate.params}"
                )
    buckets: dict[tuple, CensusRow] = {}
    for c in certs:
        key = (tuple(sorted(c.candidate.params.items())), c.candidate.period)
        row = buckets.get(key)
        if row is None:
            row = CensusRow(dict(c.candidate.params), c.candidate.period, 0, 0, 0)
            buckets[key] = row
        if c.stability == STABLE:
            row.n_stable += 1
        elif c.stability == UNSTABLE:
            row.n_unstable += 1
        else:
            row.n_inconclusive += 1
    return [buckets[k] for k in sorted(buckets)]


def default_workers() -> int:
    env = os.environ.get("ORBITCERT_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1
