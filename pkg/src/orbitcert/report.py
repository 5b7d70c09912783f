"""Figure rendering for sweep and curve outputs.

Reads the delimited files written by the sweep/curve pipelines and renders
matplotlib figures next to them.  Rendering is presentation only; every
number shown comes from the CSV/JSONL outputs, which remain the interface
for external tools.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .sweep import BIFURCATION_NAME, CENSUS_NAME, HEATMAP_NAME  # noqa: E402

__all__ = [
    "render_sweep_figures",
    "render_curve_figure",
    "render_all",
    "CURVE_CSV_NAME",
]

CURVE_CSV_NAME = "curve.csv"

_STABILITY_COLORS = {"stable": "tab:blue", "unstable": "m", "inconclusive": "0.5"}


def _read_csv(path: Path) -> tuple[list[str], list[list[str]]]:
    with path.open() as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def render_sweep_figures(out_dir: Path, dpi: int = 150) -> list[Path]:
    """Render whatever sweep outputs are present in out_dir; returns paths."""
    out_dir = Path(out_dir)
    written: list[Path] = []

    bif = out_dir / BIFURCATION_NAME
    if bif.exists():
        header, rows = _read_csv(bif)
        if rows and len(header) == 4:  # single-parameter map
            pname = header[0]
            fig, ax = plt.subplots(figsize=(7, 4.5))
            for verdict, color in _STABILITY_COLORS.items():
                pts = [(float(r[0]), float(r[1])) for r in rows if r[3] == verdict]
                if pts:
                    arr = np.array(pts)
                    ax.plot(arr[:, 0], arr[:, 1], ".", ms=2.5, color=color,
                            label=verdict)
            ax.set_xlabel(pname)
            ax.set_ylabel("certified orbit coordinates")
            ax.set_title("Certified periodic points")
            ax.legend(markerscale=4, fontsize=8)
            fig.tight_layout()
            path = out_dir / "bifurcation.png"
            fig.savefig(path, dpi=dpi)
            plt.close(fig)
            written.append(path)

    census = out_dir / CENSUS_NAME
    if census.exists():
        header, rows = _read_csv(census)
        n_par = len(header) - 4
        if rows and n_par == 1:
            pname = header[0]
            totals: dict[float, dict[str, int]] = {}
            for r in rows:
                d = totals.setdefault(float(r[0]), {"stable": 0, "unstable": 0})
                d["stable"] += int(r[n_par + 1])
                d["unstable"] += int(r[n_par + 2])
            xs = sorted(totals)
            fig, ax = plt.subplots(figsize=(7, 4.5))
            ax.plot(xs, [totals[x]["stable"] for x in xs], "o-",
                    color="tab:blue", label="stable")
            ax.plot(xs, [totals[x]["unstable"] for x in xs], "s-",
                    color="m", label="unstable")
            ax.set_xlabel(pname)
            ax.set_ylabel("certified orbits (all periods)")
            ax.set_title("Census of certified orbits")
            ax.legend()
            fig.tight_layout()
            path = out_dir / "census.png"
            fig.savefig(path, dpi=dpi)
            plt.close(fig)
            written.append(path)

    heat = out_dir / HEATMAP_NAME
    if heat.exists():
        header, rows = _read_csv(heat)
        if rows and len(header) == 3:  # two-parameter map
            xs = sorted({float(r[0]) for r in rows})
            ys = sorted({float(r[1]) for r in rows})
            grid = np.full((len(ys), len(xs)), np.nan)
            xi = {v: i for i, v in enumerate(xs)}
            yi = {v: i for i, v in enumerate(ys)}
            for r in rows:
                grid[yi[float(r[1])], xi[float(r[0])]] = float(r[2])
            fig, ax = plt.subplots(figsize=(7, 5))
            im = ax.pcolormesh(xs, ys, grid, cmap="Reds", shading="nearest")
            fig.colorbar(im, ax=ax, label="max certified period")
            ax.set_xlabel(header[0])
            ax.set_ylabel(header[1])
            ax.set_title("Max certified period over the parameter plane")
            fig.tight_layout()
            path = out_dir / "heatmap.png"
            fig.savefig(path, dpi=dpi)
            plt.close(fig)
            written.append(path)

    return written


def render_curve_figure(out_dir: Path, dpi: int = 150) -> list[Path]:
    """Render the certified beta(kappa) band from curve.csv."""
    out_dir = Path(out_dir)
    csv_path = out_dir / CURVE_CSV_NAME
    if not csv_path.exists():
        return []
    header, rows = _read_csv(csv_path)
    kappas = np.array([float(r[0]) for r in rows])
    blo = np.array([float(r[1]) for r in rows])
    bhi = np.array([float(r[2]) for r in rows])
    order = np.argsort(kappas)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.fill_between(kappas[order], blo[order], bhi[order], color="tab:red",
                    alpha=0.6, label="certified enclosure")
    ax.plot(kappas[order], 0.5 * (blo + bhi)[order], "k-", lw=0.7)
    ax.set_xlabel("kappa")
    ax.set_ylabel("beta")
    ax.set_title("Period-doubling candidate curve")
    ax.legend()
    fig.tight_layout()
    path = out_dir / "curve.png"
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return [path]


def render_all(out_dir: Path) -> list[Path]:
    return render_sweep_figures(out_dir) + render_curve_figure(out_dir)
