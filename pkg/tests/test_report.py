"""Figure rendering from the delimited outputs."""

import pytest

from orbitcert.pdcurve import certify_curve, curve_samples, node_solve
from orbitcert.report import render_all, render_curve_figure, render_sweep_figures
from orbitcert.sweep import SweepConfig, aggregate_figures, run_sweep


@pytest.fixture(scope="module")
def predprey_outputs(tmp_path_factory):
    out = tmp_path_factory.mktemp("pp")
    cfg = SweepConfig(
        map_id="predprey",
        grid=(("beta", (-3.0, -4.0)), ("kappa", (-10.0, -12.0))),
        p_min=1, p_max=2, budget=40, seed=2, workers=1,
    )
    res = run_sweep(cfg)
    aggregate_figures(res, out)
    return out


def test_heatmap_from_two_parameter_sweep(predprey_outputs):
    paths = render_sweep_figures(predprey_outputs)
    names = {p.name for p in paths}
    assert "heatmap.png" in names
    for p in paths:
        assert p.stat().st_size > 1000


def test_curve_figure(tmp_path):
    cert = certify_curve(node_solve(1, (-12.0, -10.0), K=8))
    with (tmp_path / "curve.csv").open("w") as fh:
        fh.write("kappa,beta_lo,beta_hi\n")
        for kap, blo, bhi in curve_samples(cert, n=41):
            fh.write(f"{kap!r},{blo!r},{bhi!r}\n")
    paths = render_curve_figure(tmp_path)
    assert len(paths) == 1 and paths[0].name == "curve.png"
    assert paths[0].stat().st_size > 1000


def test_render_all_handles_missing_files(tmp_path):
    assert render_all(tmp_path) == []
