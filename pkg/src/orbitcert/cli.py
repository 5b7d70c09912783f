"""Command-line front end.

Subcommands: certify (one orbit), sweep (grid census), curve (period
doubling continuation), recount (archive to census), selfcheck (logistic
worked example against stored reference enclosures), report (re-render
figures).

All numeric flags accept decimal, rational (``32/10``) and hex-float
(``0x1.999999999999ap+1``) literals; map parameters are enclosed tightly
from the literal, so decimal inputs never silently lose rigor.  A JSON
config file may preload any flag of the chosen subcommand (flag values on
the command line win).  Exit status: 0 verified, 1 not verified, 2 usage
error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .certify import certificate_to_json, certify_orbit
from .maps import make_map, registered_maps
from .pdcurve import (
    ContinuationError,
    analytic_p1_seed,
    certify_window_adaptive,
    curve_certificate_to_json,
    curve_samples,
    find_doubling_seed,
    patch_curves,
)
from .report import CURVE_CSV_NAME, render_all, render_curve_figure, render_sweep_figures
from .sweep import (
    SweepConfig,
    aggregate_figures,
    default_config,
    default_workers,
    recount,
    run_sweep,
)
from .zerofind import NewtonFailure, Candidate, approx_inverse, build_DF, build_F, newton_refine, seed_candidates

MAP_PARAM_FLAGS = {"logistic": ("mu",), "predprey": ("beta", "kappa")}


def _parse_float(text: str) -> float:
    text = text.strip()
    low = text.lower()
    if low in ("inf", "+inf", "infinity"):
        return math.inf
    if low.startswith(("0x", "-0x", "+0x")):
        return float.fromhex(text)
    if "/" in text:
        num, den = text.split("/", 1)
        return float(int(num)) / float(int(den))
    return float(text)


def _parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}")
    return tuple(_parse_float(p) for p in parts)  # type: ignore[return-value]


def _grid_values(lo: float, hi: float, step: float) -> tuple[float, ...]:
    n = int(round((hi - lo) / step))
    return tuple(float(lo + k * step) for k in range(n + 1))


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="orbitcert",
        description="Rigorous certification of periodic orbits and "
        "period-doubling curves.",
    )
    ap.add_argument("--version", action="version", version=f"orbitcert {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_map_flags(p):
        p.add_argument("--map", required=True, choices=registered_maps())
        p.add_argument("--mu", help="logistic parameter")
        p.add_argument("--beta", help="predprey parameter")
        p.add_argument("--kappa", help="predprey parameter")

    pc = sub.add_parser("certify", help="certify one periodic orbit")
    add_map_flags(pc)
    pc.add_argument("--period", type=int, required=True)
    pc.add_argument("--x", help="comma-separated candidate coordinates")
    pc.add_argument("--no-refine", action="store_true",
                    help="certify the given coordinates without Newton refinement")
    pc.add_argument("--budget", type=int, default=200,
                    help="seeding budget when --x is omitted")
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--R", default="inf", help="a-priori radius bound")
    pc.add_argument("--out", help="write certificate JSON here (default stdout)")
    pc.add_argument("--config", help="JSON file preloading these flags")

    ps = sub.add_parser("sweep", help="grid census of certified orbits")
    ps.add_argument("--map", required=True, choices=registered_maps())
    ps.add_argument("--grid", action="append", default=None,
                    metavar="name=lo:hi:step",
                    help="parameter grid (repeat per parameter)")
    ps.add_argument("--periods", default=None, metavar="pmin:pmax")
    ps.add_argument("--budget", type=int, default=None)
    ps.add_argument("--seed", type=int, default=None)
    ps.add_argument("--workers", type=int, default=None,
                    help="default from ORBITCERT_WORKERS or 1")
    ps.add_argument("--out-dir", required=True)
    ps.add_argument("--no-figures", action="store_true")
    ps.add_argument("--config", help="JSON file preloading these flags")

    pv = sub.add_parser("curve", help="certify period-doubling curve windows")
    pv.add_argument("--period", type=int, default=1, choices=(1, 2))
    pv.add_argument("--kappa-min", required=True)
    pv.add_argument("--kappa-max", required=True)
    pv.add_argument("--window-width", default="3")
    pv.add_argument("--K", type=int, default=16)
    pv.add_argument("--N", type=int, default=10)
    pv.add_argument("--R", default="1e-2")
    pv.add_argument("--beta-scan", default=None, metavar="lo:hi",
                    help="beta scan range for the p=2 seed at kappa-min "
                    "(use --beta-scan=-11:-8 for negative values)")
    pv.add_argument("--out-dir", required=True)
    pv.add_argument("--no-figures", action="store_true")
    pv.add_argument("--config", help="JSON file preloading these flags")

    pr = sub.add_parser("recount", help="rebuild the census from an archive")
    pr.add_argument("--archive", required=True)
    pr.add_argument("--out", help="census CSV path (default stdout)")
    pr.add_argument("--verify", action="store_true",
                    help="re-certify every archived candidate")

    sub.add_parser("selfcheck", help="run the logistic walkthrough checks")

    pp = sub.add_parser("report", help="render figures for an output directory")
    pp.add_argument("--dir", required=True)

    return ap


def _apply_config(args: argparse.Namespace, argv: list[str]) -> None:
    path = getattr(args, "config", None)
    if not path:
        return
    with open(path) as fh:
        cfg = json.load(fh)
    explicit = {a.split("=")[0].lstrip("-").replace("-", "_")
                for a in argv if a.startswith("--")}
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if dest in explicit or not hasattr(args, dest):
            continue
        setattr(args, dest, value)


class UsageError(Exception):
    pass


def _map_params(args) -> dict[str, str]:
    flags = MAP_PARAM_FLAGS[args.map]
    params = {}
    for name in flags:
        val = getattr(args, name, None)
        if val is None:
            raise UsageError(f"--{name} is required for map {args.map!r}")
        params[name] = str(val)
    return params


def _usage_error(msg: str) -> bool:
    print(f"orbitcert: error: {msg}", file=sys.stderr)
    return True


def _cmd_certify(args) -> int:
    params = _map_params(args)
    m = make_map(args.map, **params)
    if m.region_warning:
        print(f"warning: {m.region_warning}", file=sys.stderr)
    R = _parse_float(args.R)
    if args.x:
        x0 = np.array([_parse_float(t) for t in args.x.split(",")])
        if x0.size != args.period:
            _usage_error(f"--x needs {args.period} coordinates, got {x0.size}")
            return 2
        if args.no_refine:
            cand = Candidate(
                map_id=m.map_id,
                params=dict(m.params_native),
                period=args.period,
                x_bar=x0,
                A=approx_inverse(build_DF(m, args.period, x0)),
                residual=float(np.abs(build_F(m, args.period, x0)).sum()),
            )
        else:
            try:
                cand = newton_refine(m, args.period, x0)
            except NewtonFailure as exc:
                print(f"refinement failed: {exc}", file=sys.stderr)
                return 1
    else:
        rng = np.random.default_rng(args.seed)
        cands = seed_candidates(m, args.period, budget=args.budget, rng=rng)
        if not cands:
            print("no candidate found by seeding", file=sys.stderr)
            return 1
        cand = cands[0]
    cert = certify_orbit(m, cand, R=R)
    doc = certificate_to_json(cert)
    if args.out:
        Path(args.out).write_text(doc + "\n")
    else:
        print(doc)
    if cert.verified:
        print(
            f"verified: period {cand.period}, r_star={cert.r_star:.6e}, "
            f"distinct={cert.distinct}, stability={cert.stability}",
            file=sys.stderr,
        )
        return 0
    print(f"not verified: {cert.reason}", file=sys.stderr)
    return 1


def _cmd_sweep(args) -> int:
    base = None
    if args.grid:
        grid = []
        for g in args.grid:
            name, rng_txt = g.split("=", 1)
            grid.append((name.strip(), _grid_values(*_parse_range(rng_txt))))
        p_min, p_max = 1, 6
        if args.periods:
            lohi = args.periods.split(":")
            p_min, p_max = int(lohi[0]), int(lohi[-1])
        base = SweepConfig(
            map_id=args.map,
            grid=tuple(grid),
            p_min=p_min,
            p_max=p_max,
            budget=args.budget if args.budget is not None else 100,
            seed=args.seed if args.seed is not None else 0,
            workers=args.workers if args.workers is not None else default_workers(),
        )
    else:
        over = {}
        if args.periods:
            lohi = args.periods.split(":")
            over["p_min"], over["p_max"] = int(lohi[0]), int(lohi[-1])
        if args.budget is not None:
            over["budget"] = args.budget
        if args.seed is not None:
            over["seed"] = args.seed
        over["workers"] = args.workers if args.workers is not None else default_workers()
        base = default_config(args.map, **over)

    def progress(done, total):
        if done % max(1, total // 20) == 0 or done == total:
            print(f"  {done}/{total} work items", file=sys.stderr)

    result = run_sweep(base, progress=progress)
    out_dir = Path(args.out_dir)
    paths = aggregate_figures(result, out_dir)
    n_orbits = len(result.certificates)
    print(f"certified orbits: {n_orbits}", file=sys.stderr)
    for label, p in paths.items():
        print(f"  {label}: {p}", file=sys.stderr)
    if not args.no_figures:
        for p in render_sweep_figures(out_dir):
            print(f"  figure: {p}", file=sys.stderr)
    return 0


def _cmd_curve(args) -> int:
    k_min = _parse_float(args.kappa_min)
    k_max = _parse_float(args.kappa_max)
    if not k_min < k_max:
        _usage_error("--kappa-min must be below --kappa-max")
        return 2
    width = _parse_float(args.window_width)
    R = _parse_float(args.R)
    p = args.period
    edges = [k_min]
    while edges[-1] + width < k_max - 1e-12:
        edges.append(edges[-1] + width)
    edges.append(k_max)

    if p == 1:
        seed = analytic_p1_seed(k_min)
    else:
        if args.beta_scan:
            lo, hi = (float(_parse_float(t)) for t in args.beta_scan.split(":"))
        else:
            lo, hi = k_min * 0.65, k_min * 0.3
        print(f"scanning beta in [{lo}, {hi}] at kappa={k_min}", file=sys.stderr)
        try:
            seed = find_doubling_seed(p, k_min, (lo, hi))
        except ContinuationError as exc:
            print(f"seed search failed: {exc}", file=sys.stderr)
            return 1

    certs = []
    ok = True
    for a, b in zip(edges, edges[1:]):
        try:
            pieces = certify_window_adaptive(p, (a, b), K=args.K, N=args.N, R=R, w0=seed)
        except ContinuationError as exc:
            print(f"window ({a}, {b}) failed: {exc}", file=sys.stderr)
            ok = False
            break
        certs.extend(pieces)
        seed = np.array(pieces[-1].candidate.node_w[-1])
        for c in pieces:
            print(
                f"window {c.candidate.window}: r_star={c.r_star:.3e} "
                f"(uniqueness up to {c.r_uniqueness:.3e})",
                file=sys.stderr,
            )
    patches_ok = True
    for a, b in zip(certs, certs[1:]):
        res = patch_curves(a, b)
        if not res.ok:
            patches_ok = False
            print(f"patch failure: {res.detail}", file=sys.stderr)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with (out_dir / "curve_certificates.jsonl").open("w") as fh:
        for c in certs:
            fh.write(curve_certificate_to_json(c) + "\n")
    with (out_dir / CURVE_CSV_NAME).open("w") as fh:
        fh.write("kappa,beta_lo,beta_hi\n")
        for c in certs:
            for kap, blo, bhi in curve_samples(c):
                fh.write(f"{kap!r},{blo!r},{bhi!r}\n")
    if not args.no_figures:
        for pth in render_curve_figure(out_dir):
            print(f"  figure: {pth}", file=sys.stderr)
    n_done = len(certs)
    print(
        f"{n_done} window certificate(s); chain "
        f"{'continuous' if patches_ok else 'NOT continuous'}",
        file=sys.stderr,
    )
    return 0 if (ok and patches_ok and certs) else 1


def _cmd_recount(args) -> int:
    rows = recount(Path(args.archive), verify=args.verify)
    lines = ["params,period,n_stable,n_unstable,n_inconclusive"]
    for r in rows:
        ptxt = ";".join(f"{k}={v!r}" for k, v in sorted(r.params.items()))
        lines.append(f"{ptxt},{r.period},{r.n_stable},{r.n_unstable},{r.n_inconclusive}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_selfcheck(_args) -> int:
    """Logistic period-2 worked example against stored reference enclosures."""
    checks: list[tuple[str, bool, str]] = []
    m = make_map("logistic", mu="32/10")
    x0 = np.array([0.51, 0.79])
    cand = Candidate(
        map_id="logistic", params=dict(m.params_native), period=2,
        x_bar=x0, A=approx_inverse(build_DF(m, 2, x0)),
        residual=float(np.abs(build_F(m, 2, x0)).sum()),
    )
    cert = certify_orbit(m, cand)
    checks.append(("two-digit candidate verified", cert.verified, ""))
    y_hi = cert.Y.hi if cert.Y else math.nan
    checks.append(
        ("Y upper bound in [0.012775, 0.012776]",
         0.012775 <= y_hi <= 0.012776, f"Y.hi={y_hi!r}")
    )
    z1 = cert.Z1.hi if cert.Z1 else math.nan
    checks.append(("Z1 <= 1e-15", z1 <= 1e-15, f"Z1.hi={z1!r}"))
    z2 = cert.Z2
    checks.append(
        ("Z2 inside [20.742, 20.743]",
         z2 is not None and 20.742 <= z2.lo and z2.hi <= 20.743,
         f"Z2={z2!r}")
    )
    admissible = cert.r_minus is not None and cert.r_plus is not None and (
        cert.r_minus.hi <= 2.0 ** -6 <= cert.r_plus.lo
    )
    checks.append(("r = 2^-6 admissible", bool(admissible), f"r_star={cert.r_star!r}"))
    lam = cert.eigenvalue
    lam_ok = lam is not None and -0.065 <= lam.lo and lam.hi <= 0.315 and 0.16 in lam
    checks.append(("eigenvalue in [-0.065, 0.315], contains 0.16",
                   bool(lam_ok), f"lambda={lam!r}"))
    checks.append(("verdict stable", cert.stability == "stable", cert.stability))
    refined = newton_refine(make_map("logistic", mu=3.2), 2, x0)
    cert_r = certify_orbit(m, refined)
    checks.append(
        ("refined candidate r_star <= 1e-11",
         bool(cert_r.verified and cert_r.r_star <= 1e-11),
         f"r_star={cert_r.r_star!r}")
    )
    width = max(len(c[0]) for c in checks)
    all_ok = True
    for label, ok, detail in checks:
        mark = "PASS" if ok else "FAIL"
        all_ok &= ok
        print(f"{label:<{width}}  {mark}  {detail}")
    return 0 if all_ok else 1


def _cmd_report(args) -> int:
    paths = render_all(Path(args.dir))
    for p in paths:
        print(p)
    return 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = _build_parser()
    args = ap.parse_args(argv)
    _apply_config(args, argv)
    try:
        if args.command == "certify":
            return _cmd_certify(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "curve":
            return _cmd_curve(args)
        if args.command == "recount":
            return _cmd_recount(args)
        if args.command == "selfcheck":
            return _cmd_selfcheck(args)
        if args.command == "report":
            return _cmd_report(args)
    except (UsageError, ValueError, KeyError, OSError) as exc:
        print(f"orbitcert: error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
