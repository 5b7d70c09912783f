"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np

from conftest import true_period_roots
from orbitcert.certify import certificate_to_json, certify_orbit, compute_bounds, select_radius
from orbitcert.cheb import ChebSeq, cheb_mul
from orbitcert.interval import Interval, iv_arith, iv_sqrt
from orbitcert.maps import make_map
from orbitcert.pdcurve import (
    analytic_p1_beta,
    certify_curve,
    find_doubling_seed,
    node_solve,
    patch_curves,
)
from orbitcert.sweep import SweepConfig, recount, run_sweep, write_archive
from orbitcert.zerofind import (
    Candidate,
    approx_inverse,
    build_DF,
    build_F,
    newton_refine,
    seed_candidates,
)


def _report(n: int, label: str, ok: bool, t0: float, detail: str = "") -> None:
    mark = "PASS" if ok else "FAIL"
    extra = f" | {detail}" if detail else ""
    print(f"[ACCEPTANCE {n}] {mark} ({time.time() - t0:5.1f}s) {label}{extra}")
    assert ok, f"criterion {n} failed: {label} {detail}"


def test_criterion_1_walkthrough_reproduction():
    t0 = time.time()
    m = make_map("logistic", mu="32/10")
    x0 = np.array([0.51, 0.79])
    cand = Candidate(
        map_id="logistic", params=dict(m.params_native), period=2, x_bar=x0,
        A=approx_inverse(build_DF(m, 2, x0)),
        residual=float(np.abs(build_F(m, 2, x0)).sum()),
    )
    Y, Z1, Z2 = compute_bounds(m, cand)
    sel = select_radius(Y, Z1, Z2)
    cert = certify_orbit(m, cand)
    lam = cert.eigenvalue
    checks = {
        "Y": 0.012775 <= Y.hi <= 0.012776,
        "Y_rel": abs(Y.hi - 0.0127751) <= 1e-6 * 0.0127751 + 1e-7,
        "Z1": Z1.hi <= 1e-15,
        "Z2": 20.742 <= Z2.lo and Z2.hi <= 20.743,
        "r_admissible": sel.ok and sel.r_minus.hi <= 2.0 ** -6 <= sel.r_plus.lo
        and cert.r_star == 2.0 ** -6,
        "lambda": -0.065 <= lam.lo and lam.hi <= 0.315,
        "lambda_016": Interval.from_fraction(4, 25).issubset(lam),
        "stable": cert.stability == "stable",
        "runtime": time.time() - t0 < 1.0,
    }
    detail = (f"Y.hi={Y.hi:.9f} Z1.hi={Z1.hi:.2e} Z2=[{Z2.lo:.5f},{Z2.hi:.5f}] "
              f"lam=[{lam.lo:.6f},{lam.hi:.6f}]")
    _report(1, "logistic walkthrough quantitative reproduction",
            all(checks.values()), t0,
            detail + "".join(f" {k}!" for k, v in checks.items() if not v))


def test_criterion_2_refined_candidate():
    t0 = time.time()
    refined = newton_refine(make_map("logistic", mu=3.2), 2, [0.51, 0.79])
    cert = certify_orbit(make_map("logistic", mu="32/10"), refined)
    ok = (cert.verified and cert.r_star <= 1e-11 and time.time() - t0 < 1.0)
    _report(2, "refined period-2 candidate certifies", ok, t0,
            f"r_star={cert.r_star:.3e}")


def test_criterion_3_period3_orbit():
    t0 = time.time()
    mu = 3.83
    m = make_map("logistic", mu=mu)
    cands = seed_candidates(m, 3, budget=400, rng=np.random.default_rng(101))
    certs = [certify_orbit(m, c) for c in cands]
    good = [c for c in certs if c.verified and c.distinct]
    roots = true_period_roots(mu, 3, step=1e-6)
    matched = 0
    for c in good:
        for x in c.candidate.x_bar:
            if any(abs(x - r) <= c.r_star + 1e-10 for r in roots):
                matched += 1
    ok = (len(good) >= 1 and matched == sum(len(c.candidate.x_bar) for c in good)
          and time.time() - t0 < 10.0)
    _report(3, "period-3 logistic orbit certified and oracle-matched", ok, t0,
            f"orbits={len(good)} bisection_roots={len(roots)}")


def test_criterion_4_oracle_equivalence():
    t0 = time.time()
    ok = True
    detail = []
    for mu in (3.2, 3.5, 3.83):
        m = make_map("logistic", mu=mu)
        for p in (1, 2, 3, 4):
            cands = seed_candidates(
                m, p, budget=1000, rng=np.random.default_rng(int(mu * 1000) + p)
            )
            good = [
                c for c in (certify_orbit(m, c) for c in cands)
                if c.verified and c.distinct
            ]
            coords = sorted(x for c in good for x in c.candidate.x_bar)
            roots = true_period_roots(mu, p, step=1e-6)
            if len(coords) != len(roots):
                ok = False
                detail.append(f"count(mu={mu},p={p}): {len(coords)}!={len(roots)}")
                continue
            for r, x in zip(roots, coords):
                cert = next(
                    c for c in good
                    if any(abs(xc - x) < 1e-15 for xc in c.candidate.x_bar)
                )
                if abs(r - x) > cert.r_star + 1e-10:
                    ok = False
                    detail.append(f"match(mu={mu},p={p},root={r:.6f})")
    ok = ok and time.time() - t0 < 60.0
    _report(4, "bisection-oracle bijection for p<=4", ok, t0, "; ".join(detail))


def test_criterion_5_predprey_pointwise():
    t0 = time.time()
    # below the analytic doubling curve kappa_pd(-3) = -9: period-2 exists
    m10 = make_map("predprey", beta=-3.0, kappa=-10.0)
    cands = seed_candidates(m10, 2, budget=100, rng=np.random.default_rng(5))
    p2 = [
        c for c in (certify_orbit(m10, c) for c in cands)
        if c.verified and c.distinct
    ]
    # above the curve: stable fixed point, no genuine period-2
    m8 = make_map("predprey", beta=-3.0, kappa=-8.0)
    fp = seed_candidates(m8, 1, budget=100, rng=np.random.default_rng(6))
    fp_certs = [
        c for c in (certify_orbit(m8, c) for c in fp) if c.verified and c.distinct
    ]
    p2_above = [
        c for c in (
            certify_orbit(m8, c)
            for c in seed_candidates(m8, 2, budget=100, rng=np.random.default_rng(7))
        )
        if c.verified and c.distinct
    ]
    ok = (
        len(p2) >= 1
        and len(fp_certs) == 1
        and fp_certs[0].stability == "stable"
        and len(p2_above) == 0
        and time.time() - t0 < 10.0
    )
    _report(5, "predprey period-2 below curve; stable fp and no p2 above", ok, t0,
            f"p2@-10={len(p2)} fp@-8={len(fp_certs)} p2@-8={len(p2_above)}")


def test_criterion_6_p1_curve_oracle():
    t0 = time.time()
    cand = node_solve(1, (-12.0, -10.0), K=16, N=10)
    cert = certify_curve(cand, R=1e-2)
    ok = cert.verified and cert.r_star <= 1e-6
    beta_seq = cand.w_bar[1]
    for kap in np.linspace(-12.0, -10.0, 10):
        al = (float(kap) + 12.0) - 1.0
        enc = beta_seq.eval(Interval.point(al))
        ki = Interval.point(float(kap))
        # exact root of beta^2 - kappa beta - 2 kappa = 0 on the beta < -4 branch
        beta_true = (ki - iv_sqrt(ki * ki + 8 * ki)) * 0.5
        ball = Interval(enc.lo - cert.r_star, enc.hi + cert.r_star)
        if not beta_true.issubset(ball):
            ok = False
    ok = ok and abs(analytic_p1_beta(-12.0) - (-6 - 2 * math.sqrt(3))) < 1e-12
    ok = ok and time.time() - t0 < 30.0
    _report(6, "p=1 doubling-curve uniform certificate vs analytic roots", ok, t0,
            f"r_star={cert.r_star:.3e}")


def test_criterion_7_p2_curve_windows():
    t0 = time.time()
    seed = find_doubling_seed(2, -31.0, (-20.0, -10.0))
    certs = []
    w = seed
    for j in range(5, -1, -1):
        window = (-16.0 - 3 * j, -13.0 - 3 * j)
        cand = node_solve(2, window, K=16, N=10, w0=w)
        certs.append(certify_curve(cand, R=1e-2))
        w = np.array(cand.node_w[-1])
    patches = [patch_curves(a, b) for a, b in zip(certs, certs[1:])]
    covered = (certs[0].candidate.window[0] == -31.0
               and certs[-1].candidate.window[1] == -13.0)
    last = certs[-1]  # the window [-16, -13] named by the criterion
    ok = (
        all(c.verified for c in certs)
        and last.r_star <= 1e-3
        and all(c.r_star <= 1e-3 for c in certs)
        and all(p.ok for p in patches)
        and covered
        and time.time() - t0 < 600.0
    )
    _report(7, "p=2 doubling-curve windows certify and patch over [-31,-13]",
            ok, t0,
            "r_star=" + ",".join(f"{c.r_star:.1e}" for c in certs))


def test_criterion_8_census_property(tmp_path):
    t0 = time.time()
    # determinism across worker counts
    base = SweepConfig(map_id="logistic", grid=(("mu", (3.2, 3.5)),),
                       p_min=1, p_max=4, budget=100, seed=3, workers=1)
    res_w1 = run_sweep(base)
    res_w2 = run_sweep(SweepConfig(**{**base.__dict__, "workers": 2}))
    deterministic = (
        [certificate_to_json(c) for c in res_w1.certificates]
        == [certificate_to_json(c) for c in res_w2.certificates]
    )
    # combined certified count nondecreasing along mu at fixed budget
    mus = (3.2, 3.5, 3.57, 3.83, 3.99)
    cfg = SweepConfig(map_id="logistic", grid=(("mu", mus),),
                      p_min=1, p_max=8, budget=300, seed=7, workers=2)
    res = run_sweep(cfg)
    counts = res.counts_by_cell()
    seq = [counts[(("mu", mu),)] for mu in mus]
    nondecreasing = all(a <= b for a, b in zip(seq, seq[1:]))
    # archive fidelity: recount equals census and every orbit re-verifies
    path = write_archive(res.certificates, tmp_path / "archive.jsonl")
    redo = recount(path, verify=True)
    orig = {
        (tuple(sorted(r.params.items())), r.period):
            (r.n_stable, r.n_unstable, r.n_inconclusive)
        for r in res.rows if r.total
    }
    back = {
        (tuple(sorted(r.params.items())), r.period):
            (r.n_stable, r.n_unstable, r.n_inconclusive)
        for r in redo
    }
    ok = (deterministic and nondecreasing and orig == back
          and time.time() - t0 < 900.0)
    _report(8, "census determinism, archive re-verification, monotone counts",
            ok, t0, f"counts={seq}")


def test_criterion_9_kernel_property_suites():
    t0 = time.time()
    rng = random.Random(2024)

    def rf():
        return rng.uniform(-1e3, 1e3) * 10 ** rng.randint(-2, 2)

    OPS = {"add": lambda x, y: x + y, "sub": lambda x, y: x - y,
           "mul": lambda x, y: x * y, "div": lambda x, y: x / y}
    violations = 0
    for _ in range(100_000):
        a, b = sorted((rf(), rf()))
        c, d = sorted((rf(), rf()))
        op = rng.choice(("add", "sub", "mul", "div"))
        if op == "div" and c <= 0.0 <= d:
            op = "mul"
        X, Y, Z = Interval(a, b), Interval(c, d), None
        Z = iv_arith(op, X, Y)
        zlo, zhi = Fraction(Z.lo), Fraction(Z.hi)
        f = OPS[op]
        for k in range(10):
            s = k / 9
            x = min(max(a + s * (b - a), a), b)
            y = min(max(c + (1 - s) * (d - c), c), d)
            if not zlo <= f(Fraction(x), Fraction(y)) <= zhi:
                violations += 1
    arith_ok = violations == 0

    nrng = np.random.default_rng(77)
    sub_viol = 0
    for _ in range(10_000):
        pa = ChebSeq.from_floats(nrng.normal(size=int(nrng.integers(1, 7))))
        pb = ChebSeq.from_floats(nrng.normal(size=int(nrng.integers(1, 7))))
        if cheb_mul(pa, pb).norm_l1().lo > (pa.norm_l1() * pb.norm_l1()).hi:
            sub_viol += 1
    sub_ok = sub_viol == 0

    c0_viol = 0
    for _ in range(1000):
        psi = ChebSeq.from_floats(nrng.normal(size=int(nrng.integers(1, 9))))
        full = psi.lo.copy()
        full[1:] *= 2.0
        alphas = nrng.uniform(-1, 1, size=100)
        vals = np.abs(np.polynomial.chebyshev.chebval(alphas, full))
        bound = psi.norm_l1().hi
        c0_viol += int(np.sum(vals > bound + 1e-10 * (1.0 + bound)))
    c0_ok = c0_viol == 0

    ok = arith_ok and sub_ok and c0_ok and time.time() - t0 < 60.0
    _report(9, "kernel fuzz, Banach-algebra, C0-domination property suites",
            ok, t0,
            f"arith_viol={violations} submult_viol={sub_viol} c0_viol={c0_viol}")
