"""Period-doubling curve certification, with the p=1 analytic curve as oracle."""

import math

import numpy as np
import pytest

from orbitcert.interval import Interval, iv_sqrt
from orbitcert.pdcurve import (
    analytic_p1_beta,
    analytic_p1_seed,
    build_extended_F,
    certify_curve,
    certify_window_adaptive,
    curve_samples,
    curve_certificate_to_json,
    extended_DF_native,
    find_doubling_seed,
    kappa_of_alpha,
    kappa_seq,
    node_solve,
    patch_curves,
    pointwise_extended_certify,
    uniform_bounds,
)

WINDOW_P1 = (-12.0, -10.0)


@pytest.fixture(scope="module")
def p1_cand():
    return node_solve(1, WINDOW_P1, K=16)


@pytest.fixture(scope="module")
def p1_cert(p1_cand):
    return certify_curve(p1_cand, R=1e-2)


class TestKappaWindow:
    def test_kappa_endpoints(self):
        assert kappa_of_alpha((-16.0, -13.0), -1.0) == -16.0
        assert kappa_of_alpha((-16.0, -13.0), 1.0) == -13.0

    def test_kappa_norm_closed_form(self):
        # |k1+k2|/2 + |k2-k1|/2 = 29/2 + 3/2 = 16 for the window [-16, -13]
        nrm = kappa_seq((-16.0, -13.0)).norm_l1()
        assert 16.0 in nrm and nrm.width < 1e-12


class TestExtendedMap:
    def test_analytic_point_is_zero(self):
        # on kappa = beta^2/(beta+2): beta=-3, kappa=-9, x = ln 2
        w = np.array([math.log(2.0), -3.0])
        F = build_extended_F(1, w, -1.0, (-9.0, -8.0))
        assert np.abs(F).max() < 1e-14

    def test_native_jacobian_matches_fd(self, rng):
        for p in (1, 2):
            n = 2 * p
            w = rng.uniform(-1.0, 1.0, size=n)
            w[2 * p - 1] = rng.uniform(-12, -8)
            if p == 2:
                w[:2] = rng.uniform(0.5, 3.0, size=2)
                w[2] = rng.uniform(-2, -0.5)
            al = float(rng.uniform(-1, 1))
            win = (-16.0, -13.0)
            J = extended_DF_native(p, w, al, win)
            h = 1e-7
            for j in range(n):
                e = np.zeros(n)
                e[j] = h
                fd = (build_extended_F(p, w + e, al, win)
                      - build_extended_F(p, w - e, al, win)) / (2 * h)
                assert np.abs(fd - J[:, j]).max() < 1e-5

    def test_split_identity(self, p1_cand, rng):
        win = WINDOW_P1
        for _ in range(25):
            w = np.array([rng.uniform(0.1, 0.5), rng.uniform(-10.0, -9.0)])
            al = float(rng.uniform(-1, 1))
            full = build_extended_F(1, w, al, win, mode="rigorous", split="full")
            poly = build_extended_F(1, w, al, win, mode="rigorous",
                                    split="poly", chi=p1_cand.chi, N=10)
            rem = build_extended_F(1, w, al, win, mode="rigorous",
                                   split="remainder", chi=p1_cand.chi, N=10)
            recon = poly + rem
            for i in range(2):
                assert full[i].lo >= recon[i].lo - 1e-15
                assert full[i].hi <= recon[i].hi + 1e-15

    def test_unsupported_period(self):
        with pytest.raises(ValueError):
            build_extended_F(3, np.zeros(6), 0.0, (-16.0, -13.0))


class TestSeeds:
    def test_analytic_seed_value(self):
        w = analytic_p1_seed(-12.0)
        assert abs(w[1] - (-6 - 2 * math.sqrt(3))) < 1e-12

    def test_analytic_seed_rejects_shallow_kappa(self):
        with pytest.raises(ValueError):
            analytic_p1_seed(-7.0)

    def test_p2_seed_solves_extended_system(self):
        w = find_doubling_seed(2, -16.0, (-11.0, -8.0))
        F = build_extended_F(2, w, -1.0, (-16.0, -15.0))
        assert np.abs(F).sum() < 1e-10
        # multiplier is -1: u * f'(x1) = -1 encoded in the G rows
        assert w[3] == pytest.approx(-9.224, abs=0.05)


class TestNodeSolve:
    def test_all_nodes_converge_on_analytic_branch(self, p1_cand):
        assert p1_cand.node_residuals.max() < 1e-12
        for k in range(17):
            a = -math.cos(k * math.pi / 16)
            kap = kappa_of_alpha(WINDOW_P1, a)
            assert abs(p1_cand.node_w[k, 1] - analytic_p1_beta(kap)) < 1e-9

    def test_chi_is_node_mean(self, p1_cand):
        assert p1_cand.chi[0].mid == pytest.approx(
            float(np.mean(p1_cand.node_w[:, 0])), abs=1e-15
        )

    def test_degenerate_single_node(self):
        cand = node_solve(1, WINDOW_P1, K=0)
        assert cand.node_w.shape == (1, 2)
        assert cand.node_residuals.max() < 1e-12

    def test_bad_window(self):
        with pytest.raises(ValueError):
            node_solve(1, (-10.0, -12.0), K=4)


class TestUniformBounds:
    def test_p1_certifies_small_radius(self, p1_cert):
        assert p1_cert.verified
        assert p1_cert.r_star <= 1e-6

    def test_analytic_containment_at_samples(self, p1_cand, p1_cert):
        beta_seq = p1_cand.w_bar[1]
        for kap in np.linspace(-12.0, -10.0, 10):
            al = (kap - (-12.0)) - 1.0
            enc = beta_seq.eval(Interval.point(float(al)))
            ki = Interval.point(float(kap))
            beta_true = (ki - iv_sqrt(ki * ki + 8 * ki)) * 0.5
            ball = Interval(enc.lo - p1_cert.r_star, enc.hi + p1_cert.r_star)
            assert beta_true.issubset(ball)

    def test_z2_monotone_in_R(self, p1_cand):
        _, _, z2_small = uniform_bounds(p1_cand, R=1e-3)
        _, _, z2_big = uniform_bounds(p1_cand, R=0.5)
        assert z2_big.hi >= z2_small.hi

    def test_constant_interpolant_has_zero_remainder(self):
        # x_bar identically at the center: ||(x - chi)^(N+1)|| = 0
        from orbitcert.pdcurve import _remainder_sups, ExtendedCandidate
        from orbitcert.cheb import ChebSeq, ChebOpMatrix

        x = ChebSeq.from_floats([0.3])
        d = x - Interval.point(0.3)
        cand = ExtendedCandidate(
            period=1, window=WINDOW_P1, K=0, N=10,
            w_bar=[x, ChebSeq.from_floats([-9.0])],
            A_cheb=ChebOpMatrix.identity(2),
            chi=[Interval.point(0.3)],
            node_w=np.array([[0.3, -9.0]]),
            node_residuals=np.zeros(1),
        )
        rem0, rem1, rem2 = _remainder_sups(cand, [d])
        assert rem0[0].hi == 0.0 and rem1[0].hi == 0.0 and rem2[0].hi == 0.0

    def test_pointwise_consistency(self, p1_cand, p1_cert):
        for al in (-1.0, -0.5, 0.0, 0.5, 1.0):
            w = np.array([s.eval(Interval.point(al)).mid for s in p1_cand.w_bar])
            sel = pointwise_extended_certify(1, w, al, WINDOW_P1)
            assert sel.ok
            assert sel.r_star <= 2 * p1_cert.r_star

    def test_invalid_R(self, p1_cand):
        with pytest.raises(ValueError):
            uniform_bounds(p1_cand, R=math.inf)


class TestPatching:
    def test_adjacent_windows_patch(self):
        a = certify_curve(node_solve(1, (-12.0, -11.0), K=16))
        cand_b = node_solve(1, (-11.0, -10.0), K=16,
                            w0=analytic_p1_seed(-11.0))
        b = certify_curve(cand_b)
        res = patch_curves(a, b)
        assert res.ok and res.gap <= res.allowance

    def test_patch_requires_abutting_windows(self, p1_cert):
        res = patch_curves(p1_cert, p1_cert)
        assert not res.ok

    def test_adaptive_split_returns_cover(self):
        certs = certify_window_adaptive(1, (-12.0, -10.0), K=16)
        assert certs and all(c.verified for c in certs)
        assert certs[0].candidate.window[0] == -12.0
        assert certs[-1].candidate.window[1] == -10.0


class TestReporting:
    def test_curve_samples_contain_analytic(self, p1_cert):
        rows = curve_samples(p1_cert, n=21)
        for kap, blo, bhi in rows:
            bt = analytic_p1_beta(kap)
            assert blo - 1e-12 <= bt <= bhi + 1e-12

    def test_json_serialization(self, p1_cert):
        import json

        doc = json.loads(curve_certificate_to_json(p1_cert))
        assert doc["verified"] is True
        assert doc["w_bar"][0]["convention"] == "halved"
        assert len(doc["w_bar"]) == 2
