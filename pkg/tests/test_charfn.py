import cmath
import math

import numpy as np
import pytest
from hypothesis import given

from spinpmf.bloch import BlochOutOfBall
from spinpmf.charfn import (
    BochnerSearchConfig,
    CharFnKind,
    ProbePoint,
    bochner_gram,
    bochner_search,
    cf_handle,
    mh_array,
    mh_cf_closed,
    mh_cf_oracle,
    pmf_fourier,
    wigner_weyl_array,
    wigner_weyl_cf,
    wigner_weyl_cf_matrix,
)
from spinpmf.pmf import pmf_from_bloch
from spinpmf.verify import random_ball, random_octahedron

from conftest import ball_points, octahedron_points, probe

PI = math.pi


class TestWignerWeyl:
    def test_normalized_at_origin(self, rng):
        for p in random_ball(rng, 20):
            assert wigner_weyl_cf(p, (0, 0, 0)).value == 1

    @pytest.mark.parametrize("s", [0.3, 1.0, -2.5, 7.0])
    def test_polarized_along_probe(self, s):
        got = wigner_weyl_cf((0, 0, 1), (0, 0, s)).value
        assert abs(got - cmath.exp(1j * s)) < 1e-15

    def test_planar_probe_is_real(self):
        # <p, t> = 0: only cos|t| survives (the bivariate example in the plane)
        for t1, t2 in [(0.4, 1.3), (2.0, -0.5), (3.0, 4.0)]:
            got = wigner_weyl_cf((0, 0, 1), (t1, t2, 0)).value
            assert abs(got - math.cos(math.hypot(t1, t2))) < 1e-15

    def test_matches_matrix_exponential(self, rng):
        for p, t in zip(random_ball(rng, 500), rng.uniform(-2 * PI, 2 * PI, size=(500, 3))):
            closed = wigner_weyl_cf(p, t).value
            assert abs(closed - wigner_weyl_cf_matrix(p, t)) < 1e-10
            assert abs(closed - wigner_weyl_cf_matrix(p, t, series=True)) < 1e-10

    def test_kind_and_point(self):
        v = wigner_weyl_cf((0, 0, 0), (1, 2, 3))
        assert v.kind is CharFnKind.WIGNER_WEYL
        assert v.point == ProbePoint(1, 2, 3)

    def test_rejects_out_of_ball(self):
        with pytest.raises(BlochOutOfBall):
            wigner_weyl_cf((1, 1, 0), (0, 0, 0))


class TestMargenauHill:
    def test_oracle_normalized(self, rng):
        for p in random_ball(rng, 10):
            assert abs(mh_cf_oracle(p, (0, 0, 0)).value - 1) < 1e-15

    def test_oracle_maximally_mixed_is_cosine_product(self, rng):
        for t in rng.uniform(-5, 5, size=(50, 3)):
            expected = math.cos(t[0]) * math.cos(t[1]) * math.cos(t[2])
            assert abs(mh_cf_oracle((0, 0, 0), t).value - expected) < 1e-14

    def test_oracle_matches_closed_form_at_spec_point(self):
        p, t = (0.2, -0.5, 0.1), (0.3, 0.7, -1.1)
        assert abs(mh_cf_oracle(p, t).value - mh_cf_closed(p, t).value) < 1e-12

    def test_closed_form_values(self):
        p = (0.3, -0.4, 0.5)
        assert abs(mh_cf_closed(p, (PI / 2, 0, 0)).value - 0.3j) < 1e-15
        assert abs(mh_cf_closed(p, (PI / 2, PI / 2, 0)).value) < 1e-15
        assert mh_cf_closed((0, 0, 0), (1, 1, 1)).value == pytest.approx(math.cos(1) ** 3, abs=1e-15)
        assert mh_cf_closed((0, 0, 0), (1, 1, 1)).value.real == pytest.approx(0.157728, abs=1e-6)

    @given(ball_points(), probe)
    def test_periodic(self, p, t):
        base = mh_cf_closed(p, t).value
        for k in range(3):
            shifted = list(t)
            shifted[k] += 2 * PI
            assert abs(mh_cf_closed(p, shifted).value - base) < 1e-12

    def test_oracle_equivalence_sample(self, rng):
        worst = 0.0
        for p, t in zip(random_ball(rng, 2000), rng.uniform(-2 * PI, 2 * PI, size=(2000, 3))):
            worst = max(worst, abs(mh_cf_oracle(p, t).value - mh_cf_closed(p, t).value))
        assert worst < 1e-12


@given(ball_points(), probe)
def test_hermitian_symmetry(p, t):
    neg = tuple(-x for x in t)
    for f in (wigner_weyl_cf, mh_cf_closed, mh_cf_oracle):
        assert abs(f(p, neg).value - f(p, t).value.conjugate()) < 1e-12


@given(ball_points(), probe)
def test_modulus_bounded(p, t):
    for f in (wigner_weyl_cf, mh_cf_closed):
        assert abs(f(p, t).value) <= 1 + 1e-12


@given(ball_points())
def test_normalization_exact(p):
    for f in (wigner_weyl_cf, mh_cf_closed, mh_cf_oracle):
        assert abs(f(p, (0, 0, 0)).value - 1) <= 1e-15


def _central_diff(f, k, h=1e-5):
    e = np.zeros(3)
    e[k] = h
    return (f(e) - f(-e)) / (2 * h)


def test_first_moments_agree_between_rules(rng):
    # both rules give E[X_k] = p_k, i.e. d/dt_k cf(0) = i p_k
    for p in random_ball(rng, 200):
        for k in range(3):
            ww = _central_diff(lambda t: wigner_weyl_cf(p, t).value, k)
            mh = _central_diff(lambda t: mh_cf_closed(p, t).value, k)
            assert abs(ww - 1j * p[k]) < 1e-8
            assert abs(mh - 1j * p[k]) < 1e-8


class TestPmfFourier:
    def test_uniform(self):
        assert pmf_fourier(pmf_from_bloch((0, 0, 0)), (1, 1, 1)).value == pytest.approx(math.cos(1) ** 3)

    def test_normalized(self, rng):
        for p in random_octahedron(rng, 20):
            assert abs(pmf_fourier(pmf_from_bloch(p), (0, 0, 0)).value - 1) < 1e-15

    def test_spec_point(self):
        p, t = (0.3, 0.1, -0.2), (0.5, -0.4, 1.0)
        assert abs(pmf_fourier(pmf_from_bloch(p), t).value - mh_cf_closed(p, t).value) < 1e-12

    @given(octahedron_points(), probe)
    def test_matches_margenau_hill_in_domain(self, p, t):
        assert abs(pmf_fourier(pmf_from_bloch(p), t).value - mh_cf_closed(p, t).value) < 1e-12


def test_array_forms_match_scalar(rng):
    ts = rng.uniform(-7, 7, size=(4, 5, 3))
    for p in random_ball(rng, 10):
        ww = wigner_weyl_array(p, ts)
        mh = mh_array(p, ts)
        oracle = cf_handle("MH_ORACLE", p)(ts)
        assert ww.shape == mh.shape == oracle.shape == (4, 5)
        for idx in np.ndindex(4, 5):
            assert abs(ww[idx] - wigner_weyl_cf(p, ts[idx]).value) < 1e-14
            assert abs(mh[idx] - mh_cf_closed(p, ts[idx]).value) < 1e-14
            assert abs(oracle[idx] - mh[idx]) < 1e-12
    assert wigner_weyl_array((0.1, 0.2, 0.3), np.zeros(3)) == 1


class TestBochner:
    def test_constant_cf_gives_all_ones(self, rng):
        pts = rng.uniform(-3, 3, size=(5, 3))
        res = bochner_gram(lambda t: np.ones(np.shape(t)[:-1], dtype=complex), pts)
        np.testing.assert_array_equal(res.gram, np.ones((5, 5)))
        assert abs(res.min_eigenvalue) < 1e-14

    def test_needs_two_points(self):
        with pytest.raises(ValueError):
            bochner_gram(cf_handle("MARGENAU_HILL", (0, 0, 0)), [(0, 0, 0)])

    def test_inside_octahedron_is_psd(self, rng):
        for p in random_octahedron(rng, 20):
            cf = cf_handle("MARGENAU_HILL", p)
            for _ in range(10):
                pts = rng.uniform(-4, 4, size=(5, 3))
                assert bochner_gram(cf, pts).min_eigenvalue >= -1e-10

    def test_gram_entries(self):
        p = (0.1, 0.2, -0.3)
        pts = [(0, 0, 0), (0.5, -1, 2)]
        g = bochner_gram(cf_handle("MARGENAU_HILL", p), pts).gram
        assert abs(g[1, 0] - mh_cf_closed(p, (0.5, -1, 2)).value) < 1e-15
        assert abs(g[0, 1] - mh_cf_closed(p, (-0.5, 1, -2)).value) < 1e-15

    def test_character_basis_witness(self):
        # at the eight points {0, pi/2}^3 the phases exp(i t.x) form a basis of
        # functions on {-1,+1}^3, so the Gram spectrum is 8 x the masses
        pts = [tuple(PI / 2 * np.array(b)) for b in np.ndindex(2, 2, 2)]
        res = bochner_gram(cf_handle("MARGENAU_HILL", (0.5, 0.5, 0.5)), pts)
        assert res.min_eigenvalue == pytest.approx(8 * -0.0625, abs=1e-12)

    def test_search_finds_witness_outside(self):
        w = bochner_search(cf_handle("MARGENAU_HILL", (0.5, 0.5, 0.5)), BochnerSearchConfig(restarts=2000))
        assert w.min_eigenvalue < -1e-6
        # the reported points reproduce the eigenvalue
        again = bochner_gram(cf_handle("MARGENAU_HILL", (0.5, 0.5, 0.5)), w.points)
        assert again.min_eigenvalue == pytest.approx(w.min_eigenvalue, abs=1e-12)

    def test_search_deterministic(self):
        cf = cf_handle("MARGENAU_HILL", (0.5, 0.5, 0.5))
        cfg = BochnerSearchConfig(restarts=300, seed=5)
        a, b = bochner_search(cf, cfg), bochner_search(cf, cfg)
        assert a.min_eigenvalue == b.min_eigenvalue and a.restart == b.restart

    def test_wigner_weyl_pure_state_not_positive_definite(self):
        # the bivariate pure-state example: probes restricted to t3 = 0
        cf3 = cf_handle("WIGNER_WEYL", (0, 0, 1))
        planar = lambda t: cf3(np.concatenate([np.asarray(t)[..., :2], np.zeros(np.shape(t)[:-1] + (1,))], axis=-1))
        w = bochner_search(planar, BochnerSearchConfig(restarts=2000, seed=1))
        assert w.min_eigenvalue < -1e-6
