import math
from fractions import Fraction as F

import pytest

from salemlab.bitseq import BitSequence
from salemlab.constructions import (
    CantorScheme,
    FpScheme,
    IntervalScheme,
    JarnikScheme,
    StageReport,
    cantor_stage,
)
from salemlab.dimension import (
    FitError,
    box_count_fit,
    clamp_dimension,
    countable_union_sup,
    covering_sum,
    default_frostman_centers,
    default_frostman_radii,
    fourier_decay_fit,
    frostman_fit,
    salem_report,
)
from salemlab.geometry import IntervalUnion
from salemlab.measures import (
    SelfSimilarProductMeasure,
    affine_pushforward,
    natural_measure,
)

LOG23 = math.log(2) / math.log(3)

MIDDLE_THIRD = SelfSimilarProductMeasure(
    branching=2, offsets=((F(0), F(2, 3)),), contractions=(F(1, 3),)
)


class TestCoveringSum:
    def test_unit_interval(self):
        assert covering_sum(IntervalUnion.full(), 1.0) == 1.0

    def test_cantor_critical_exponent_is_unity(self):
        for k in range(1, 13):
            val = covering_sum(cantor_stage(3, k), LOG23)
            assert abs(val - 1.0) < 1e-12

    def test_cantor_stage_two_at_exponent_one(self):
        assert covering_sum(cantor_stage(3, 2), 1.0) == pytest.approx(4 / 9, abs=1e-15)

    def test_accepts_raw_pairs(self):
        assert covering_sum([(F(0), F(1, 2)), (F(1, 2), F(1))], 1.0) == pytest.approx(1.0)

    def test_negative_exponent_rejected(self):
        with pytest.raises(FitError):
            covering_sum(IntervalUnion.full(), -0.5)


class TestBoxCountFit:
    def test_middle_third(self):
        fit = box_count_fit(CantorScheme(3).reports(1, 12))
        assert abs(fit.exponent - LOG23) < 1e-9
        assert fit.r_squared > 0.999999

    def test_quarter_cantor(self):
        fit = box_count_fit(CantorScheme(4).reports(1, 12))
        assert abs(fit.exponent - 0.5) < 1e-9

    def test_single_stage_underdetermined(self):
        with pytest.raises(FitError):
            box_count_fit(CantorScheme(3).reports(2, 2))

    def test_degenerate_scales_rejected(self):
        reps = [StageReport(1, 10, F(0), F(0)), StageReport(2, 20, F(0), F(0))]
        with pytest.raises(FitError):
            box_count_fit(reps)

    def test_min_scale_option(self):
        fit = box_count_fit(JarnikScheme(1.0).reports(1, 6), scale="min")
        assert 0.3 < fit.exponent < 0.9


class TestFrostmanFit:
    def test_uniform_reads_one(self):
        mu = natural_measure(IntervalUnion.full())
        radii = [F(1, 2**j) for j in range(2, 9)]
        fit = frostman_fit(mu, [F(1, 2)], radii)
        assert abs(fit.exponent - 1.0) < 1e-9

    def test_dirac_reads_zero(self):
        mu = natural_measure(IntervalUnion([(F(1, 2), F(1, 2))]))
        radii = [F(1, 2**j) for j in range(2, 9)]
        fit = frostman_fit(mu, [F(1, 2), F(1, 4)], radii)
        assert fit.exponent == 0.0
        assert fit.r_squared == 1.0

    def test_middle_third_stage_eight(self):
        mu = natural_measure(cantor_stage(3, 8))
        radii = [F(1, 3**j) for j in range(1, 9)]
        fit = frostman_fit(mu, default_frostman_centers(mu), radii)
        assert abs(fit.exponent - LOG23) < 0.05

    def test_radii_gate(self):
        mu = natural_measure(IntervalUnion.full())
        with pytest.raises(FitError):
            frostman_fit(mu, [F(1, 2)], [F(1, 2), F(1, 4)])

    def test_default_radii_respect_min_piece(self):
        mu = natural_measure(cantor_stage(3, 5))
        radii = default_frostman_radii(mu)
        assert len(radii) >= 4
        assert min(radii) >= F(1, 3**5) / 2


class TestFourierDecayFit:
    def test_uniform_raw_two(self):
        mu = natural_measure(IntervalUnion.full())
        fit = fourier_decay_fit(mu, seed=7)
        assert abs(fit.exponent - 2.0) < 0.1
        assert clamp_dimension(fit.exponent) == 1.0

    def test_middle_third_raw_negligible(self):
        fit = fourier_decay_fit(MIDDLE_THIRD, seed=7)
        assert fit.exponent <= 0.05

    def test_dirac_raw_exactly_zero(self):
        mu = natural_measure(IntervalUnion([(F(1, 3), F(1, 3))]))
        fit = fourier_decay_fit(mu, seed=7)
        assert fit.exponent == 0.0
        assert fit.r_squared == 1.0

    def test_band_gate(self):
        mu = natural_measure(IntervalUnion.full())
        with pytest.raises(FitError):
            fourier_decay_fit(mu, bands=3)
        with pytest.raises(FitError):
            fourier_decay_fit(mu, xi_max=16.0, bands=10)
        with pytest.raises(FitError):
            fourier_decay_fit(mu, samples_per_band=32)

    def test_deterministic_given_seed(self):
        mu = natural_measure(cantor_stage(3, 4))
        a = fourier_decay_fit(mu, seed=13)
        b = fourier_decay_fit(mu, seed=13)
        assert a == b

    def test_affine_invariance_of_exponent(self):
        base_u = fourier_decay_fit(natural_measure(IntervalUnion.full()), seed=7)
        base_c = fourier_decay_fit(MIDDLE_THIRD, seed=7)
        for a in (F(1, 3), F(2)):
            for t in (F(0), F(1, 2)):
                mu = affine_pushforward(natural_measure(IntervalUnion.full()), a, t)
                nu = affine_pushforward(MIDDLE_THIRD, a, t)
                du = fourier_decay_fit(mu, seed=7).exponent - base_u.exponent
                dc = fourier_decay_fit(nu, seed=7).exponent - base_c.exponent
                assert abs(du) <= 0.05
                assert abs(dc) <= 0.05


class TestSalemReport:
    def test_cantor_defect(self):
        rep = salem_report(CantorScheme(3), 10, seed=7)
        assert rep.hdim_est == pytest.approx(LOG23, abs=1e-6)
        assert rep.fourier_dim <= 0.05
        assert rep.salem_defect >= 0.55
        assert rep.declared_hdim == pytest.approx(LOG23)

    def test_interval_no_defect(self):
        rep = salem_report(IntervalScheme(), 10, seed=7)
        assert rep.hdim_est == pytest.approx(1.0, abs=1e-9)
        assert rep.fourier_dim == pytest.approx(1.0, abs=0.05)
        assert abs(rep.salem_defect) <= 0.05

    def test_fourier_below_hausdorff_invariant(self):
        for scheme, stage in ((CantorScheme(3), 10), (IntervalScheme(), 10)):
            rep = salem_report(scheme, stage, seed=7)
            assert rep.fourier_dim <= rep.hdim_est + 0.1

    def test_fp_scheme_report(self):
        rep = salem_report(FpScheme(0.5, BitSequence.zero()), 6, seed=7, fit_lo=1)
        assert abs(rep.hdim_est - 0.5) < 0.05


class TestCountableUnionSup:
    def test_sup_of_block_dims(self):
        p = 0.8
        dims = [p * (1 - 2.0**-m) for m in range(1, 12)]
        assert countable_union_sup(dims, True) == pytest.approx(max(dims))
        assert max(dims) < p

    def test_single_block(self):
        assert countable_union_sup([0.4], True) == 0.4

    def test_overlap_refusal(self):
        with pytest.raises(FitError):
            countable_union_sup([0.4, 0.5], False)

    def test_accepts_reports(self):
        rep = salem_report(CantorScheme(3), 8, seed=7)
        assert countable_union_sup([rep], True) == rep.hdim_est


class TestThreadCapDeterminism:
    def test_thread_pool_does_not_change_results(self, monkeypatch):
        mu = natural_measure(cantor_stage(3, 6))
        monkeypatch.setenv("SALEMLAB_THREADS", "1")
        serial = fourier_decay_fit(mu, seed=3)
        monkeypatch.setenv("SALEMLAB_THREADS", "4")
        pooled = fourier_decay_fit(mu, seed=3)
        assert serial == pooled


class TestTowerReports:
    def test_pi03_sup_prediction(self):
        from salemlab.bitseq import BitMatrix
        from salemlab.constructions import Pi03Scheme

        sch = Pi03Scheme(0.8, BitMatrix.zero())
        rep = salem_report(sch, 7, seed=7)
        assert abs(rep.hdim_est - 0.8) < 0.05
        # accumulation tail is excluded from the ladder statistics
        assert all(r.max_diam < F(1, 2) for r in sch.reports(2, 5))

    def test_salemgap_head_pins_dimension(self):
        from salemlab.bitseq import BitMatrix
        from salemlab.constructions import SalemGapScheme

        rep = salem_report(SalemGapScheme(0.8, BitMatrix.zero()), 7, seed=7)
        assert abs(rep.hdim_est - 0.8) < 0.02

    def test_block_fit_sup_matches_block_dims(self):
        from salemlab.bitseq import BitMatrix
        from salemlab.constructions import Pi03Scheme

        sch = Pi03Scheme(0.8, BitMatrix.zero())
        fits = [box_count_fit(lad).exponent for lad in sch.block_ladders(6)]
        for m, got in enumerate(fits, start=1):
            assert abs(got - sch.q_m(m)) < 0.01
        assert countable_union_sup(fits, True) == pytest.approx(max(fits))
