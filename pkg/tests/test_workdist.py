"""Tests for the work distribution, moments, and fluctuation theorems."""

import math

import numpy as np
import pytest

from fieldwork import (
    FieldSpec,
    InconsistencyError,
    InvalidArgumentError,
    RegimeError,
    Scenario,
    SmearingProfile,
    SwitchingProfile,
    crooks_check,
    delta_weight,
    distribution_from_charfn,
    moments,
    localization_sweep,
    smearing_ft,
    switching_ft,
    work_density_analytic,
)

SWITCH_WIDTH = 1.0 / 12.0
SWITCH_CENTER = 0.5
SIGMA = 1.0
LAM = 0.01


def make_scenario(beta=1.0, coupling=LAM, mass=0.0):
    return Scenario(
        field=FieldSpec(mass=mass, beta=beta, coupling=coupling),
        switching=SwitchingProfile.gaussian(center=SWITCH_CENTER, width=SWITCH_WIDTH),
        smearing=SmearingProfile.gaussian_spherical(SIGMA),
    )


class TestAnalyticDensity:
    def test_vacuum_density_vanishes_for_negative_work(self):
        s = make_scenario(beta=math.inf)
        assert work_density_analytic(s, -1.0) == 0.0
        w = np.linspace(-5.0, -0.01, 40)
        assert np.all(work_density_analytic(s, w) == 0.0)

    def test_explicit_value_at_unit_work(self):
        # density(W) = (lam^2 / 4 pi^2) |chi~(W)|^2 |F~(W)|^2 * W/(1 - e^{-bW})
        beta, w = 1.0, 1.0
        s = make_scenario(beta=beta)
        expected = (
            LAM**2
            / (4.0 * math.pi**2)
            * abs(switching_ft(s.switching, w)) ** 2
            * smearing_ft(s.smearing, w) ** 2
            * w
            / (1.0 - math.exp(-beta * w))
        )
        assert work_density_analytic(s, w) == pytest.approx(expected, rel=1e-14)

    def test_crooks_ratio_pointwise(self):
        beta, w = 1.0, 0.7
        s = make_scenario(beta=beta)
        ratio = work_density_analytic(s, w) / work_density_analytic(s, -w)
        assert ratio == pytest.approx(math.exp(beta * w), rel=1e-13)

    def test_guards(self):
        s = make_scenario(beta=1.0)
        with pytest.raises(InvalidArgumentError):
            work_density_analytic(s, 0.0)  # the atom is handled separately
        with pytest.raises(RegimeError):
            work_density_analytic(make_scenario(mass=0.5), 1.0)
        delta = Scenario(
            field=FieldSpec(coupling=0.1),
            switching=SwitchingProfile.delta(),
            smearing=SmearingProfile.gaussian_spherical(SIGMA),
        )
        with pytest.raises(RegimeError):
            work_density_analytic(delta, 1.0)


class TestDeltaWeight:
    def test_zero_coupling_gives_pure_atom(self):
        assert delta_weight(make_scenario(coupling=0.0)) == 1.0

    def test_density_mass_scales_as_coupling_squared(self):
        p1 = 1.0 - delta_weight(make_scenario(coupling=0.01))
        p2 = 1.0 - delta_weight(make_scenario(coupling=0.005))
        assert p1 / p2 == pytest.approx(4.0, rel=1e-9)

    def test_perturbative_breakdown_detected(self):
        with pytest.raises(RegimeError):
            delta_weight(make_scenario(coupling=5e4))


class TestDistributionFromCharfn:
    @pytest.mark.parametrize("beta", [1.0, math.inf])
    def test_normalized_and_matches_analytic_density(self, beta):
        s = make_scenario(beta=beta)
        dist = distribution_from_charfn(s)
        assert dist.total_mass() == pytest.approx(1.0, abs=1e-6)
        assert dist.atom_weight == pytest.approx(delta_weight(s), abs=1e-6)
        i = int(np.argmax(dist.density))
        w_peak = dist.w_grid[i]
        assert dist.density[i] == pytest.approx(
            work_density_analytic(s, w_peak), rel=1e-6
        )

    def test_metadata_carries_scenario_fingerprint(self):
        dist = distribution_from_charfn(make_scenario(beta=1.0))
        assert "beta" in dist.metadata
        assert dist.metadata["beta"] == 1.0

    def test_vacuum_negative_side_is_empty(self):
        dist = distribution_from_charfn(make_scenario(beta=math.inf))
        assert abs(dist.negative_mass()) <= 1e-9


class TestMoments:
    def test_mean_is_temperature_independent(self):
        means = [moments(make_scenario(beta=b)).mean for b in (0.5, 1.0, math.inf)]
        assert means[0] == pytest.approx(means[1], rel=1e-12)
        assert means[1] == pytest.approx(means[2], rel=1e-12)
        assert means[0] > 0.0

    def test_mean_matches_independent_trapezoid_oracle(self):
        # <W> = (lam^2 / 4 pi^2) Int k^2 |chi~(k)|^2 |F~(k)|^2 dk, evaluated
        # here on a dense fixed grid instead of adaptive quadrature.
        s = make_scenario(beta=1.0)
        k = np.linspace(0.0, 60.0, 400001)
        integrand = (
            k**2
            * np.abs(switching_ft(s.switching, k)) ** 2
            * smearing_ft(s.smearing, k) ** 2
        )
        oracle = LAM**2 / (4.0 * math.pi**2) * np.trapezoid(integrand, k)
        assert moments(s).mean == pytest.approx(oracle, rel=1e-10)

    def test_variance_increases_with_temperature(self):
        variances = [
            moments(make_scenario(beta=b)).variance for b in (math.inf, 2.0, 1.0, 0.5)
        ]
        assert all(b > a for a, b in zip(variances, variances[1:]))

    def test_jarzynski_value_unity_at_finite_beta(self):
        rep = moments(make_scenario(beta=1.0))
        assert rep.jarzynski_value == pytest.approx(1.0, abs=1e-10)
        assert rep.partition_ratio == pytest.approx(1.0, abs=1e-10)

    def test_jarzynski_undefined_in_vacuum(self):
        rep = moments(make_scenario(beta=math.inf))
        assert math.isnan(rep.jarzynski_value)

    def test_moments_reject_delta_switching(self):
        delta = Scenario(
            field=FieldSpec(coupling=0.1),
            switching=SwitchingProfile.delta(),
            smearing=SmearingProfile.gaussian_spherical(SIGMA),
        )
        with pytest.raises(RegimeError):
            moments(delta)

    def test_second_moment_consistent_with_distribution(self):
        s = make_scenario(beta=1.0)
        rep = moments(s)
        dist = distribution_from_charfn(s)
        assert dist.mean() == pytest.approx(rep.mean, rel=1e-5)
        assert dist.second_moment() == pytest.approx(rep.second_moment, rel=1e-5)


class TestCrooks:
    @pytest.mark.parametrize("beta", [1.0, 2.0])
    def test_detailed_balance(self, beta):
        s = make_scenario(beta=beta)
        rows = crooks_check(s, np.linspace(0.1, 3.0, 20))
        assert all(r.ok for r in rows)
        assert max(abs(r.deviation) for r in rows) <= 1e-12
        for r in rows:
            assert r.beta_w == pytest.approx(beta * r.w, rel=1e-15)

    def test_underflow_samples_are_flagged_not_silently_wrong(self):
        s = make_scenario(beta=1.0)
        with pytest.warns(UserWarning):
            rows = crooks_check(s, [60.0])
        assert not rows[0].ok
        assert math.isnan(rows[0].deviation)


class TestLocalizationSweep:
    def _base(self):
        return make_scenario(beta=math.inf)

    def test_variance_to_mean_grows_as_widths_shrink(self):
        pairs = [(c * SWITCH_WIDTH, c * SIGMA) for c in (1.0, 0.5, 0.25, 0.125)]
        rows = localization_sweep(self._base(), pairs)
        vom = [r.var_over_mean for r in rows]
        assert all(b > a for a, b in zip(vom, vom[1:]))
        assert vom[1] == pytest.approx(2.0 * vom[0], rel=1e-9)

    def test_std_to_mean_is_exactly_scale_invariant(self):
        # Under a joint rescaling of both widths by c the mean scales as 1/c
        # and the variance as 1/c^2, so std/mean does not change; the growth
        # of relative fluctuations under localization appears only in ratios
        # with a remaining scale, such as variance/mean.
        pairs = [(c * SWITCH_WIDTH, c * SIGMA) for c in (1.0, 0.25, 0.0625)]
        rows = localization_sweep(self._base(), pairs)
        som = [r.std_over_mean for r in rows]
        assert som[1] == pytest.approx(som[0], rel=1e-9)
        assert som[2] == pytest.approx(som[0], rel=1e-9)

    def test_regime_guards(self):
        pairs = [(SWITCH_WIDTH, SIGMA)]
        with pytest.raises(RegimeError):
            localization_sweep(make_scenario(beta=1.0), pairs)
