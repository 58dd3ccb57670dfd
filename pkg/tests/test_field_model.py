"""Tests for field parameters, localization profiles, and thermal factors."""

import math

import mpmath
import numpy as np
import pytest

from fieldwork import (
    FieldSpec,
    InvalidArgumentError,
    SmearingProfile,
    SwitchingProfile,
    dispersion,
    smearing_ft,
    switching_ft,
    thermal_weight,
)


class TestFieldSpec:
    def test_defaults_are_massless_vacuum(self):
        f = FieldSpec()
        assert f.mass == 0.0
        assert f.is_vacuum

    def test_validation(self):
        with pytest.raises(InvalidArgumentError):
            FieldSpec(mass=-1.0)
        with pytest.raises(InvalidArgumentError):
            FieldSpec(mass=math.inf)
        with pytest.raises(InvalidArgumentError):
            FieldSpec(beta=0.0)
        with pytest.raises(InvalidArgumentError):
            FieldSpec(beta=-2.0)
        with pytest.raises(InvalidArgumentError):
            FieldSpec(coupling=math.nan)

    def test_finite_beta_is_not_vacuum(self):
        assert not FieldSpec(beta=1.0).is_vacuum


class TestDispersion:
    def test_massless_is_identity(self):
        k = np.linspace(0.0, 10.0, 11)
        assert np.allclose(dispersion(k, 0.0), k)

    def test_massive_scalar_value(self):
        assert dispersion(3.0, 4.0) == pytest.approx(5.0, rel=1e-15)

    def test_rejects_negative(self):
        with pytest.raises(InvalidArgumentError):
            dispersion(-1.0, 0.0)
        with pytest.raises(InvalidArgumentError):
            dispersion(1.0, -1.0)


class TestSwitching:
    def test_gaussian_transform_closed_form(self):
        p = SwitchingProfile.gaussian(center=0.5, width=1.0 / 12.0)
        omega = np.linspace(-5.0, 5.0, 41)
        s = 1.0 / 12.0
        expected = (
            s * math.sqrt(2.0 * math.pi)
            * np.exp(-0.5 * (s * omega) ** 2)
            * np.exp(1j * 0.5 * omega)
        )
        assert np.allclose(switching_ft(p, omega), expected, rtol=1e-14)

    def test_delta_transform_is_unity(self):
        p = SwitchingProfile.delta()
        assert p.is_delta
        assert switching_ft(p, 3.7) == 1.0 + 0.0j

    def test_tabulated_matches_gaussian(self):
        # Tabulating the Gaussian window must reproduce its closed-form
        # transform to trapezoid accuracy.
        s, t0 = 0.25, 0.0
        t = np.linspace(-3.0, 3.0, 6001)
        tab = SwitchingProfile.tabulated(t, np.exp(-0.5 * ((t - t0) / s) ** 2))
        ref = SwitchingProfile.gaussian(center=t0, width=s)
        omega = np.linspace(-8.0, 8.0, 17)
        assert np.allclose(
            switching_ft(tab, omega), switching_ft(ref, omega), atol=1e-8
        )

    def test_validation(self):
        with pytest.raises(InvalidArgumentError):
            SwitchingProfile.gaussian(center=0.0, width=0.0)
        with pytest.raises(InvalidArgumentError):
            SwitchingProfile.tabulated([0.0, 1.0], [1.0])
        with pytest.raises(InvalidArgumentError):
            SwitchingProfile.tabulated([1.0, 0.0], [1.0, 1.0])


class TestSmearing:
    def test_gaussian_transform_is_unit_normalized(self):
        p = SmearingProfile.gaussian_spherical(sigma=2.0)
        assert smearing_ft(p, 0.0) == pytest.approx(1.0, abs=1e-15)
        k = np.linspace(0.0, 5.0, 21)
        assert np.allclose(smearing_ft(p, k), np.exp(-2.0 * k**2), rtol=1e-14)

    def test_tabulated_matches_gaussian(self):
        sigma = 1.0
        r = np.linspace(0.0, 10.0, 20001)
        profile = np.exp(-0.5 * (r / sigma) ** 2) / (2.0 * math.pi * sigma**2) ** 1.5
        tab = SmearingProfile.tabulated_radial(r, profile)
        ref = SmearingProfile.gaussian_spherical(sigma)
        k = np.linspace(0.0, 4.0, 9)
        assert np.allclose(smearing_ft(tab, k), smearing_ft(ref, k), atol=1e-8)

    def test_rejects_negative_momentum(self):
        p = SmearingProfile.gaussian_spherical(1.0)
        with pytest.raises(InvalidArgumentError):
            smearing_ft(p, -0.1)

    def test_validation(self):
        with pytest.raises(InvalidArgumentError):
            SmearingProfile.gaussian_spherical(sigma=0.0)
        with pytest.raises(InvalidArgumentError):
            SmearingProfile.tabulated_radial([-1.0, 0.0], [1.0, 1.0])


class TestThermalWeight:
    def test_vacuum_limit_exact(self):
        coth, bose = thermal_weight(2.5, math.inf)
        assert coth == 1.0
        assert bose == 0.0

    def test_against_mpmath_across_regimes(self):
        mpmath.mp.dps = 40
        beta = 1.0
        for omega in (1e-6, 1e-3, 0.1, 1.0, 10.0, 100.0, 650.0, 720.0):
            coth, bose = thermal_weight(omega, beta)
            x = mpmath.mpf(beta) * mpmath.mpf(omega)
            ref_bose = 1.0 / mpmath.expm1(x)
            ref_coth = mpmath.coth(x / 2)
            assert bose == pytest.approx(float(ref_bose), rel=1e-13, abs=1e-300)
            assert coth == pytest.approx(float(ref_coth), rel=1e-13)

    def test_identity_coth_equals_one_plus_two_bose(self):
        omega = np.geomspace(1e-5, 900.0, 64)
        coth, bose = thermal_weight(omega, 1.0)
        assert np.allclose(coth, 1.0 + 2.0 * bose, rtol=1e-14, atol=0.0)

    def test_rejects_nonpositive_omega(self):
        with pytest.raises(InvalidArgumentError):
            thermal_weight(0.0, 1.0)
        with pytest.raises(InvalidArgumentError):
            thermal_weight(-1.0, 1.0)
