"""Tests for the work characteristic functions.

The key oracle here is an independent Monte Carlo evaluation of the full 3D
momentum integral (no radial reduction), which checks the angular factor and
every 2-pi power in the analytic implementation.
"""

import math

import numpy as np
import pytest

from fieldwork import (
    FieldSpec,
    InvalidArgumentError,
    RegimeError,
    Scenario,
    SmearingProfile,
    SwitchingProfile,
    charfn_correction,
    charfn_delta_closed,
    charfn_delta_numeric,
    charfn_grid,
    charfn_kms,
    charfn_vacuum,
    sample_charfn,
    thermal_weight,
)

SWITCH_WIDTH = 1.0 / 12.0
SWITCH_CENTER = 0.5
SIGMA = 1.0
LAM = 0.01


def make_scenario(beta=1.0, coupling=LAM, switching=None):
    return Scenario(
        field=FieldSpec(mass=0.0, beta=beta, coupling=coupling),
        switching=switching
        or SwitchingProfile.gaussian(center=SWITCH_CENTER, width=SWITCH_WIDTH),
        smearing=SmearingProfile.gaussian_spherical(SIGMA),
    )


def delta_scenario(coupling=0.1):
    return Scenario(
        field=FieldSpec(mass=0.0, beta=math.inf, coupling=coupling),
        switching=SwitchingProfile.delta(),
        smearing=SmearingProfile.gaussian_spherical(SIGMA),
    )


def test_charfn_is_one_at_zero_exactly():
    for s in (make_scenario(1.0), make_scenario(math.inf), delta_scenario()):
        fn = charfn_delta_numeric if s.switching.is_delta else charfn_kms
        assert fn(s, 0.0) == 1.0 + 0.0j


def test_hermitian_symmetry():
    s = make_scenario(beta=1.0)
    for mu in (0.3, 1.0, 4.0, 17.0):
        assert charfn_kms(s, -mu) == pytest.approx(np.conj(charfn_kms(s, mu)), abs=1e-15)


def test_modulus_bounded_by_one():
    for s in (make_scenario(0.5), make_scenario(math.inf), delta_scenario(0.1)):
        fn = charfn_delta_numeric if s.switching.is_delta else charfn_kms
        for mu in np.linspace(-20.0, 20.0, 81):
            assert abs(fn(s, float(mu))) <= 1.0 + 1e-9


def test_real_part_at_most_one():
    s = make_scenario(beta=1.0)
    for mu in np.linspace(-10.0, 10.0, 41):
        assert charfn_kms(s, float(mu)).real <= 1.0 + 1e-15


def test_vacuum_equals_kms_at_infinite_beta():
    s = make_scenario(beta=math.inf)
    for mu in (0.5, 1.0, 3.0):
        assert charfn_vacuum(s, mu) == pytest.approx(charfn_kms(s, mu), abs=1e-16)


def test_vacuum_ignores_finite_beta_field():
    thermal = make_scenario(beta=1.0)
    vacuum = make_scenario(beta=math.inf)
    assert charfn_vacuum(thermal, 1.0) == pytest.approx(
        charfn_kms(vacuum, 1.0), abs=1e-16
    )


def test_kms_crossing_relation():
    # P~(mu) = P~(-mu + i beta) for the time-reversal-symmetric process.
    beta = 1.0
    s = make_scenario(beta=beta)
    for mu in (0.2, 0.7, 1.5, 3.0):
        lhs = charfn_kms(s, mu)
        rhs = charfn_kms(s, -mu + 1j * beta)
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_jarzynski_point_is_exactly_cancelled():
    for beta in (0.5, 1.0, 2.0):
        s = make_scenario(beta=beta)
        assert abs(charfn_kms(s, 1j * beta) - 1.0) <= 1e-14


def test_complex_mu_restricted_to_kms_strip():
    s = make_scenario(beta=1.0)
    with pytest.raises(InvalidArgumentError):
        charfn_kms(s, 1j * 2.0)
    with pytest.raises(InvalidArgumentError):
        charfn_kms(s, -0.5j)


def test_correction_consistent_with_charfn():
    s = make_scenario(beta=1.0)
    for mu in (0.5, 1.0, 5.0):
        assert 1.0 + charfn_correction(s, mu) == pytest.approx(
            charfn_kms(s, mu), abs=1e-16
        )


def test_correction_scales_with_coupling_squared():
    weak = make_scenario(beta=1.0, coupling=0.005)
    strong = make_scenario(beta=1.0, coupling=0.01)
    ratio = charfn_correction(strong, 1.0) / charfn_correction(weak, 1.0)
    assert ratio == pytest.approx(4.0, rel=1e-12)


def test_regime_guards():
    with pytest.raises(RegimeError):
        charfn_correction(delta_scenario(), 1.0)  # delta needs the exponentiated form
    with pytest.raises(RegimeError):
        charfn_delta_numeric(make_scenario(beta=1.0), 1.0)  # smooth switching
    thermal_delta = Scenario(
        field=FieldSpec(beta=1.0, coupling=0.1),
        switching=SwitchingProfile.delta(),
        smearing=SmearingProfile.gaussian_spherical(SIGMA),
    )
    with pytest.raises(RegimeError):
        charfn_delta_numeric(thermal_delta, 1.0)  # vacuum only


def test_monte_carlo_oracle_full_3d_integral():
    """Independent 3D Monte Carlo estimate of P~(mu) - 1 at beta = 1, mu = 1.

    Samples k from the Gaussian envelope of |chi~|^2 |F~|^2 over R^3 and
    averages the remaining factor of the integrand of

        P~(mu) - 1 = lam^2 Int d^3k |chi~(w)|^2 |F~(k)|^2 / ((2 pi)^3 2 w)
                     * [coth(beta w / 2)(cos(mu w) - 1) + i sin(mu w)],

    checking both the angular reduction and the 2-pi bookkeeping.
    """
    beta, mu = 1.0, 1.0
    s = make_scenario(beta=beta)
    u = SWITCH_WIDTH**2 + SIGMA**2  # |chi~|^2 |F~|^2 = 2 pi s^2 e^{-u k^2}
    rng = np.random.default_rng(20240817)
    n = 2_000_000
    kvec = rng.normal(scale=1.0 / math.sqrt(2.0 * u), size=(n, 3))
    k = np.linalg.norm(kvec, axis=1)
    coth, _ = thermal_weight(k, beta)
    bracket = coth * (np.cos(mu * k) - 1.0) + 1j * np.sin(mu * k)
    # integrand / density, with the e^{-u k^2} envelope cancelled analytically
    density_norm = (u / math.pi) ** 1.5
    samples = (
        2.0 * math.pi * SWITCH_WIDTH**2
        / ((2.0 * math.pi) ** 3 * 2.0 * k)
        * bracket
        / density_norm
    )
    estimate = LAM**2 * samples.mean()
    stderr = LAM**2 * np.hypot(
        samples.real.std(ddof=1), samples.imag.std(ddof=1)
    ) / math.sqrt(n)
    exact = charfn_correction(s, mu)
    assert abs(estimate - exact) < 6.0 * stderr
    # and the Monte Carlo resolution itself is meaningful for this check
    assert stderr < 0.05 * abs(exact)


def test_delta_closed_form_constants():
    # mu -> infinity limit of the closed form is the atom weight
    # exp(-lam^2 / (8 pi^2 sigma^2)).
    lam, sigma = 0.1, 1.0
    limit = math.exp(-(lam**2) / (8.0 * math.pi**2 * sigma**2))
    assert charfn_delta_closed(lam, sigma, 1e7) == pytest.approx(limit, rel=1e-6)
    assert charfn_delta_closed(lam, sigma, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_delta_closed_matches_numeric():
    s = delta_scenario(coupling=0.1)
    for mu in np.linspace(-10.0, 10.0, 41):
        closed = charfn_delta_closed(0.1, SIGMA, float(mu))
        numeric = charfn_delta_numeric(s, float(mu))
        assert abs(closed - numeric) <= 1e-10


def test_sample_charfn_matches_pointwise_quadrature():
    for s in (make_scenario(beta=1.0), make_scenario(beta=math.inf), delta_scenario()):
        fn = charfn_delta_numeric if s.switching.is_delta else charfn_kms
        mu = np.linspace(-30.0, 30.0, 13)
        batch = sample_charfn(s, mu)
        pointwise = np.array([fn(s, float(m)) for m in mu])
        assert np.max(np.abs(batch - pointwise)) < 1e-10


def test_charfn_grid_layout_and_symmetry():
    s = make_scenario(beta=1.0)
    grid = charfn_grid(s, mu_points=512, mu_max=256.0)
    n = grid.mu.size
    assert n == 512
    assert grid.mu[n // 2] == 0.0
    assert grid.values[n // 2] == 1.0 + 0.0j
    v = grid.values
    assert np.max(np.abs(v[1:] - np.conj(v[1:][::-1]))) < 1e-12
