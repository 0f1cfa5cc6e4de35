import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from cdwtunnel.errors import DomainError
from cdwtunnel.mathcore import SeriesControl
from cdwtunnel.models import (
    LinRateParams,
    SolitonCurrentParams,
    SolitonProfileParams,
    WashboardParams,
    ZenerParams,
    derive_cv,
    drive_theta,
    energy_gap,
    harmonic_reference,
    lin_rate,
    lin_rate_1d_closed_form,
    log_soliton_current,
    pinning_term,
    quartic_remainder,
    locate_gap_zero,
    pair_separation,
    soliton_current,
    soliton_profile,
    threshold_field,
    washboard_potential,
    washboard_quartic_approx,
    zener_current,
)

UNIT = SolitonCurrentParams(1.0, 1.0, 1.0)


def direct_soliton(e, c1=1.0, et=1.0, cv=1.0):
    a = et * cv
    return c1 * math.cosh(math.sqrt(2 * e / a) - math.sqrt(a / e)) * math.exp(-a / e)


# soliton current

def test_soliton_zero_field():
    assert soliton_current(0.0, UNIT) == 0.0


def test_soliton_cosh_argument_vanishes():
    p = SolitonCurrentParams(2.5, 1.3, 0.7)
    e = p.activation_field / math.sqrt(2)
    assert soliton_current(e, p) == pytest.approx(2.5 * math.exp(-math.sqrt(2)), rel=1e-14)


def test_soliton_unit_point():
    assert soliton_current(1.0, UNIT) == pytest.approx(math.cosh(math.sqrt(2) - 1) / math.e, rel=1e-14)
    assert soliton_current(1.0, UNIT) == pytest.approx(0.3998923197349531, rel=1e-12)


@pytest.mark.parametrize("e", [0.01, 0.3, 1.0, 4.0, 20.0])
@pytest.mark.parametrize("c1,et,cv", [(1, 1, 1), (3.0, 0.4, 2.0), (0.2, 5.0, 0.5)])
def test_soliton_matches_direct(e, c1, et, cv):
    assert soliton_current(e, SolitonCurrentParams(c1, et, cv)) == pytest.approx(
        direct_soliton(e, c1, et, cv), rel=1e-12
    )


def test_soliton_array_input():
    e = np.array([0.0, 0.5, 1.0, 2.0])
    out = soliton_current(e, UNIT)
    assert isinstance(out, np.ndarray)
    assert out[0] == 0.0
    np.testing.assert_allclose(out[1:], [direct_soliton(v) for v in e[1:]], rtol=1e-13)


def test_soliton_negative_field():
    with pytest.raises(DomainError):
        soliton_current(-0.1, UNIT)


def test_soliton_decays_toward_zero():
    vals = [soliton_current(10.0**-k, UNIT) for k in range(1, 7)]
    assert np.all(np.diff(vals) <= 0.0)
    assert vals[-1] < 1e-300


def test_log_soliton_current():
    e = np.array([1e-6, 1e-3, 0.5, 2.0])
    lg = log_soliton_current(e, UNIT)
    assert np.all(np.isfinite(lg))
    np.testing.assert_allclose(np.exp(lg[2:]), soliton_current(e[2:], UNIT), rtol=1e-14)
    assert log_soliton_current(0.0, UNIT) == -math.inf
    assert lg[0] == pytest.approx(-1e6 + (1e3 - math.sqrt(2e-6)) - math.log(2), rel=1e-12)


def test_pinning_term_matches_cosine_form():
    p = WashboardParams(pinning_coefficient=40.0)
    phi = np.linspace(-7, 7, 301)
    np.testing.assert_allclose(pinning_term(phi, p), 20.0 * (1 - np.cos(phi)), atol=1e-12)


def test_soliton_subthreshold_suppression():
    ratio = soliton_current(0.1, UNIT) / soliton_current(1.0, UNIT)
    assert ratio < 1e-2
    assert ratio == pytest.approx(8.612289404737747e-4, rel=1e-10)


def test_soliton_depends_only_on_activation_product():
    e = np.linspace(0.1, 3, 30)
    a = soliton_current(e, SolitonCurrentParams(1.0, 2.0, 0.5))
    b = soliton_current(e, SolitonCurrentParams(1.0, 1.0, 1.0))
    np.testing.assert_allclose(a, b, rtol=1e-14)


@pytest.mark.parametrize("field", ["amplitude_c1_tilde", "threshold_field_et", "cv"])
def test_soliton_params_positive(field):
    kwargs = {"amplitude_c1_tilde": 1.0, "threshold_field_et": 1.0, "cv": 1.0, field: 0.0}
    with pytest.raises(DomainError):
        SolitonCurrentParams(**kwargs)


# zener

def test_zener_at_threshold():
    assert zener_current(1.0, ZenerParams(1.0, 1.0)) == 0.0


def test_zener_below_threshold():
    assert zener_current(0.5, ZenerParams(3.0, 1.0)) == 0.0


def test_zener_value():
    assert zener_current(2.0, ZenerParams(1.0, 1.0)) == pytest.approx(math.exp(-0.5), rel=1e-15)


def test_zener_zero_on_subthreshold_and_continuous():
    p = ZenerParams(2.0, 1.5)
    assert np.all(zener_current(np.linspace(0, 1.5, 101), p) == 0.0)
    assert zener_current(1.5 * (1 + 1e-12), p) < 1e-10


def test_zener_negative_field():
    with pytest.raises(DomainError):
        zener_current(-1.0, ZenerParams())


# lin rate

def test_lin_d1_unit_field():
    expected = -math.log1p(-math.exp(-math.pi)) / (2 * math.pi)
    assert lin_rate(1.0, LinRateParams(1)) == pytest.approx(expected, rel=1e-12)
    assert lin_rate(1.0, LinRateParams(1)) == pytest.approx(7.030740048596047e-3, rel=1e-12)


def test_lin_d3_unit_field():
    # 1e4-term brute force: sum n^-2 e^{-n pi} / (4 pi^3)
    assert lin_rate(1.0, LinRateParams(3)) == pytest.approx(3.5226714081191494e-4, rel=1e-12)


def test_lin_d3_matches_reduced_form():
    for e in (0.3, 1.0, 1.7):
        n = np.arange(1, 10_001, dtype=float)
        brute = e**2 / (4 * math.pi**3) * np.sum(np.exp(-n * math.pi / e) / n**2)
        assert lin_rate(e, LinRateParams(3)) == pytest.approx(brute, rel=1e-12)


def test_lin_d2_brute_force():
    e = 0.8
    n = np.arange(1, 10_001, dtype=float)
    brute = e**1.5 / (2 * math.pi) ** 2 * np.sum(np.exp(-n * math.pi / e) / n**1.5)
    assert lin_rate(e, LinRateParams(2)) == pytest.approx(brute, rel=1e-12)


def test_lin_charge_and_mass():
    e, q, m = 0.7, 2.0, 1.5
    n = np.arange(1, 10_001, dtype=float)
    ee = q * e
    brute = ee / (2 * math.pi) * np.sum(np.exp(-n * math.pi * m * m / ee) / n)
    assert lin_rate(e, LinRateParams(1, q, m)) == pytest.approx(brute, rel=1e-12)


def test_lin_d3_exponential_suppression():
    vals = [lin_rate(e, LinRateParams(3)) for e in (0.2, 0.1, 0.05)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] / 0.05**10 < 1e-10


@pytest.mark.parametrize("e", [0.25, 0.5, 1.0, 2.0])
def test_lin_d1_closed_form(e):
    ctl = SeriesControl(1e-12)
    got = lin_rate(e, LinRateParams(1, series=ctl))
    assert abs(got / lin_rate_1d_closed_form(e) - 1.0) <= 10 * ctl.rel_tolerance


@pytest.mark.parametrize("e", [0.0, -1.0])
def test_lin_domain(e):
    with pytest.raises(DomainError):
        lin_rate(e)


def test_lin_params_validation():
    with pytest.raises(DomainError):
        LinRateParams(4)
    with pytest.raises(DomainError):
        LinRateParams(1, mass_m=0.0)


# washboard

def test_washboard_origin():
    assert washboard_potential(0.0, 0.0, WashboardParams()) == 0.0


def test_washboard_full_turn():
    p = WashboardParams(pinning_coefficient=100.0, electrostatic_mu_e=1.0)
    assert washboard_potential(2 * math.pi, math.pi, p) == pytest.approx(math.pi**2 / 2, rel=1e-12)


def test_washboard_half_turn():
    p = WashboardParams(pinning_coefficient=100.0, electrostatic_mu_e=1.0)
    assert washboard_potential(math.pi, 0.0, p) == pytest.approx(100.0 + 0.5 * math.pi**2, rel=1e-15)


@given(st.floats(-50, 50), st.floats(-10, 10))
def test_washboard_pinning_term_nonnegative(phi, theta):
    p = WashboardParams(electrostatic_mu_e=1.0)
    drive = 0.5 * (phi - theta) ** 2
    assert washboard_potential(phi, theta, p) - drive >= -1e-9


def test_experimental_mode_ratio():
    WashboardParams(100.0, 1.2, mode="experimental")
    WashboardParams(100.0, 1.5, mode="experimental")
    for mu in (1.0, 0.5, 1.6):
        with pytest.raises(DomainError):
            WashboardParams(100.0, mu, mode="experimental")
    WashboardParams(100.0, 50.0, mode="free")
    with pytest.raises(DomainError):
        WashboardParams(mode="other")


def test_quartic_values():
    p = WashboardParams(pinning_coefficient=2.0)
    assert washboard_quartic_approx(0.0, p) == 0.0
    assert washboard_quartic_approx(1.0, p) == pytest.approx(0.5 - 1 / 24, rel=1e-15)


def test_quartic_taylor_bound():
    p = WashboardParams(pinning_coefficient=7.0)
    phi = np.linspace(-2, 2, 2001)
    err = np.abs(quartic_remainder(phi, p))
    assert np.all(err <= 0.5 * 7.0 * phi**6 / 720)
    at_half = abs(0.5 * 7.0 * (1 - math.cos(0.5)) - washboard_quartic_approx(0.5, p))
    assert at_half <= 0.5**6 / 720 * 7.0 / 2


@pytest.mark.parametrize("phi", [1e-4, 0.003, 0.2, 0.9, 1.0, 1.7, -2.0, 5.0])
def test_quartic_remainder_high_precision(phi):
    mp.mp.dps = 80
    x = mp.mpf(phi)
    ref = float(3.5 * (1 - mp.cos(x)) - 3.5 * (x**2 / 2 - x**4 / 24))
    assert quartic_remainder(phi, WashboardParams(pinning_coefficient=7.0)) == pytest.approx(ref, rel=1e-10)


def test_drive_and_threshold():
    p = WashboardParams(e_star_field=3.0)
    assert drive_theta(0.0, p) == 0.0
    assert drive_theta(1.5, p) == pytest.approx(math.pi, rel=1e-15)
    assert drive_theta(3.0, p) == pytest.approx(2 * math.pi, rel=1e-15)
    assert threshold_field(WashboardParams(e_star_field=2.0)) == 1.0
    assert threshold_field(WashboardParams(e_star_field=1.0)) == 0.5
    assert drive_theta(threshold_field(p), p) == pytest.approx(math.pi, rel=1e-15)
    with pytest.raises(DomainError):
        drive_theta(-1.0, p)


def test_energy_gap_values():
    p = WashboardParams(pinning_coefficient=100.0, electrostatic_mu_e=1.0, e_star_field=2.0)
    assert energy_gap(1.0, p) == pytest.approx(0.0, abs=1e-12)
    assert energy_gap(2.0, p) == pytest.approx(2 * math.pi**2, rel=1e-12)
    assert energy_gap(2.0, p) == pytest.approx(
        washboard_potential(0.0, 2 * math.pi, p) - washboard_potential(2 * math.pi, 2 * math.pi, p)
    )
    assert energy_gap(0.5, p) < 0.0


def test_energy_gap_closed_form():
    p = WashboardParams(30.0, 0.4, 5.0)
    for e in np.linspace(0, 5, 11):
        theta = 2 * math.pi * e / 5.0
        assert energy_gap(e, p) == pytest.approx(2 * math.pi * 0.4 * (theta - math.pi), abs=1e-10)


def test_energy_gap_single_sign_change():
    p = WashboardParams(50.0, 0.6, 3.0)
    e = np.linspace(1e-6, 3.0 - 1e-6, 1000)
    signs = np.sign(energy_gap(e, p))
    assert np.count_nonzero(np.diff(signs) != 0) == 1
    assert locate_gap_zero(p) == pytest.approx(1.5, rel=1e-9)


# geometry

def test_pair_separation():
    assert pair_separation(1.0, 1.0, 2.0) == 1.0
    assert pair_separation(3.0, 3.0, 2.0) == 1.0
    assert pair_separation(2.0, 1.3, 2.0) == pytest.approx(pair_separation(1.0, 1.3, 2.0) / 2)
    prods = [pair_separation(e, 1.3, 2.0) * e for e in (0.1, 0.7, 3.0, 11.0)]
    assert max(prods) - min(prods) <= 4 * np.finfo(float).eps * max(prods)
    with pytest.raises(DomainError):
        pair_separation(0.0, 1.0, 2.0)


def test_harmonic_reference():
    assert harmonic_reference(2.0, 1.0, 1.0, 1.0) == 2.0
    assert harmonic_reference(4.0, 1.0, 1.0, 2.0) == 1.0
    assert harmonic_reference(6.0, 1.0, 2.0, 1.5) == pytest.approx(3 * harmonic_reference(2.0, 1.0, 2.0, 1.5))
    with pytest.raises(DomainError):
        harmonic_reference(1.0, 1.0, -1.0, 1.0)


def test_derive_cv():
    assert derive_cv(10.0, 1.0, 1.0, 1.0) == 10.0
    assert derive_cv(5.0, 1.0, 2.0, 1.0) == 10.0
    L, xbar, e, et = 7.3, 0.4, 1.9, 0.8
    cv = derive_cv(L, xbar, e, et)
    assert cv * xbar * et / e == pytest.approx(L, rel=1e-14)
    with pytest.raises(DomainError):
        derive_cv(0.0, 1.0, 1.0, 1.0)


# profile

def test_profile_tails_and_plateau():
    p = SolitonProfileParams(2.0, -10.0, 10.0)
    assert abs(soliton_profile(-1e6, p)) < 1e-12
    assert abs(soliton_profile(1e6, p)) < 1e-12
    assert soliton_profile(0.0, p) == pytest.approx(2 * math.pi, abs=1e-8)


def test_profile_symmetry():
    p = SolitonProfileParams(0.7, -3.0, 5.0)
    d = np.linspace(0, 20, 101)
    np.testing.assert_allclose(soliton_profile(1.0 + d, p), soliton_profile(1.0 - d, p), atol=1e-14)


@pytest.mark.parametrize("b,xa,xb", [(1.0, -10.0, 10.0), (0.5, 0.0, 40.0), (3.0, 2.0, 9.0)])
def test_profile_bounds(b, xa, xb):
    p = SolitonProfileParams(b, xa, xb)
    x = np.linspace(xa - 50 / b, xb + 50 / b, 5001)
    phi = soliton_profile(x, p)
    assert np.all(phi > -1e-9) and np.all(phi < 2 * math.pi + 1e-9)
    far = (x <= xa - 30 / b) | (x >= xb + 30 / b)
    assert np.all(np.abs(phi[far]) < 1e-12)


def test_profile_validation():
    with pytest.raises(DomainError):
        SolitonProfileParams(1.0, 5.0, 5.0)
    with pytest.raises(DomainError):
        SolitonProfileParams(0.0, 0.0, 1.0)
