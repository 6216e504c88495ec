"""Cylinder-function wrappers: values, identities, domain guards.

Values are checked two ways: against hand-rolled power series / an
integral representation (oracles module) and through the Wronskian
identities, which the wrapped backend does not enforce by
construction.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from mesoqed import OutOfDomainError, ParameterError
from mesoqed.specfun import bessel_ik, bessel_ik_scaled, bessel_j, hankel1


# ---------------------------------------------------------- spot values


@pytest.mark.parametrize("z", [0.7 + 0.3j, 3.0 - 1.2j, 8.0 + 2.0j])
@pytest.mark.parametrize("order", [0, 1])
def test_bessel_j_against_series(order, z):
    ref = oracles.bessel_j_series(order, z)
    got = bessel_j(order, z)
    assert got == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("z", [0.5 + 0.2j, 4.0 + 1.0j, 12.0 - 3.0j])
@pytest.mark.parametrize("order", [0, 1])
def test_bessel_i_against_series(order, z):
    ref = oracles.bessel_i_series(order, z)
    got = bessel_ik(order, z)[0]
    assert got == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("z", [0.8 + 0.1j, 3.0 + 1.5j, 10.0 - 2.0j])
@pytest.mark.parametrize("order", [0, 1])
def test_bessel_k_against_integral(order, z):
    ref = oracles.bessel_k_integral(order, z)
    got = bessel_ik(order, z)[1]
    assert got == pytest.approx(ref, rel=1e-11)


def test_hankel_real_part_is_j_on_real_axis():
    # On the positive real axis H1 = J + iY with J, Y both real, so
    # Re H1 must reproduce J exactly. Couples the two wrappers without
    # needing a separate Y binding.
    for x in (0.6, 3.4, 12.0, 27.5):
        for order in (0, 1):
            assert complex(hankel1(order, x)).real == pytest.approx(
                complex(bessel_j(order, x)).real, rel=1e-12, abs=1e-15
            )
            assert abs(complex(bessel_j(order, x)).imag) < 1e-15


# ----------------------------------------------------------- Wronskians


def _jh_points(n=1000):
    rng = np.random.default_rng(20260816)
    mag = np.exp(rng.uniform(np.log(0.1), np.log(30.0), n))
    arg = rng.uniform(0.0, np.pi, n)
    return mag * np.exp(1j * arg)


def test_wronskian_j_hankel():
    # With J0' = -J1 and H0' = -H1 the cross product reduces to
    # J1 H0 - J0 H1 = +2i / (pi z); checked over the upper half plane
    # where the outgoing-wave guard admits arguments.
    worst = 0.0
    for z in _jh_points():
        z = complex(z)
        w = bessel_j(1, z) * hankel1(0, z) - bessel_j(0, z) * hankel1(1, z)
        target = 2j / (math.pi * z)
        worst = max(worst, abs(w - target) / abs(target))
    assert worst < 1e-9


def test_wronskian_i_k():
    # I0 K1 + I1 K0 = 1/z over the right half plane.
    rng = np.random.default_rng(77)
    mag = np.exp(rng.uniform(np.log(0.1), np.log(300.0), 1000))
    arg = rng.uniform(-0.98 * np.pi / 2, 0.98 * np.pi / 2, 1000)
    zs = mag * np.exp(1j * arg)
    zs = zs[np.abs(zs.real) < 600]
    worst = 0.0
    for z in zs:
        z = complex(z)
        i0, k0 = bessel_ik(0, z)
        i1, k1 = bessel_ik(1, z)
        worst = max(worst, abs(i0 * k1 + i1 * k0 - 1.0 / z) * abs(z))
    assert worst < 1e-9


def test_scaled_pair_consistent_with_plain():
    for z in (0.5 + 0.1j, 30.0 + 4.0j, 200.0 - 15.0j):
        for order in (0, 1):
            i_plain, k_plain = bessel_ik(order, z)
            i_scaled, k_scaled = bessel_ik_scaled(order, z)
            assert i_scaled == pytest.approx(
                i_plain * math.exp(-abs(z.real)), rel=1e-12
            )
            assert k_scaled == pytest.approx(k_plain * np.exp(z), rel=1e-12)


def test_scaled_pair_survives_huge_arguments():
    # The plain pair overflows here; the scaled pair must not.
    i_s, k_s = bessel_ik_scaled(0, 5000.0 + 100.0j)
    assert np.isfinite(i_s) and np.isfinite(k_s)
    assert abs(i_s) > 0.0 and abs(k_s) > 0.0
    # asymptotically both scaled moduli approach sqrt(1/(2 pi z)) forms
    assert abs(i_s) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi * 5000.0), rel=1e-2)


# --------------------------------------------------------- domain guards


def test_order_validation():
    for fn in (lambda o: bessel_j(o, 1.0), lambda o: hankel1(o, 1.0),
               lambda o: bessel_ik(o, 1.0), lambda o: bessel_ik_scaled(o, 1.0)):
        with pytest.raises(ParameterError):
            fn(-1)
        with pytest.raises(ParameterError):
            fn(1.5)


def test_bessel_j_rejects_huge_imaginary_part():
    with pytest.raises(OutOfDomainError):
        bessel_j(0, 1.0 + 800.0j)
    with pytest.raises(OutOfDomainError):
        bessel_j(0, 1.0 - 800.0j)
    bessel_j(0, 1.0 + 600.0j)


def test_hankel_rejects_deep_lower_half_plane():
    with pytest.raises(OutOfDomainError):
        hankel1(0, 1.0 - 800.0j)
    with pytest.raises(OutOfDomainError):
        hankel1(0, 0.0)
    hankel1(0, 1.0 - 10.0j)


def test_bessel_ik_domain():
    with pytest.raises(OutOfDomainError):
        bessel_ik(0, -1.0 + 0.5j)
    with pytest.raises(OutOfDomainError):
        bessel_ik(0, 800.0)
    bessel_ik(0, 600.0)
    i_s, k_s = bessel_ik_scaled(0, 800.0)
    assert np.isfinite(i_s) and np.isfinite(k_s)
    with pytest.raises(OutOfDomainError):
        bessel_ik_scaled(0, -2.0)


@given(
    mag=st.floats(0.2, 50.0),
    phase=st.floats(-1.4, 1.4),
)
def test_i_k_product_positive_real_axis_behavior(mag, phase):
    # I_0 K_0 is analytic and nonzero on the right half plane; its
    # product times z stays bounded (between the small- and large-z
    # asymptotes) over the sampled domain.
    z = complex(mag * math.cos(phase), mag * math.sin(phase))
    i0, k0 = bessel_ik(0, z)
    prod = i0 * k0
    assert np.isfinite(prod)
    assert abs(prod) > 0.0
