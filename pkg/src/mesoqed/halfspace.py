"""Scattered dyadic Green function above a planar half-space.

Angular-spectrum representation for source and field point both at
height h in the upper medium, with all lateral offsets taken to zero
analytically: the in-plane azimuth integral is done in closed form, so
each tensor component reduces to a single k_par integral. Spatial
derivatives act inside the integrand (a lateral derivative inserts a
wavevector factor, a vertical one a k_z factor); the integral is never
differentiated numerically. The homogeneous part of Im G_xx is added in
closed form, n1*k0/(6*pi).

Conventions fixed here and relied on everywhere:

* k_z,i = sqrt(eps_i*k0^2 - k_par^2) with Im k_z >= 0 pointwise.
* The k_par path runs 0 -> k1 on the real axis parametrized as
  k1*sin(t) (which cancels the 1/k_z1 edge singularity exactly), then
  dips below the real axis on a half-ellipse spanning [k1, k_b], then
  returns to the real axis as k1*cosh(t) up to the exponential cutoff
  of exp(2i*k_z1*h). Reflection coefficients of passive media are
  analytic between this path and the real axis (the surface-plasmon
  pole of r_p lies above the axis), so the detour changes no value,
  only the conditioning near the pole.
* The plasmon channel of each component is defined as the imaginary
  projection of 2*pi*i times that component's residue at the r_p pole;
  the lossy-surface channel is the evanescent-path remainder.

The four component integrands, written per unit dk_par with
phi = exp(2i*k_z1*h) and all lengths in nm:

    G_xx:              (i/8pi) * (kp/kz1) * (rs - rp*kz1^2/k1^2) * phi
    d/dx G_zx:        -(1/8pi) * kp^3/k1^2 * rp * phi
    d/dx d/dx' G_zz:   (i/8pi) * kp^5/(kz1*k1^2) * rp * phi
    d/dz G_xx:        -(1/8pi) * kp * (rs - rp*kz1^2/k1^2) * phi
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec

from . import rates as _rates
from .core import EmitterMoments, Material, homogeneous_im_gxx, wavevector
from .errors import ConvergenceError, NoBoundModeError, ParameterError
from .specfun import bessel_j

_TAIL_EXPONENT = 80.0  # exp(-80) truncation of the evanescent tail
_MIN_SAFE_HEIGHT = 10.0


@dataclass(frozen=True)
class InterfaceGeometry:
    """Emitter in the upper half-space at height h above the interface."""

    upper: Material
    lower: Material
    h: float
    lambda0: float

    def __post_init__(self):
        if not (math.isfinite(self.h) and self.h > 0.0):
            raise ParameterError(f"height must be positive, got {self.h}")
        if not (math.isfinite(self.lambda0) and self.lambda0 > 0.0):
            raise ParameterError(f"wavelength must be positive, got {self.lambda0}")
        if self.upper.n.imag != 0.0:
            raise ParameterError("upper medium must be lossless (it hosts the emitter)")


@dataclass(frozen=True)
class GreenBundle:
    """Field quantities entering the rate ladder, all at the emitter.

    g_xx       Im G_xx, homogeneous part included           [1/nm]
    d_g_zx     Im of the lateral gradient of G_zx           [1/nm^2]
    dd_g_zz    Im of the mixed lateral derivative of G_zz   [1/nm^3]
    b_yx       magnetic-type combination,
               Im{d_x G_zx - d_z G_xx}                      [1/nm^2]
    q_xz       quadrupole-type combination,
               Im{d_x G_zx + d_z G_xx}                      [1/nm^2]

    The two complex members keep the gradients before the imaginary
    projection so the linear identity b + q = 2*d_g_zx can be verified
    on complex values.
    """

    g_xx: float
    d_g_zx: float
    dd_g_zz: float
    b_yx: float
    q_xz: float
    grad_zx_complex: complex
    grad_xx_z_complex: complex


@dataclass(frozen=True)
class ChannelDecomposition:
    """Per-order split into radiative, plasmon and lossy-surface parts.

    Entries are normalized rate contributions; rad[i] + pl[i] + ls[i]
    equals the order-i rung of the rate ladder.
    """

    rad: tuple
    pl: tuple
    ls: tuple

    def order_total(self, order: int) -> float:
        return self.rad[order] + self.pl[order] + self.ls[order]

    @property
    def totals(self) -> tuple:
        return tuple(self.order_total(i) for i in range(3))


def _kz(eps: complex, k0: float, kp: complex) -> complex:
    """Vertical wavevector with Im >= 0 pointwise."""
    w = np.sqrt(complex(eps * k0 * k0 - kp * kp))
    if w.imag < 0.0:
        w = -w
    return w


def fresnel(k_par, geom: InterfaceGeometry):
    """Reflection coefficients (r_s, r_p) seen from the upper medium.

    Accepts complex k_par (the integration contour leaves the real
    axis); branch of both k_z follows the Im >= 0 convention.
    """
    k0 = 2.0 * math.pi / geom.lambda0
    kz1 = _kz(geom.upper.eps, k0, k_par)
    kz2 = _kz(geom.lower.eps, k0, k_par)
    return _fresnel_from_kz(kz1, kz2, geom.upper.eps, geom.lower.eps)


def _fresnel_from_kz(kz1, kz2, eps1, eps2):
    rs = (kz1 - kz2) / (kz1 + kz2)
    rp = (eps2 * kz1 - eps1 * kz2) / (eps2 * kz1 + eps1 * kz2)
    return rs, rp


def spp_pole(geom: InterfaceGeometry) -> complex:
    """Bound surface-plasmon pole of r_p, k0*sqrt(eps1*eps2/(eps1+eps2)).

    Exists only for Re(eps1 + eps2) < 0; near eps2 = -eps1 the closed
    form diverges and the mode is not bound either way.
    """
    eps1 = geom.upper.eps
    eps2 = geom.lower.eps
    s = eps1 + eps2
    if s.real >= 0.0:
        raise NoBoundModeError(
            f"no bound surface mode: Re(eps1 + eps2) = {s.real:.6g} >= 0"
        )
    if abs(s) < 1.0e-6 * (abs(eps1) + abs(eps2)):
        raise NoBoundModeError("surface-mode resonance: eps2 too close to -eps1")
    k0 = 2.0 * math.pi / geom.lambda0
    k = k0 * np.sqrt(complex(eps1 * eps2 / s))
    if k.real < 0.0:
        k = -k
    if k.imag < 0.0:
        raise NoBoundModeError(f"pole {k!r} decays backwards; not a bound mode")
    return complex(k)


@dataclass(frozen=True)
class _Contour:
    k0: float
    k1: float
    h: float
    eps1: complex
    eps2: complex
    k_b: float
    delta: float
    t_b: float
    t_max: float


def _contour(geom: InterfaceGeometry) -> _Contour:
    k0 = 2.0 * math.pi / geom.lambda0
    k1 = wavevector(geom.upper, geom.lambda0).real
    try:
        ks = spp_pole(geom)
        k_b = max(2.0 * ks.real - k1, 1.5 * k1)
    except NoBoundModeError:
        k_b = 1.5 * k1
    delta = 0.25 * (k_b - k1)
    t_b = math.acosh(k_b / k1)
    t_max = math.asinh(_TAIL_EXPONENT / (2.0 * k1 * geom.h))
    return _Contour(
        k0=k0, k1=k1, h=geom.h, eps1=geom.upper.eps, eps2=geom.lower.eps,
        k_b=k_b, delta=delta, t_b=t_b, t_max=t_max,
    )


def _integrate_contour(geom: InterfaceGeometry, fn, nout: int, rel_tol: float,
                       abs_scale: float):
    """Integrate a component vector along the deformed k_par path.

    fn(kp, kz1, rs, rp, phi, dkp_du, inv_term) -> complex vector, where
    dkp_du is the parametrization Jacobian and inv_term = dkp_du/kz1 is
    supplied in analytically cancelled form on the segments where kz1
    vanishes at an endpoint. Returns (radiative part, evanescent part,
    accumulated error estimate).
    """
    if geom.h < _MIN_SAFE_HEIGHT:
        warnings.warn(
            f"h = {geom.h} nm is below {_MIN_SAFE_HEIGHT} nm; the quasi-static tail "
            "dominates and quadrature gets expensive",
            RuntimeWarning,
            stacklevel=3,
        )
    c = _contour(geom)
    eps1, eps2, k0, k1, h = c.eps1, c.eps2, c.k0, c.k1, c.h

    def eval_at(kp, kz1, dkp_du, inv_term):
        kz2 = _kz(eps2, k0, kp)
        rs, rp = _fresnel_from_kz(kz1, kz2, eps1, eps2)
        phi = np.exp(2.0j * kz1 * h)
        return fn(kp, kz1, rs, rp, phi, dkp_du, inv_term)

    def seg_radiative(t):
        kp = k1 * math.sin(t)
        kz1 = k1 * math.cos(t)
        return eval_at(kp, kz1, kz1, 1.0)

    m_c = 0.5 * (c.k_b + k1)
    half = 0.5 * (c.k_b - k1)

    def seg_ellipse(sigma):
        if sigma <= 0.0:
            return np.zeros(nout, dtype=complex)
        theta = math.pi * sigma * sigma
        kp = m_c - half * math.cos(theta) - 1.0j * c.delta * math.sin(theta)
        dkp_du = (half * math.sin(theta) - 1.0j * c.delta * math.cos(theta)) * (
            2.0 * math.pi * sigma
        )
        kz1 = _kz(eps1, k0, kp)
        return eval_at(kp, kz1, dkp_du, dkp_du / kz1)

    def seg_tail(t):
        kp = k1 * math.cosh(t)
        kz1 = 1.0j * k1 * math.sinh(t)
        dkp_du = k1 * math.sinh(t)
        # dkp_du / kz1 = 1/i exactly on this segment
        return eval_at(kp, kz1, dkp_du, -1.0j)

    eps_abs = rel_tol * abs_scale
    rad, err_a = quad_vec(seg_radiative, 0.0, 0.5 * math.pi,
                          epsabs=eps_abs, epsrel=rel_tol, norm="max")
    evan, err_b = quad_vec(seg_ellipse, 0.0, 1.0,
                           epsabs=eps_abs, epsrel=rel_tol, norm="max")
    err = err_a + err_b
    if c.t_max > c.t_b:
        tail, err_c = quad_vec(seg_tail, c.t_b, c.t_max,
                               epsabs=eps_abs, epsrel=rel_tol, norm="max")
        evan = evan + tail
        err += err_c

    scale = max(abs_scale, float(np.max(np.abs(rad))), float(np.max(np.abs(evan))))
    if err > 50.0 * max(eps_abs, rel_tol * scale):
        raise ConvergenceError(
            f"k_par quadrature reached {err:.3e}, wanted {rel_tol:.1e} relative "
            f"(scale {scale:.3e})"
        )
    return rad, evan, err


def _ladder_vector(k1: float):
    """Component integrand for the four rate-ladder quantities.

    Gradient components are pre-scaled by 1/k1 per derivative so all
    four share units of 1/nm and one max-norm tolerance controls them
    evenly; callers undo the scaling via _unscale.
    """
    pref = 1.0 / (8.0 * math.pi)

    def fn(kp, kz1, rs, rp, phi, dkp_du, inv_term):
        common = (rs - rp * kz1 * kz1 / (k1 * k1)) * phi
        f0 = 1.0j * pref * kp * common * inv_term
        f1 = -pref * (kp ** 3 / (k1 ** 3)) * rp * phi * dkp_du
        f2 = 1.0j * pref * (kp ** 5 / (k1 ** 4)) * rp * phi * inv_term
        f3 = -pref * (kp / k1) * common * dkp_du
        return np.array([f0, f1, f2, f3], dtype=complex)

    return fn


def _unscale(vec, k1: float):
    return np.array([vec[0], vec[1] * k1, vec[2] * k1 * k1, vec[3] * k1], dtype=complex)


def _pole_vector(geom: InterfaceGeometry) -> np.ndarray:
    """2*pi*i times the r_p-pole residue of each ladder component.

    Scaled like _ladder_vector. Zero when no bound pole exists.
    """
    try:
        ks = spp_pole(geom)
    except NoBoundModeError:
        return np.zeros(4, dtype=complex)
    c = _contour(geom)
    kz1p = _kz(c.eps1, c.k0, ks)
    kz2p = _kz(c.eps2, c.k0, ks)
    dprime = -ks * (c.eps2 / kz1p + c.eps1 / kz2p)
    rtilde = 2.0 * c.eps2 * kz1p / dprime
    phip = np.exp(2.0j * kz1p * c.h)
    pref = rtilde * phip / (8.0 * math.pi)
    k1 = c.k1
    res = np.array(
        [
            -1.0j * pref * ks * kz1p / (k1 * k1),
            -pref * ks ** 3 / (k1 ** 3),
            1.0j * pref * ks ** 5 / (kz1p * k1 ** 4),
            pref * ks * kz1p ** 2 / (k1 ** 3),
        ],
        dtype=complex,
    )
    return 2.0j * math.pi * res


@dataclass(frozen=True)
class _Sommerfeld:
    rad: np.ndarray
    evan: np.ndarray
    pole: np.ndarray
    err: float
    k1: float
    norm: float


def _sommerfeld(geom: InterfaceGeometry, rel_tol: float) -> _Sommerfeld:
    k1 = wavevector(geom.upper, geom.lambda0).real
    norm = homogeneous_im_gxx(geom.upper, geom.lambda0)
    rad, evan, err = _integrate_contour(
        geom, _ladder_vector(k1), nout=4, rel_tol=rel_tol, abs_scale=norm
    )
    return _Sommerfeld(rad=rad, evan=evan, pole=_pole_vector(geom), err=err,
                       k1=k1, norm=norm)


def green_bundle(geom: InterfaceGeometry, rel_tol: float = 1.0e-8) -> GreenBundle:
    """Field bundle at the emitter, scattered part by quadrature.

    The homogeneous part enters only g_xx; the gradient entries of a
    homogeneous medium vanish at the source point by parity, so the
    bundle of an interface between identical media is exactly
    (homogeneous, 0, 0, 0, 0).
    """
    som = _sommerfeld(geom, rel_tol)
    j = _unscale(som.rad + som.evan, som.k1)
    return _bundle_from_integrals(j, som.norm)


def _bundle_from_integrals(j: np.ndarray, hom: float) -> GreenBundle:
    return GreenBundle(
        g_xx=hom + j[0].imag,
        d_g_zx=j[1].imag,
        dd_g_zz=j[2].imag,
        b_yx=(j[1] - j[3]).imag,
        q_xz=(j[1] + j[3]).imag,
        grad_zx_complex=complex(j[1]),
        grad_xx_z_complex=complex(j[3]),
    )


def decompose_channels(geom: InterfaceGeometry, moments: EmitterMoments,
                       rel_tol: float = 1.0e-8) -> ChannelDecomposition:
    """Radiative / plasmon / lossy split of each rate-ladder order.

    Radiative: the k_par in [0, k1] part plus, at order zero, the
    homogeneous rate. Plasmon: the pole bookkeeping of the docstring
    above. Lossy: the evanescent remainder.
    """
    som = _sommerfeld(geom, rel_tol)
    return _channels_from_sommerfeld(som, moments)


def _channels_from_sommerfeld(som: _Sommerfeld, moments: EmitterMoments) -> ChannelDecomposition:
    k1, norm = som.k1, som.norm
    if k1 * moments.l_qd >= 1.0:
        raise _rates.expansion_error(k1, moments.l_qd)
    lam = moments.effective_lambda_over_mu
    factors = (1.0, 2.0 * lam, lam * lam)
    rad_u = _unscale(som.rad, k1)
    evan_u = _unscale(som.evan, k1)
    pole_u = _unscale(som.pole, k1)

    rad = [0.0, 0.0, 0.0]
    pl = [0.0, 0.0, 0.0]
    ls = [0.0, 0.0, 0.0]
    for order, idx in ((0, 0), (1, 1), (2, 2)):
        f = factors[order] / norm
        rad[order] = f * rad_u[idx].imag
        pl[order] = f * pole_u[idx].imag
        ls[order] = f * (evan_u[idx].imag - pole_u[idx].imag)
    rad[0] += 1.0  # homogeneous rate is purely radiative
    return ChannelDecomposition(rad=tuple(rad), pl=tuple(pl), ls=tuple(ls))


@dataclass(frozen=True)
class InterfacePoint:
    """Everything the sweep needs at one height, from one quadrature pass."""

    bundle: GreenBundle
    ladder: "_rates.RateLadder"
    split: "_rates.MultipoleSplit"
    channels: ChannelDecomposition
    norm: float
    k1: float


def interface_point(geom: InterfaceGeometry, moments: EmitterMoments,
                    rel_tol: float = 1.0e-8) -> InterfacePoint:
    som = _sommerfeld(geom, rel_tol)
    bundle = _bundle_from_integrals(_unscale(som.rad + som.evan, som.k1), som.norm)
    ladder = _rates.rate_ladder(bundle, moments, som.norm, k_ambient=som.k1)
    split = _rates.md_eq_split(bundle, moments, som.norm)
    channels = _channels_from_sommerfeld(som, moments)
    return InterfacePoint(bundle=bundle, ladder=ladder, split=split,
                          channels=channels, norm=som.norm, k1=som.k1)


def _j1_over_u(u):
    """J1(u)/u, stable through u = 0."""
    if abs(u) < 1.0e-4:
        u2 = u * u
        return 0.5 - u2 / 16.0 + u2 * u2 / 384.0
    return bessel_j(1, u) / u


def gzx_lateral(geom: InterfaceGeometry, x: float, rel_tol: float = 1.0e-8) -> complex:
    """Scattered G_zx at lateral field-point offset x, odd in x.

    Used to cross-check the in-integrand lateral derivative against
    finite differences; not part of the rate pipeline.
    """
    if x == 0.0:
        return 0.0j
    c = _contour(geom)
    k1 = c.k1
    pref = -1.0 / (4.0 * math.pi * k1 * k1)

    def fn(kp, kz1, rs, rp, phi, dkp_du, inv_term):
        return np.array([pref * kp * kp * bessel_j(1, kp * x) * rp * phi * dkp_du])

    rad, evan, _ = _integrate_contour(geom, fn, nout=1, rel_tol=rel_tol,
                                      abs_scale=homogeneous_im_gxx(geom.upper, geom.lambda0))
    return complex((rad + evan)[0])


def gxx_lateral(geom: InterfaceGeometry, x: float, rel_tol: float = 1.0e-8) -> complex:
    """Scattered G_xx at lateral field-point offset x, even in x."""
    c = _contour(geom)
    k1 = c.k1
    pref = 1.0j / (4.0 * math.pi)

    def fn(kp, kz1, rs, rp, phi, dkp_du, inv_term):
        u = kp * x
        j1u = _j1_over_u(u)
        sterm = rs * j1u
        pterm = rp * (kz1 * kz1 / (k1 * k1)) * (bessel_j(0, u) - j1u)
        return np.array([pref * kp * (sterm - pterm) * phi * inv_term])

    rad, evan, _ = _integrate_contour(geom, fn, nout=1, rel_tol=rel_tol,
                                      abs_scale=homogeneous_im_gxx(geom.upper, geom.lambda0))
    return complex((rad + evan)[0])


def gxx_vertical_offset(geom: InterfaceGeometry, dz: float, rel_tol: float = 1.0e-8) -> complex:
    """Scattered G_xx with the field point lifted by dz above the source.

    The reflected path length becomes 2h + dz; differencing in dz
    cross-checks the in-integrand vertical derivative.
    """
    pref = 1.0j / (8.0 * math.pi)
    k1 = wavevector(geom.upper, geom.lambda0).real

    def fn(kp, kz1, rs, rp, phi, dkp_du, inv_term):
        extra = np.exp(1.0j * kz1 * dz)
        common = rs - rp * kz1 * kz1 / (k1 * k1)
        return np.array([pref * kp * common * phi * extra * inv_term])

    rad, evan, _ = _integrate_contour(geom, fn, nout=1, rel_tol=rel_tol,
                                      abs_scale=homogeneous_im_gxx(geom.upper, geom.lambda0))
    return complex((rad + evan)[0])


def paper_interface(h: float) -> InterfaceGeometry:
    from .core import GAAS, PAPER_LAMBDA0_NM, SILVER

    return InterfaceGeometry(upper=GAAS, lower=SILVER, h=h, lambda0=PAPER_LAMBDA0_NM)
