"""Guided plasmon of a metal nanowire and the emitter rates it carries.

The wire (radius rho, metal eps2) sits in a lossless dielectric host
(eps1).  Only the azimuthally symmetric TM mode is treated; it is the
single bound mode of a thin wire.  With fields ~ e^{i k_sp z} and
transverse constants kappa_i^2 = k_sp^2 - eps_i k0^2 the mode satisfies

    (eps_in/kappa_in)  I1/I0 (kappa_in rho)
  + (eps_out/kappa_out) K1/K0 (kappa_out rho) = 0.

The characteristic function is even in the kappa_in branch choice;
Re kappa_out > 0 is enforced so the exterior field is bound.

Conventions fixed here and used by the rate formulas:
  * profile(r) returns real positive magnitudes (E_r(r), E_z(r)); the
    physical field is (-E_r, 0, i E_z) e^{i k_sp z}.  Rates built from
    these magnitudes; the raw complex solution (needed for boundary
    matching) is exposed separately.
  * normalization: integral of Re[eps(r)] |e|^2 over the cross-section
    equals 1.  Re makes the norm a positive real number for lossy metal.
  * per-photon prefactor C = 3 pi c0 / (n_host k0^2 v_g), vacuum
    permittivity set to 1.  Dividing by the bulk-host rate is then
    already folded in, so plasmon_rates returns normalized rates.
  * group velocity from a symmetric frequency difference with material
    eps frozen at its lambda0 value.

The quasi-static background treats the emitter as a point dipole next
to an electrostatic cylinder: azimuthal harmonic sum over reflection
coefficients built from modified Bessel functions.  It returns the
radiative-plus-lossy floor (normalized), with the radiative part taken
as the homogeneous host rate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from . import specfun
from .core import CONSTANTS, Material, EmitterMoments, homogeneous_im_gxx, wavevector
from .errors import (
    ConvergenceError,
    ContractViolationError,
    MultipleRootsError,
    NoBoundModeError,
    ParameterError,
)
from .halfspace import GreenBundle
from .rates import RateLadder

_SCAN_LO = 1.0005  # in units of the host wavevector
_SCAN_HI = 10.0
_SCAN_POINTS = 600
_ROOT_RESIDUAL = 1e-12
_CLUSTER_REL = 1e-6
_NORM_TAIL = 40.0  # exterior cutoff: exp(-2*40) tail below double precision


@dataclass(frozen=True)
class WireGeometry:
    """Cylindrical wire of `metal` embedded in lossless `host`."""

    rho: float
    metal: Material
    host: Material
    lambda0: float

    def __post_init__(self):
        if not (self.rho > 0.0):
            raise ParameterError(f"wire radius must be positive, got {self.rho}")
        if not (self.lambda0 > 0.0):
            raise ParameterError(f"wavelength must be positive, got {self.lambda0}")
        if self.host.n.imag != 0.0:
            raise ParameterError("host must be lossless for a normalizable guided mode")

    @property
    def k0(self) -> float:
        return 2.0 * math.pi / self.lambda0

    @property
    def k_host(self) -> float:
        # host is lossless by construction, so the wavevector is real
        return wavevector(self.host, self.lambda0).real


def _transverse(k: complex, eps: complex, k0: float, bound: bool) -> complex:
    kap = cmath.sqrt(k * k - eps * k0 * k0)
    if bound and kap.real < 0.0:
        kap = -kap
    return kap


def _characteristic(k: complex, geom: WireGeometry) -> tuple[complex, float]:
    """Characteristic function and its two-term magnitude scale."""
    k0 = geom.k0
    kap_in = _transverse(k, geom.metal.eps, k0, bound=False)
    kap_out = _transverse(k, geom.host.eps, k0, bound=True)
    i0, _ = specfun.bessel_ik_scaled(0, kap_in * geom.rho)
    i1, _ = specfun.bessel_ik_scaled(1, kap_in * geom.rho)
    _, q0 = specfun.bessel_ik_scaled(0, kap_out * geom.rho)
    _, q1 = specfun.bessel_ik_scaled(1, kap_out * geom.rho)
    t_in = (geom.metal.eps / kap_in) * (i1 / i0)
    t_out = (geom.host.eps / kap_out) * (q1 / q0)
    value = t_in + t_out
    scale = abs(t_in) + abs(t_out)
    return value, scale


def _residual(k: complex, geom: WireGeometry) -> float:
    value, scale = _characteristic(k, geom)
    return abs(value) / scale


def _newton(geom: WireGeometry, seed: complex) -> complex | None:
    k = complex(seed)
    for _ in range(60):
        value, scale = _characteristic(k, geom)
        if abs(value) / scale < _ROOT_RESIDUAL:
            return k
        h = 1e-6 * abs(k)
        vp, _ = _characteristic(k + h, geom)
        vm, _ = _characteristic(k - h, geom)
        deriv = (vp - vm) / (2.0 * h)
        if deriv == 0:
            return None
        step = -value / deriv
        # damp: do not accept a step that grows the residual
        for _ in range(8):
            trial, tscale = _characteristic(k + step, geom)
            if abs(trial) / tscale <= abs(value) / scale:
                break
            step *= 0.5
        k = k + step
        if abs(step) < 1e-14 * abs(k):
            value, scale = _characteristic(k, geom)
            if abs(value) / scale < _ROOT_RESIDUAL:
                return k
            return None
    return None


def _find_root(geom: WireGeometry) -> complex:
    """Scan the bound strip for |characteristic| minima, polish each by Newton."""
    k1 = geom.k_host
    grid = np.linspace(_SCAN_LO * k1, _SCAN_HI * k1, _SCAN_POINTS)
    mags = np.array([_residual(complex(k), geom) for k in grid])
    minima = [
        (mags[i], complex(grid[i]))
        for i in range(1, len(grid) - 1)
        if mags[i] < mags[i - 1] and mags[i] < mags[i + 1]
    ]
    minima.sort(key=lambda pair: pair[0])
    roots: list[complex] = []
    for _, seed in minima[:6]:
        root = _newton(geom, seed)
        if root is None:
            continue
        if not (_SCAN_LO * k1 < root.real < (_SCAN_HI + 0.5) * k1):
            continue
        if root.imag < -1e-9 * k1:
            continue
        if all(abs(root - r) > _CLUSTER_REL * k1 for r in roots):
            roots.append(root)
    if not roots:
        raise NoBoundModeError(
            "characteristic equation has no root between the host light line "
            f"and {_SCAN_HI}x the host wavevector"
        )
    if len(roots) > 1:
        raise MultipleRootsError(
            f"{len(roots)} distinct roots found; wire supports more than the "
            "single expected mode",
            candidates=tuple(roots),
        )
    return roots[0]


@dataclass(frozen=True)
class GuidedMode:
    """Solved fundamental TM mode, mode fields and bookkeeping.

    `norm` scales the raw exterior solution (unit K0 amplitude) so the
    cross-section integral of Re[eps]|e|^2 is 1.  `a_in` is the interior
    amplitude relative to that same unit exterior amplitude.
    """

    k_sp: complex
    kappa_in: complex
    kappa_out: complex
    norm: float
    v_g: float
    residual: float
    geometry: WireGeometry
    a_in: complex

    def raw_exterior(self, r: float) -> tuple[complex, complex]:
        """Unnormalized (e_r, e_z) for r >= rho, unit K0 amplitude."""
        iv0, kv0 = specfun.bessel_ik(0, self.kappa_out * r)
        iv1, kv1 = specfun.bessel_ik(1, self.kappa_out * r)
        e_z = kv0
        e_r = 1j * (self.k_sp / self.kappa_out) * kv1
        return e_r, e_z

    def raw_interior(self, r: float) -> tuple[complex, complex]:
        """Unnormalized (e_r, e_z) for r <= rho, same overall amplitude."""
        if r == 0.0:
            return 0.0j, complex(self.a_in)  # I0(0)=1, I1(0)=0
        iv0, _ = specfun.bessel_ik(0, self.kappa_in * r)
        iv1, _ = specfun.bessel_ik(1, self.kappa_in * r)
        e_z = self.a_in * iv0
        e_r = -1j * (self.k_sp / self.kappa_in) * self.a_in * iv1
        return e_r, e_z

    def profile(self, r: float) -> tuple[float, float]:
        """Real positive magnitudes (E_r, E_z) of the normalized mode."""
        if r >= self.geometry.rho:
            e_r, e_z = self.raw_exterior(r)
        else:
            e_r, e_z = self.raw_interior(r)
        return self.norm * abs(e_r), self.norm * abs(e_z)

    def field(self, r: float, z: float) -> tuple[complex, complex, complex]:
        """(e_r, e_phi, e_z) with the fixed phase convention, at (r, z)."""
        mag_r, mag_z = self.profile(r)
        ph = cmath.exp(1j * self.k_sp * z)
        return -mag_r * ph, 0.0j, 1j * mag_z * ph

    def d_ez_mag_dr(self, r: float) -> float:
        """d|E_z|/dr of the normalized mode, exterior region only."""
        if r < self.geometry.rho:
            raise ParameterError("magnitude derivative implemented outside the wire only")
        _, kv0 = specfun.bessel_ik(0, self.kappa_out * r)
        _, kv1 = specfun.bessel_ik(1, self.kappa_out * r)
        num = (self.kappa_out * kv1 * kv0.conjugate()).real
        return -self.norm * num / abs(kv0)

    def normalization_check(self) -> float:
        """Recompute the cross-section normalization integral (target 1)."""
        raw = _norm_integral(self.geometry, self.k_sp, self.kappa_in, self.kappa_out, self.a_in)
        return self.norm * self.norm * raw


def _norm_integral(
    geom: WireGeometry, k_sp: complex, kap_in: complex, kap_out: complex, a_in: complex
) -> float:
    """Cross-section integral of Re[eps]|e|^2 for the unit-amplitude solution."""
    rho = geom.rho
    eps_in_re = geom.metal.eps.real
    eps_out_re = geom.host.eps.real
    ratio_in = abs(k_sp / kap_in) ** 2
    ratio_out = abs(k_sp / kap_out) ** 2
    a2 = abs(a_in) ** 2

    def interior(r: float) -> float:
        iv0, _ = specfun.bessel_ik(0, kap_in * r)
        iv1, _ = specfun.bessel_ik(1, kap_in * r)
        dens = a2 * (abs(iv0) ** 2 + ratio_in * abs(iv1) ** 2)
        return eps_in_re * dens * 2.0 * math.pi * r

    def exterior(r: float) -> float:
        _, kv0 = specfun.bessel_ik(0, kap_out * r)
        _, kv1 = specfun.bessel_ik(1, kap_out * r)
        dens = abs(kv0) ** 2 + ratio_out * abs(kv1) ** 2
        return eps_out_re * dens * 2.0 * math.pi * r

    r_max = rho + _NORM_TAIL / kap_out.real
    w_in, _ = quad(interior, 0.0, rho, epsabs=1e-13, epsrel=1e-11, limit=200)
    w_out, _ = quad(exterior, rho, r_max, epsabs=1e-13, epsrel=1e-11, limit=200)
    return w_in + w_out


def _build_mode(geom: WireGeometry, root: complex, v_g: float) -> GuidedMode:
    k0 = geom.k0
    kap_in = _transverse(root, geom.metal.eps, k0, bound=False)
    kap_out = _transverse(root, geom.host.eps, k0, bound=True)
    _, kv0 = specfun.bessel_ik(0, kap_out * geom.rho)
    iv0, _ = specfun.bessel_ik(0, kap_in * geom.rho)
    a_in = kv0 / iv0
    raw = _norm_integral(geom, root, kap_in, kap_out, a_in)
    if not (raw > 0.0) or not math.isfinite(raw):
        raise ContractViolationError(
            f"mode normalization integral is {raw}; cannot normalize"
        )
    return GuidedMode(
        k_sp=root,
        kappa_in=kap_in,
        kappa_out=kap_out,
        norm=1.0 / math.sqrt(raw),
        v_g=v_g,
        residual=_residual(root, geom),
        geometry=geom,
        a_in=a_in,
    )


@lru_cache(maxsize=64)
def solve_dispersion(geom: WireGeometry) -> GuidedMode:
    """Solve the m=0 TM dispersion and return the normalized mode.

    Scans the bound strip (just above the host light line up to ten
    host wavevectors) for magnitude minima of the characteristic
    function and polishes each with a damped complex Newton iteration.
    Exactly one surviving root is required.
    """
    if geom.metal.n == geom.host.n:
        raise ParameterError("metal and host are identical; no guided plasmon exists")
    root = _find_root(geom)
    v_g = _group_velocity_at(geom, root, 1e-3)
    return _build_mode(geom, root, v_g)


def _group_velocity_at(geom: WireGeometry, center_root: complex, delta: float) -> float:
    c0 = CONSTANTS.c0_nm_per_fs
    omega0 = 2.0 * math.pi * c0 / geom.lambda0
    res = []
    for sgn in (+1.0, -1.0):
        omega = omega0 * (1.0 + sgn * delta)
        lam = 2.0 * math.pi * c0 / omega
        shifted = WireGeometry(geom.rho, geom.metal, geom.host, lam)
        root = _newton(shifted, center_root)
        if root is None:
            raise NoBoundModeError(
                f"dispersion solve failed at the frequency offset {sgn * delta:+g}"
            )
        res.append((omega, root.real))
    (om_p, k_p), (om_m, k_m) = res
    return (om_p - om_m) / (k_p - k_m)


def group_velocity(geom: WireGeometry, delta: float = 1e-3) -> float:
    """Group velocity [nm/fs] by symmetric frequency difference, eps frozen."""
    mode = solve_dispersion(geom)
    if delta == 1e-3:
        return mode.v_g
    return _group_velocity_at(geom, mode.k_sp, delta)


def _rate_prefactor(geom: WireGeometry, mode: GuidedMode) -> float:
    # per-photon factor with vacuum permittivity 1; bulk normalization folded in
    n_host = geom.host.n.real
    k0 = geom.k0
    return 3.0 * math.pi * CONSTANTS.c0_nm_per_fs / (n_host * k0 * k0 * mode.v_g)


AXIAL = "axial"
RADIAL = "radial"


def _check_mode_normalized(mode: GuidedMode) -> None:
    if not (mode.norm > 0.0 and math.isfinite(mode.norm)):
        raise ContractViolationError(f"mode carries invalid normalization {mode.norm}")


def plasmon_rates(
    geom: WireGeometry, d: float, moments: EmitterMoments, orientation: str
) -> RateLadder:
    """Plasmon-channel rate ladder at distance d from the wire surface.

    Axial dipole: gamma0 = C E_z^2, gamma1 = -2 C (L/mu) Re(k_sp) E_r E_z,
    gamma2 = C (L/mu)^2 |k_sp|^2 E_r^2.  Radial dipole: gamma0 = C E_r^2,
    gamma1 = 0 identically (the +-k_sp pair cancels), gamma2 from the
    magnitude gradient of E_z.  All normalized to the bulk-host rate.
    """
    if not (d > 0.0):
        raise ParameterError(f"emitter-surface distance must be positive, got {d}")
    if orientation not in (AXIAL, RADIAL):
        raise ParameterError(f"orientation must be '{AXIAL}' or '{RADIAL}', got {orientation!r}")
    mode = solve_dispersion(geom)
    _check_mode_normalized(mode)
    pref = _rate_prefactor(geom, mode)
    r0 = geom.rho + d
    e_r, e_z = mode.profile(r0)
    lam = moments.effective_lambda_over_mu
    if orientation == AXIAL:
        gamma0 = pref * e_z * e_z
        gamma1 = -2.0 * pref * lam * mode.k_sp.real * e_r * e_z
        gamma2 = pref * lam * lam * abs(mode.k_sp) ** 2 * e_r * e_r
    else:
        dez = mode.d_ez_mag_dr(r0)
        gamma0 = pref * e_r * e_r
        gamma1 = 0.0
        gamma2 = pref * lam * lam * dez * dez
    return RateLadder(gamma0=gamma0, gamma1=gamma1, gamma2=gamma2)


def plasmon_bundle(geom: WireGeometry, d: float, orientation: str) -> GreenBundle:
    """Plasmon channel repackaged as a GreenBundle (general-path route).

    Feeding this to the generic ladder/split code must reproduce
    plasmon_rates; the first-order entry comes from the complex field
    products Re{conj(d_z e_r) e_z} rather than the reduced magnitude
    form.  The bundle is scaled so that dividing by the homogeneous
    host Im G_xx gives normalized rates directly.
    """
    if not (d > 0.0):
        raise ParameterError(f"emitter-surface distance must be positive, got {d}")
    if orientation not in (AXIAL, RADIAL):
        raise ParameterError(f"orientation must be '{AXIAL}' or '{RADIAL}', got {orientation!r}")
    mode = solve_dispersion(geom)
    _check_mode_normalized(mode)
    pref = _rate_prefactor(geom, mode)
    norm = homogeneous_im_gxx(geom.host, geom.lambda0)
    r0 = geom.rho + d
    e_r, e_z = mode.profile(r0)
    if orientation == AXIAL:
        # complex fields (-E_r, 0, i E_z) e^{i k z}: conj(d_z e_r) e_z at z=0
        cross = (1j * mode.k_sp * (-e_r)).conjugate() * (1j * e_z)
        s_r = cross.real  # equals -Re(k_sp) E_r E_z
        s_z = mode.d_ez_mag_dr(r0) * e_z
        return GreenBundle(
            g_xx=norm * pref * e_z * e_z,
            d_g_zx=norm * pref * s_r,
            dd_g_zz=norm * pref * abs(mode.k_sp) ** 2 * e_r * e_r,
            b_yx=norm * pref * (s_r - s_z),
            q_xz=norm * pref * (s_r + s_z),
            grad_zx_complex=1j * norm * pref * s_r,
            grad_xx_z_complex=1j * norm * pref * s_z,
        )
    dez = mode.d_ez_mag_dr(r0)
    return GreenBundle(
        g_xx=norm * pref * e_r * e_r,
        d_g_zx=0.0,
        dd_g_zz=norm * pref * dez * dez,
        b_yx=0.0,
        q_xz=0.0,
        grad_zx_complex=0.0j,
        grad_xx_z_complex=0.0j,
    )


_QS_SERIES_TOL = 1e-10
_QS_STALL_TOL = 1e-6


def quasistatic_background(
    geom: WireGeometry,
    d: float,
    orientation: str,
    m_max: int = 30,
    rel_tol: float = 1e-8,
    series_tol: float = _QS_SERIES_TOL,
) -> float:
    """Radiative-plus-lossy floor for a point dipole next to the wire.

    Electrostatic cylinder response, azimuthal harmonics m = 0..m_max.
    The radiative part is approximated by the homogeneous host rate, so
    the return value is 1 + Gamma_LS (normalized).  Lossless metal gives
    exactly 1.
    """
    if not (d > 0.0):
        raise ParameterError(f"emitter-surface distance must be positive, got {d}")
    if orientation not in (AXIAL, RADIAL):
        raise ParameterError(f"orientation must be '{AXIAL}' or '{RADIAL}', got {orientation!r}")
    if m_max < 2:
        raise ParameterError(f"m_max of {m_max} cannot establish series convergence")
    eps1 = geom.host.eps
    eps2 = geom.metal.eps
    if eps2.imag == 0.0:
        return 1.0  # no absorption: the lossy channel is identically zero
    rho = geom.rho
    r0 = rho + d
    k1 = geom.k_host
    radial = orientation == RADIAL

    beta_flat = (eps2 - eps1) / (eps1 + eps2)

    def switch_x(m: int) -> float:
        # below this the I,K factors of order m leave double range even
        # scaled; the product itself stays moderate, so the exact
        # small-argument limit of the m-th integrand takes over there
        # (that region carries a negligible share of the term)
        if m < 60:
            return 0.0
        x = 0.0
        for _ in range(3):
            x = 2.0 * math.exp((math.lgamma(m + 1) - 620.0 + x) / m)
        return x

    def integrand(k: float, m: int, x_switch: float) -> float:
        x = k * rho
        y = k * r0
        if m >= 1 and x < x_switch:
            lim = -beta_flat.imag * (rho / r0) ** (2 * m) / (2.0 * m)
            if radial:
                return m * m / (r0 * r0) * lim
            return k * k * lim
        im0, km0 = specfun.bessel_ik_scaled(m, x)
        iml, kml = specfun.bessel_ik_scaled(abs(m - 1), x)
        imu, kmu = specfun.bessel_ik_scaled(m + 1, x)
        ivp = 0.5 * (iml + imu)
        kvp = -0.5 * (kml + kmu)
        if radial:
            _, wl = specfun.bessel_ik_scaled(abs(m - 1), y)
            _, wu = specfun.bessel_ik_scaled(m + 1, y)
            w = -0.5 * (wl + wu)
        else:
            _, w = specfun.bessel_ik_scaled(m, y)
        denom = eps1 * im0 * kvp - eps2 * ivp * km0
        damp = math.exp(x - y)  # = exp(-k d); applied per bracket, squared overall
        br1 = im0 * w * damp
        br2 = ivp * w * damp
        ratio = (eps2 - eps1) * br1 * br2 / denom
        return k * k * ratio.imag

    pref = -3.0 / (math.pi * k1**3)
    total = 0.0
    terms: list[float] = []
    converged = False
    for m in range(m_max + 1):
        weight = 1.0 if m == 0 else 2.0
        # support of the m-th term: exp(-2kd) tail plus the bracket
        # transition at k ~ m/rho
        k_up = 30.0 / d + 2.0 * m / rho
        val, err = quad(
            integrand, 0.0, k_up, args=(m, switch_x(m)), epsabs=1e-300, epsrel=rel_tol, limit=400
        )
        term = pref * weight * val
        total += term
        terms.append(term)
        if m >= 2:
            scale = abs(total) + 1e-300
            if abs(terms[-1]) < series_tol * scale and abs(terms[-2]) < series_tol * scale:
                converged = True
                break
    if not converged:
        scale = abs(total) + 1e-300
        if abs(terms[-1]) > max(_QS_STALL_TOL, series_tol) * scale:
            partial = [sum(terms[: i + 1]) for i in range(len(terms))]
            raise ConvergenceError(
                f"azimuthal harmonic sum still moving at m_max={m_max}; "
                f"last partial sums {partial[-4:]}"
            )
    return 1.0 + total


@dataclass(frozen=True)
class FieldWindow:
    """Rectangular (r, z) sampling window for field maps."""

    r_min: float
    r_max: float
    z_min: float
    z_max: float
    n_r: int = 81
    n_z: int = 161

    def __post_init__(self):
        if self.r_min < 0.0 or self.r_max <= self.r_min:
            raise ParameterError("field window needs 0 <= r_min < r_max")
        if self.z_max <= self.z_min:
            raise ParameterError("field window needs z_min < z_max")
        if self.n_r < 2 or self.n_z < 2:
            raise ParameterError("field window needs at least 2 samples per axis")


@dataclass(frozen=True)
class FieldMap:
    """Complex guided-mode field sampled on a rectangular grid.

    e_r and e_z have shape (n_r, n_z).  These are the coherent complex
    fields (boundary conditions hold across the wire surface); take
    .real for a plot of the instantaneous field.
    """

    r: np.ndarray
    z: np.ndarray
    e_r: np.ndarray
    e_z: np.ndarray


def field_map(geom: WireGeometry, moments: EmitterMoments, window: FieldWindow) -> FieldMap:
    """Sample the normalized complex mode field over an (r, z) window.

    The map depends on the geometry alone; `moments` is accepted for
    interface symmetry with the rate evaluators and is not used.
    """
    mode = solve_dispersion(geom)
    r_vals = np.linspace(window.r_min, window.r_max, window.n_r)
    z_vals = np.linspace(window.z_min, window.z_max, window.n_z)
    prof_r = np.empty(window.n_r, dtype=complex)
    prof_z = np.empty(window.n_r, dtype=complex)
    for i, r in enumerate(r_vals):
        if r >= geom.rho:
            e_r, e_z = mode.raw_exterior(float(r))
        else:
            e_r, e_z = mode.raw_interior(float(r))
        prof_r[i] = mode.norm * e_r
        prof_z[i] = mode.norm * e_z
    phase = np.exp(1j * mode.k_sp * z_vals)
    return FieldMap(
        r=r_vals,
        z=z_vals,
        e_r=prof_r[:, None] * phase[None, :],
        e_z=prof_z[:, None] * phase[None, :],
    )


def paper_wire(lambda0: float = 1000.0, rho: float = 30.0) -> WireGeometry:
    from .core import GAAS, SILVER

    return WireGeometry(rho=rho, metal=SILVER, host=GAAS, lambda0=lambda0)
