"""Rate ladder assembly and the first-order multipole split.

Consumes a field bundle from either geometry module; nothing here knows
where the bundle came from. All outputs are normalized to the
homogeneous-host dipole rate, passed in as `norm`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import EmitterMoments
from .errors import ContractViolationError, ExpansionInvalidError, ParameterError


def expansion_error(k: float, l_qd: float) -> ExpansionInvalidError:
    return ExpansionInvalidError(
        f"k*L_qd = {k * l_qd:.3f} >= 1: the moment expansion does not converge"
    )


@dataclass(frozen=True)
class RateLadder:
    """Normalized decay-rate contributions by expansion order."""

    gamma0: float
    gamma1: float
    gamma2: float

    def __post_init__(self):
        if self.gamma0 < 0.0:
            raise ContractViolationError(
                f"gamma0 = {self.gamma0:.6g} < 0: the bundle does not describe a physical LDOS"
            )
        if self.total < 0.0:
            raise ExpansionInvalidError(
                f"total rate {self.total:.6g} < 0: the truncated expansion left its "
                "validity domain for these moments"
            )

    @property
    def total(self) -> float:
        return self.gamma0 + self.gamma1 + self.gamma2


@dataclass(frozen=True)
class MultipoleSplit:
    """Magnetic-dipole and electric-quadrupole parts of the order-1 rate.

    The two moments carry half the first moment each; their rate
    contributions add exactly to gamma1.
    """

    gamma1_md: float
    gamma1_eq: float
    m_over_mu: float
    q_over_mu: float

    @property
    def gamma1(self) -> float:
        return self.gamma1_md + self.gamma1_eq


def rate_ladder(bundle, moments: EmitterMoments, norm: float,
                k_ambient: float | None = None) -> RateLadder:
    """Assemble the three-rung rate ladder from a field bundle.

    gamma0 = g_xx/norm, gamma1 = 2*(ratio)*d_g_zx/norm,
    gamma2 = (ratio)**2*dd_g_zz/norm with the signed effective ratio of
    the moments. Pass the ambient wavevector to enforce the expansion
    validity bound k*L_qd < 1.
    """
    if not (math.isfinite(norm) and norm > 0.0):
        raise ParameterError(f"norm must be positive, got {norm}")
    if k_ambient is not None and k_ambient * moments.l_qd >= 1.0:
        raise expansion_error(k_ambient, moments.l_qd)
    lam = moments.effective_lambda_over_mu
    return RateLadder(
        gamma0=bundle.g_xx / norm,
        gamma1=2.0 * lam * bundle.d_g_zx / norm,
        gamma2=lam * lam * bundle.dd_g_zz / norm,
    )


def md_eq_split(bundle, moments: EmitterMoments, norm: float) -> MultipoleSplit:
    """Split gamma1 into its magnetic-dipole and quadrupole parts.

    Checks the bundle for internal consistency first: the two gradient
    combinations must reassemble the plain lateral gradient, on the
    complex values and on the stored imaginary parts.
    """
    if not (math.isfinite(norm) and norm > 0.0):
        raise ParameterError(f"norm must be positive, got {norm}")
    czx = bundle.grad_zx_complex
    cz = bundle.grad_xx_z_complex
    scale = max(abs(czx), abs(cz), abs(bundle.d_g_zx), norm * 1.0e-12)
    if abs((czx - cz) + (czx + cz) - 2.0 * czx) > 1.0e-10 * scale:
        raise ContractViolationError("bundle gradient combinations are inconsistent (complex)")
    if abs(bundle.b_yx + bundle.q_xz - 2.0 * bundle.d_g_zx) > 1.0e-10 * scale:
        raise ContractViolationError(
            "bundle gradient combinations do not reassemble d_g_zx"
        )
    lam = moments.effective_lambda_over_mu
    return MultipoleSplit(
        gamma1_md=lam * bundle.b_yx / norm,
        gamma1_eq=lam * bundle.q_xz / norm,
        m_over_mu=0.5 * lam,
        q_over_mu=0.5 * lam,
    )


def extract_fields(total_direct: float, total_inverted: float) -> tuple:
    """Recover (ldos_term, gradient_term) from the two mounting totals.

    The half-sum returns gamma0 + gamma2, the half-difference gamma1 of
    the direct mounting; flipping the emitter flips only gamma1.
    """
    ldos_term = 0.5 * (total_direct + total_inverted)
    gradient_term = 0.5 * (total_direct - total_inverted)
    return ldos_term, gradient_term
