"""Complex-argument Bessel functions.

Thin guard layer over scipy.special (AMOS backend). The guards turn
silent overflow into explicit errors and pin the branch conventions the
rest of the package relies on. Scalar inputs return python complex;
numpy arrays pass through elementwise.
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sp

from .errors import OutOfDomainError, ParameterError

# exp argument beyond which J/I magnitudes leave double range
_OVERFLOW_ARG = 690.0


def _check_order(order, allowed=None):
    if not isinstance(order, (int, np.integer)):
        raise ParameterError(f"order must be an integer, got {order!r}")
    if allowed is not None and order not in allowed:
        raise ParameterError(f"order must be one of {sorted(allowed)}, got {order}")
    if order < 0:
        raise ParameterError(f"order must be non-negative, got {order}")
    return int(order)


def _finish(values, where: str):
    out = np.asarray(values)
    if not np.all(np.isfinite(out)):
        raise OutOfDomainError(f"{where}: result overflowed or is undefined")
    if out.shape == ():
        return complex(out)
    return out


def bessel_j(order: int, z) -> complex:
    """Bessel J of order 0 or 1 for complex argument.

    |Im z| must stay below the overflow bound ~690; beyond it the
    function grows like exp|Im z| and leaves double range.
    """
    order = _check_order(order, allowed={0, 1})
    zc = np.asarray(z, dtype=complex)
    if np.any(np.abs(zc.imag) > _OVERFLOW_ARG):
        raise OutOfDomainError(f"bessel_j: |Im z| > {_OVERFLOW_ARG} overflows")
    return _finish(_sp.jv(order, zc), "bessel_j")


def hankel1(order: int, z) -> complex:
    """Outgoing Hankel function of order 0 or 1, complex argument.

    Decays in the upper half plane; for Im z < -overflow bound it
    overflows and an error is raised instead.
    """
    order = _check_order(order, allowed={0, 1})
    zc = np.asarray(z, dtype=complex)
    if np.any(zc.imag < -_OVERFLOW_ARG):
        raise OutOfDomainError(f"hankel1: Im z < -{_OVERFLOW_ARG} overflows")
    if np.any(zc == 0):
        raise OutOfDomainError("hankel1: singular at z = 0")
    return _finish(_sp.hankel1(order, zc), "hankel1")


def bessel_ik(order: int, z) -> tuple:
    """Modified Bessel pair (I_order, K_order) on the principal branch.

    Requires Re z > 0; the branch cut of K runs along the negative real
    axis. Arguments with Re z beyond ~690 overflow I and raise.
    """
    order = _check_order(order)
    zc = np.asarray(z, dtype=complex)
    if np.any(zc.real <= 0.0):
        raise OutOfDomainError("bessel_ik: principal branch requires Re z > 0")
    if np.any(zc.real > _OVERFLOW_ARG):
        raise OutOfDomainError(f"bessel_ik: Re z > {_OVERFLOW_ARG} overflows I")
    i_val = _finish(_sp.iv(order, zc), "bessel_ik (I)")
    k_val = _finish(_sp.kv(order, zc), "bessel_ik (K)")
    return i_val, k_val


def bessel_ik_scaled(order: int, z) -> tuple:
    """Scaled modified Bessel pair: (I*exp(-|Re z|), K*exp(+z)).

    Same domain as bessel_ik but safe for large Re z, where the raw
    pair would over/underflow. The two scalings compose so that
    products like I_m(a) K_m(b) carry the explicit factor
    exp(|Re a| - b).
    """
    order = _check_order(order)
    zc = np.asarray(z, dtype=complex)
    if np.any(zc.real <= 0.0):
        raise OutOfDomainError("bessel_ik_scaled: principal branch requires Re z > 0")
    i_val = _finish(_sp.ive(order, zc), "bessel_ik_scaled (I)")
    k_val = _finish(_sp.kve(order, zc), "bessel_ik_scaled (K)")
    return i_val, k_val
