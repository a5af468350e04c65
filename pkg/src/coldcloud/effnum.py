"""Effective atom number per beam section, sigma(t).

sigma(t) is the column of atoms seen by the probe, weighted transversally
by the beam profile and normalized by the local beam section.  It is what
a phase-shift measurement of the probe actually counts.  Besides the
general quadrature there are three closed forms, valid when the waist is
small against the cloud, when the Rayleigh length is long against the
cloud, and when the transit, expansion and fall times are well ordered.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .beam import BeamParams, beam_section, beam_size
from .cloud import CloudParams, time_scales
from .exceptions import QuadratureError
from .optical import OpticalParams

__all__ = [
    "EffNumInputs",
    "column_number_density",
    "layer_number_density",
    "sigma_general",
    "sigma_small_waist",
    "sigma_long_rayleigh",
    "sigma_high_temperature",
    "linear_field_shift",
]

# longitudinal truncation for the sigma quadrature, in units of the
# instantaneous cloud spread; the Gaussian tail beyond 10 spreads is < 1e-21
_X_TRUNCATION = 10.0


@dataclass(frozen=True)
class EffNumInputs:
    """Cloud and beam bundle used by every sigma variant."""

    cloud: CloudParams
    beam: BeamParams


def _check_scalar_time(t) -> float:
    t = float(t)
    if t < 0:
        raise ValueError("t must be nonnegative (t = 0 is the release instant)")
    return t


def _spread_sq(c: CloudParams, t) -> np.ndarray:
    """Instantaneous squared cloud spread per axis, sigma_r^2 + sigma_v^2 t^2."""
    return c.sigma_r**2 + (c.sigma_v * np.asarray(t, dtype=float)) ** 2


def column_number_density(inp: EffNumInputs, x, t):
    """Atoms per unit length of the whole cloud in the slab at x (atoms/m).

    Gaussian in x with the instantaneous cloud spread; integrates to the
    total atom number at every time.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    x = np.asarray(x, dtype=float)
    c = inp.cloud
    var = _spread_sq(c, t)
    out = c.n_total / np.sqrt(2.0 * math.pi * var) * np.exp(-(x**2) / (2.0 * var))
    return out if out.ndim else float(out)


def _layer_density_weighted(inp: EffNumInputs, x, t, weight_power: float = 1.0):
    """Atoms per unit length seen with weight f^j in the slab at x.

    Raising the Gaussian weight to the power j shrinks the squared beam
    size by j, so the transverse overlap integral keeps one shared form:
    column density times (w^2/j) / (4*spread^2 + w^2/j), with a fall factor
    from the cloud center dropping out of the beam.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    x = np.asarray(x, dtype=float)
    c = inp.cloud
    w2 = np.asarray(beam_size(inp.beam, x)) ** 2 / weight_power
    denom = 4.0 * _spread_sq(c, t) + w2
    overlap = w2 / denom
    if c.has_gravity:
        fall = np.exp(-0.5 * c.g**2 * t**4 / denom)
    else:
        fall = 1.0
    out = column_number_density(inp, x, t) * overlap * fall
    return out if out.ndim else float(out)


def layer_number_density(inp: EffNumInputs, x, t):
    """Atoms per unit length inside the detection beam at x (atoms/m).

    The transverse weight makes this at most the full column density,
    reaching it only in the wide-beam limit.
    """
    return _layer_density_weighted(inp, x, t, 1.0)


def sigma_general(inp: EffNumInputs, t, *, rel_tol: float = 1e-9) -> float:
    """sigma(t) by adaptive quadrature of layer density / beam section.

    Valid for any waist-to-cloud and cloud-to-Rayleigh ratio.  Raises
    QuadratureError if the requested relative tolerance is not reached.
    """
    t = _check_scalar_time(t)
    half_width = _X_TRUNCATION * math.sqrt(_spread_sq(inp.cloud, t))
    beam = inp.beam

    def integrand(x: float) -> float:
        return _layer_density_weighted(inp, x, t) / beam_section(beam, x)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        value, abserr, info, *tail = quad(
            integrand, -half_width, half_width,
            epsabs=0.0, epsrel=rel_tol, limit=200, full_output=1,
        )
    achieved = abserr / abs(value) if value != 0 else math.inf
    if tail or achieved > 10.0 * rel_tol:
        raise QuadratureError(
            f"sigma quadrature did not converge to rel_tol={rel_tol:g} at t={t:g}",
            achieved,
        )
    return value


def sigma_small_waist(inp: EffNumInputs, t):
    """Closed form for a waist much smaller than the cloud radius.

    sigma(t) = N / (2*pi*sigma_v^2*(tau_r^2+t^2)) times the gravity factor
    exp[-t^4/(tau_g^2*(tau_r^2+t^2))].  The beam size drops out entirely.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    c = inp.cloud
    ts = time_scales(c, inp.beam)
    denom = ts.tau_r**2 + t**2
    out = c.n_total / (2.0 * math.pi * c.sigma_v**2 * denom)
    if c.has_gravity:
        out = out * np.exp(-(t**4) / (ts.tau_g**2 * denom))
    return out if np.ndim(out) else float(out)


def sigma_long_rayleigh(inp: EffNumInputs, t):
    """Closed form for a Rayleigh length much longer than the cloud.

    Same shape as the small-waist form with tau_r^2 promoted to
    tau_r^2 + tau_w^2: a wide beam smooths the decay over the transit
    time through the waist.  Reduces to the small-waist form as
    tau_w -> 0.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    c = inp.cloud
    ts = time_scales(c, inp.beam)
    denom = ts.tau_r**2 + ts.tau_w**2 + t**2
    out = c.n_total / (2.0 * math.pi * c.sigma_v**2 * denom)
    if c.has_gravity:
        out = out * np.exp(-(t**4) / (ts.tau_g**2 * denom))
    return out if np.ndim(out) else float(out)


def sigma_high_temperature(inp: EffNumInputs, t):
    """Single formula for the ordering tau_w << tau_r << tau_g.

    Lorentzian ballistic decay times a plain Gaussian fall factor
    exp(-t^2/tau_g^2); coincides with the small-waist form when g = 0 and
    approximates it to first order in tau_r^2/tau_g^2 otherwise.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    c = inp.cloud
    ts = time_scales(c, inp.beam)
    out = c.n_total / (2.0 * math.pi * c.sigma_v**2 * (ts.tau_r**2 + t**2))
    if c.has_gravity:
        out = out * np.exp(-(t**2) / ts.tau_g**2)
    return out if np.ndim(out) else float(out)


def linear_field_shift(inp: EffNumInputs, opt: OpticalParams, t) -> complex:
    """Fractional field change dA/A from the linear atomic response.

    Returns -(3*lambda^2/(4*pi)) * sigma(t) / (1 + i*delta), computed from
    the general sigma quadrature.  The imaginary part is the phase shift;
    twice the real part is the fractional intensity change, reproducing the
    resonant cross section 3*lambda^2/(2*pi) divided by 1+delta^2.
    """
    sigma = sigma_general(inp, t)
    lam = inp.beam.wavelength
    return -(3.0 * lam**2 / (4.0 * math.pi)) * sigma / (1.0 + 1j * opt.delta)
