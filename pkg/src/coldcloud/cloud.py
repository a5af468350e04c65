"""Freely falling cold-atom cloud.

The cloud is released at t = 0 with an isotropic Gaussian phase-space
distribution (radius sigma_r, thermal velocity sigma_v) and then evolves
ballistically: it expands while falling under gravity, which points along
-z.  The density stays Gaussian at all times, which is what makes every
closed form in the rest of the package possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.constants import k as _BOLTZMANN

from .beam import BeamParams, beam_size

__all__ = [
    "CloudParams",
    "TimeScales",
    "time_scales",
    "phase_space_density",
    "density",
    "center_density",
]


@dataclass(frozen=True)
class CloudParams:
    """Initial cloud: atom number, size, thermal velocity, gravity.

    Attributes
    ----------
    n_total : float
        Total number of atoms in the cloud (may be non-integer; it is the
        mean of the release-to-release Poisson statistics).
    sigma_r : float
        RMS radius of the initial cloud per axis, m.
    sigma_v : float
        RMS thermal velocity per axis, m/s.
    g : float
        Gravity magnitude, m/s^2.  The direction is fixed to -z.
    """

    n_total: float
    sigma_r: float
    sigma_v: float
    g: float = 0.0

    def __post_init__(self) -> None:
        if self.n_total < 0:
            raise ValueError(f"n_total must be nonnegative, got {self.n_total}")
        if not self.sigma_r > 0:
            raise ValueError(f"sigma_r must be positive, got {self.sigma_r}")
        if not self.sigma_v > 0:
            raise ValueError(
                f"sigma_v must be positive, got {self.sigma_v} (a frozen cloud is degenerate)"
            )
        if self.g < 0:
            raise ValueError(f"g is a magnitude and must be nonnegative, got {self.g}")

    @classmethod
    def from_temperature(
        cls,
        n_total: float,
        sigma_r: float,
        temperature: float,
        mass: float,
        g: float = 0.0,
    ) -> "CloudParams":
        """Build the cloud from trap temperature (K) and atomic mass (kg).

        Uses the equipartition relation sigma_v = sqrt(k_B*T/m).
        """
        if not temperature > 0:
            raise ValueError(f"temperature must be positive, got {temperature}")
        if not mass > 0:
            raise ValueError(f"mass must be positive, got {mass}")
        return cls(n_total, sigma_r, math.sqrt(_BOLTZMANN * temperature / mass), g)

    @property
    def has_gravity(self) -> bool:
        return self.g > 0


@dataclass(frozen=True)
class TimeScales:
    """The three characteristic times of the problem.

    tau_r : expansion time, sigma_r/sigma_v; the cloud radius grows
        noticeably past its initial value after tau_r.
    tau_g : fall time, 2*sqrt(2)*sigma_v/g; gravity dominates the on-axis
        density decay past tau_g.  ``math.inf`` when g = 0, so gravity
        exponents evaluate to exactly zero downstream.
    tau_w_at : transit time through the probe beam at position x,
        w(x)/(2*sigma_v), as a callable of x.
    """

    tau_r: float
    tau_g: float
    tau_w_at: Callable[[float], float]

    @property
    def tau_w(self) -> float:
        """Transit time at the waist, tau_w_at(0)."""
        return self.tau_w_at(0.0)


def time_scales(c: CloudParams, b: BeamParams) -> TimeScales:
    """Derive the expansion, fall and beam-transit time scales."""
    tau_r = c.sigma_r / c.sigma_v
    tau_g = 2.0 * math.sqrt(2.0) * c.sigma_v / c.g if c.has_gravity else math.inf
    sigma_v = c.sigma_v

    def tau_w_at(x: float) -> float:
        return beam_size(b, x) / (2.0 * sigma_v)

    return TimeScales(tau_r=tau_r, tau_g=tau_g, tau_w_at=tau_w_at)


def _check_time(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative (t = 0 is the release instant)")
    return t


def phase_space_density(c: CloudParams, r, v, t: float):
    """Phase-space density at position r, velocity v and scalar time t.

    Ballistic free fall preserves phase-space volume, so the density at
    time t is the initial Gaussian evaluated at the pre-image point
    (r - v*t + g*t^2/2, v - g*t) with the gravity vector (0, 0, -g).
    Units: atoms / (m^3 (m/s)^3).
    """
    t = float(t)
    if t < 0:
        raise ValueError("t must be nonnegative (t = 0 is the release instant)")
    r = np.asarray(r, dtype=float)
    v = np.asarray(v, dtype=float)

    r0 = r - v * t
    v0 = np.array(v, dtype=float, copy=True)
    # only the z components pick up gravity terms (gravity vector is (0, 0, -g))
    r0[..., 2] -= 0.5 * c.g * t**2
    v0[..., 2] += c.g * t

    peak = c.n_total / (2.0 * math.pi * c.sigma_r * c.sigma_v) ** 3
    arg = (
        np.sum(r0**2, axis=-1) / (2.0 * c.sigma_r**2)
        + np.sum(v0**2, axis=-1) / (2.0 * c.sigma_v**2)
    )
    out = peak * np.exp(-arg)
    return out if out.ndim else float(out)


def density(c: CloudParams, r, t):
    """Atomic density (atoms/m^3) at position r and time t.

    Gaussian of width sqrt(sigma_r^2 + sigma_v^2 t^2) per axis centered on
    the falling point (0, 0, -g t^2/2).
    """
    t = _check_time(t)
    r = np.asarray(r, dtype=float)
    var = c.sigma_r**2 + (c.sigma_v * t) ** 2
    dz = r[..., 2] + 0.5 * c.g * t**2
    dist2 = r[..., 0] ** 2 + r[..., 1] ** 2 + dz**2
    out = c.n_total / (2.0 * math.pi * var) ** 1.5 * np.exp(-dist2 / (2.0 * var))
    return out if out.ndim else float(out)


def center_density(c: CloudParams, t):
    """Density at the release point r = 0 as a function of time.

    Decays as [tau_r^2/(tau_r^2+t^2)]^(3/2) from the ballistic expansion,
    times a gravity factor exp[-t^4/(tau_g^2 (tau_r^2+t^2))] because the
    cloud center drops away from the origin.
    """
    t = _check_time(t)
    tau_r = c.sigma_r / c.sigma_v
    peak = c.n_total / (2.0 * math.pi * c.sigma_r**2) ** 1.5
    lorentz = (tau_r**2 / (tau_r**2 + t**2)) ** 1.5
    if c.has_gravity:
        tau_g = 2.0 * math.sqrt(2.0) * c.sigma_v / c.g
        fall = np.exp(-(t**4) / (tau_g**2 * (tau_r**2 + t**2)))
    else:
        fall = 1.0
    out = peak * lorentz * fall
    return out if out.ndim else float(out)
