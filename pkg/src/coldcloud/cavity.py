"""Cavity observables driven by the effective atom number.

With the cloud inside an optical cavity, the atoms' dispersive phase shift
moves the cavity resonance.  The cooperativity converts the weighted atom
number into a coupling strength, the detuning shift is its dispersive-limit
readout, and the atom-number noise spectrum maps directly onto a
cavity-detuning noise spectrum.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .beam import BeamParams
from .cloud import time_scales
from .effnum import EffNumInputs
from .fluct import mean_number, normalized_spectrum, scaled_fluct_params
from .optical import OpticalParams

__all__ = [
    "CavityParams",
    "cooperativity",
    "detuning_shift",
    "detuning_spectrum",
    "is_linear_regime",
]

# |delta| below this triggers a dispersive-regime warning; the formulas stay
# evaluable since the limit is a regime statement, not a domain constraint
_DISPERSIVE_DELTA = 3.0

# relative slack for the internal consistency check between the two
# algebraically identical assemblies of the detuning spectrum
_IDENTITY_RTOL = 1e-9


@dataclass(frozen=True)
class CavityParams:
    """Cavity field decay rate and round-trip time.

    2*kappa*tau_c is the intensity transmission of the coupling mirror and
    must lie in (0, 1].
    """

    kappa: float
    tau_c: float

    def __post_init__(self) -> None:
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if not self.tau_c > 0:
            raise ValueError(f"tau_c must be positive, got {self.tau_c}")
        transmission = 2.0 * self.kappa * self.tau_c
        if not 0.0 < transmission <= 1.0:
            raise ValueError(
                f"2*kappa*tau_c = {transmission:g} is not a mirror transmission in (0, 1]"
            )


def _coupling_per_atom(b: BeamParams) -> float:
    """Geometric single-pass coupling 3*lambda^2/(4*pi*S) at the waist."""
    section = 0.5 * math.pi * b.w0**2
    return 3.0 * b.wavelength**2 / (4.0 * math.pi * section)


def cooperativity(cav: CavityParams, b: BeamParams, n: float) -> float:
    """Cooperativity C = (3*lambda^2/(4*pi*S)) * n / (2*kappa*tau_c).

    Linear in the effective atom number n; the waist section S enters
    because the coupling concentrates on the beam area.
    """
    if n < 0:
        raise ValueError(f"atom number must be nonnegative, got {n}")
    return _coupling_per_atom(b) * n / (2.0 * cav.kappa * cav.tau_c)


def _check_dispersive(opt: OpticalParams) -> None:
    if opt.delta == 0:
        raise ValueError("detuning shift is undefined at delta = 0 (dispersive formula)")
    if abs(opt.delta) < _DISPERSIVE_DELTA:
        warnings.warn(
            f"|delta| = {abs(opt.delta):g} is small for the dispersive regime; "
            "the detuning formulas assume delta^2 >> 1",
            stacklevel=3,
        )


def detuning_shift(cav: CavityParams, b: BeamParams, opt: OpticalParams, n: float) -> float:
    """Cavity detuning shift 2*kappa*C/delta induced by n effective atoms.

    Equivalently (3*lambda^2/(4*pi*S)) * n / (delta*tau_c); flips sign with
    the detuning.  Units rad/s.
    """
    _check_dispersive(opt)
    if n < 0:
        raise ValueError(f"atom number must be nonnegative, got {n}")
    return 2.0 * cav.kappa * cooperativity(cav, b, n) / opt.delta


def detuning_spectrum(
    cav: CavityParams,
    b: BeamParams,
    opt: OpticalParams,
    inp: EffNumInputs,
    T: float,
    omega,
    kmax: int | None = None,
):
    """Noise spectrum of the cavity detuning at fall time T (rad/s).

    Assembled as (3*lambda^2/(4*pi*S))^2 * S_NN(T, omega)/(delta*tau_c)^2
    with the number spectrum built from the variance at T and the
    normalized spectral shape.  The equivalent cooperativity form
    kappa*(C(T)/delta^2)*(3*lambda^2/(4*pi*S))*normalized/tau_c is computed
    alongside and must agree to rounding; a disagreement means an internal
    inconsistency and raises.
    """
    _check_dispersive(opt)
    ts = time_scales(inp.cloud, inp.beam)
    coupling = _coupling_per_atom(b)
    p = scaled_fluct_params(inp)
    shape = np.asarray(normalized_spectrum(p, ts.tau_w, T, omega, kmax))
    n_mean = mean_number(inp, T)

    s_nn = 0.5 * n_mean * shape
    direct = coupling**2 * s_nn / (opt.delta * cav.tau_c) ** 2

    c_of_t = cooperativity(cav, b, n_mean)
    via_cooperativity = (
        cav.kappa * c_of_t / opt.delta**2 * coupling * shape / cav.tau_c
    )
    if not np.allclose(direct, via_cooperativity, rtol=_IDENTITY_RTOL, atol=0.0):
        raise RuntimeError(
            "detuning spectrum assemblies disagree; cooperativity and "
            "spectrum normalizations are inconsistent"
        )
    return direct if np.ndim(omega) else float(np.atleast_1d(direct)[0])


def is_linear_regime(
    cav: CavityParams,
    b: BeamParams,
    opt: OpticalParams,
    inp: EffNumInputs,
    T: float,
) -> bool:
    """Whether the detuning noise stays below the cavity rate kappa.

    The spectrum is even in omega and peaks at zero frequency, so the
    comparison max_omega S_phiphi < kappa reduces to the zero-frequency
    value.  True means detuning fluctuations act linearly on the cavity.
    """
    peak = detuning_spectrum(cav, b, opt, inp, T, 0.0)
    return bool(peak < cav.kappa)
