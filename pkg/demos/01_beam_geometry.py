"""Probe-beam geometry: how the waist sets what "inside the beam" means.

The transverse Gaussian weight is the detector of this whole package: an
atom at radius r counts as exp(-2 r^2/w(x)^2) of an atom.  This script
prints the beam size, section and weight along the propagation axis for
the illustrative 100 um / 852 nm probe.
"""

import numpy as np

import coldcloud as cc

beam = cc.BeamParams(w0=100e-6, wavelength=852e-9)
print(f"waist            : {beam.w0 * 1e6:.0f} um")
print(f"wavelength       : {beam.wavelength * 1e9:.0f} nm")
print(f"Rayleigh length  : {beam.rayleigh_length * 1e3:.2f} mm")
print()

print(f"{'x/l_R':>6} {'w(x) [um]':>10} {'S(x) [mm^2]':>12} {'weight at 100 um':>17}")
for frac in (0.0, 0.5, 1.0, 2.0, 4.0):
    x = frac * beam.rayleigh_length
    w = cc.beam_size(beam, x)
    s = cc.beam_section(beam, x)
    f = cc.weight(beam, (x, 100e-6, 0.0))
    print(f"{frac:6.1f} {w * 1e6:10.1f} {s * 1e6:12.5f} {f:17.4f}")

# the mode stays normalized over every transverse plane
x = 0.7 * beam.rayleigh_length
ys = np.linspace(-8, 8, 2001) * cc.beam_size(beam, x)
pts = np.zeros((ys.size, ys.size, 3))
pts[..., 0] = x
pts[..., 1] = ys[:, None]
pts[..., 2] = ys[None, :]
mode_sq = np.abs(cc.mode_amplitude(beam, pts)) ** 2
integral = np.trapezoid(np.trapezoid(mode_sq, ys, axis=1), ys)
print()
print(f"transverse integral of |u|^2 at x = 0.7 l_R: {integral:.9f} (exact: 1)")
