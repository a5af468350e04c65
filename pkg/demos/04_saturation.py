"""Saturated counting: bright atoms count less.

At saturation s the polarizability drops by 1/(1+2s), so the effective
number read off the nonlinear phase shift is smaller than the linear one.
In the joint limit (small waist, long Rayleigh range) the reduction is a
pure prefactor ln(1+2s)/(2s): the time dependence survives saturation
untouched.
"""

import math

import numpy as np

import coldcloud as cc

sigma_r = 1e-3
w0 = 1e-2 * sigma_r
beam = cc.BeamParams(w0=w0, wavelength=math.pi * w0**2 / (1e3 * sigma_r))
cloud = cc.CloudParams(n_total=1e6, sigma_r=sigma_r, sigma_v=0.1, g=9.81)
inp = cc.EffNumInputs(cloud, beam)

print(f"{'s_m0':>5} {'ln(1+2s)/(2s)':>14} {'closed form':>13} {'series path':>13} {'rel gap':>10}")
for s_m0 in (0.0, 0.1, 0.3, 0.6):
    opt = cc.OpticalParams(delta=0.0, s_m0=s_m0)
    closed = cc.sigma_saturated_closed(inp, opt, 0.0)
    general = cc.sigma_saturated_general(inp, opt, 0.0)
    factor = math.log1p(2 * s_m0) / (2 * s_m0) if s_m0 else 1.0
    gap = abs(general / closed - 1.0)
    print(f"{s_m0:5.1f} {factor:14.6f} {closed:13.5e} {general:13.5e} {gap:10.2e}")

print()
print("saturation rescales the curve but not its shape:")
opt = cc.OpticalParams(delta=0.0, s_m0=0.3)
tau_r = sigma_r / cloud.sigma_v
for t in np.linspace(0.0, 2.0 * tau_r, 5):
    ratio = cc.sigma_saturated_closed(inp, opt, t) / cc.sigma_small_waist(inp, t)
    print(f"  t = {t * 1e3:5.1f} ms: sigma_s/sigma = {ratio:.10f}")

print()
print("nonlinear vs linear field response at delta = 2:")
opt = cc.OpticalParams(delta=2.0, s_m0=0.3)
lin = cc.linear_field_shift(inp, cc.OpticalParams(delta=2.0), 0.0)
non = cc.nonlinear_field_shift(inp, opt, 0.0)
print(f"  |dA/A| linear    : {abs(lin):.3e}")
print(f"  |dA/A| saturated : {abs(non):.3e}  ({abs(non) / abs(lin):.4f} of linear)")
