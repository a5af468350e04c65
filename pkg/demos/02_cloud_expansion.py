"""Ballistic expansion and free fall of the released cloud.

After release the cloud expands on the time scale tau_r = sigma_r/sigma_v
and falls out of view on tau_g = 2*sqrt(2)*sigma_v/g.  The density at the
release point decays as a 3/2-power Lorentzian times a gravity factor.
"""

import numpy as np

import coldcloud as cc

cloud = cc.CloudParams(n_total=1e6, sigma_r=1e-3, sigma_v=0.1, g=9.81)
beam = cc.BeamParams(w0=100e-6, wavelength=852e-9)
ts = cc.time_scales(cloud, beam)

print(f"expansion time tau_r   : {ts.tau_r * 1e3:6.2f} ms")
print(f"fall time tau_g        : {ts.tau_g * 1e3:6.2f} ms")
print(f"beam transit tau_w(0)  : {ts.tau_w * 1e3:6.2f} ms")
print(f"gravity parameter zeta : {(ts.tau_r / ts.tau_g) ** 2:.4f}")
print()

peak0 = cc.center_density(cloud, 0.0)
print(f"initial center density : {peak0:.3e} atoms/m^3")
print()
print(f"{'t [ms]':>7} {'center density / initial':>25} {'fall drop [mm]':>15}")
for t in np.linspace(0.0, 3.0 * ts.tau_r, 7):
    rel = cc.center_density(cloud, t) / peak0
    drop = 0.5 * cloud.g * t**2 * 1e3
    print(f"{t * 1e3:7.1f} {rel:25.4f} {drop:15.3f}")

# the density profile is Gaussian around the falling center at all times
t = 2.0 * ts.tau_r
center = np.array([0.0, 0.0, -0.5 * cloud.g * t**2])
print()
print(f"at t = {t * 1e3:.0f} ms the cloud is centered {-center[2] * 1e3:.2f} mm below the probe:")
for offset in (0.0, 1.0, 2.0):
    spread = np.sqrt(cloud.sigma_r**2 + (cloud.sigma_v * t) ** 2)
    r = center + np.array([offset * spread, 0.0, 0.0])
    print(f"  density at {offset:.0f} spreads off center: "
          f"{cc.density(cloud, r, t) / cc.density(cloud, center, t):.4f} of the local peak")
