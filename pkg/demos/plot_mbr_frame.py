"""
Finding the rest frame of the microwave background
==================================================

An observer moving at 350 km/s sees a temperature dipole of about one part
per thousand.  Fitting the dipole and accelerating against it converges on
the frame in which the sky is isotropic.
"""

import numpy as np

from photonic import find_null_frame, fit_dipole, synthesize_sky
from photonic.mbr import C_KM_S, T_CMB

direction = np.array([-0.97, 0.24, -0.05])
direction /= np.linalg.norm(direction)
beta = 350.0 / C_KM_S * direction

fit = fit_dipole(synthesize_sky(beta, T_CMB, 10_000, seed=0))
print(f"monopole {fit.monopole:.6f} K, dipole {np.linalg.norm(fit.dipole) * 1e3:.4f} mK, ratio {fit.ratio:.3e}")

for noise in (0.0, 1e-6 * T_CMB):
    est = find_null_frame(beta, T_CMB, 10_000, noise, tol=1e-9 if noise == 0 else 1e-7, seed=1)
    angle = np.degrees(np.arccos(est.observer_velocity @ direction / np.linalg.norm(est.beta)))
    print(
        f"noise {noise:.1e} K: {est.speed_km_s:.4f} km/s, {angle:.2e} deg off, "
        f"{est.iterations} updates, ratio history {['%.1e' % r for r in est.ratio_history]}"
    )
