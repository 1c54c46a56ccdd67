"""
Momentum-flux ellipsoids
========================

Boost an isotropic rest particle and look at where its component momenta sit
relative to their share of the particle momentum.  The sphere becomes an
ellipsoid of revolution, stretched by gamma along the motion, whose
eccentricity equals the speed.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from photonic import ellipsoid_profile, flux_radius, gamma_factor, make_isotropic_rest
from photonic.flux import profile_eccentricity

rest = make_isotropic_rest(10_000, seed=7)
fig, ax = plt.subplots(figsize=(7, 4))
t = np.linspace(0, 2 * np.pi, 400)
for V in (0.0, 0.3, 0.6, 0.9):
    prof = ellipsoid_profile(rest, V, n_bins=32)
    theta = np.array([b.theta for b in prof])
    r = np.array([b.r for b in prof])
    centre = gamma_factor(V) * V
    # binned profile (upper half) and the closed form, centred on the momentum
    ax.plot(centre + r * np.cos(theta), r * np.sin(theta), "o", ms=3)
    rr = flux_radius(V, t)
    ax.plot(centre + rr * np.cos(t), rr * np.sin(t), "-", lw=1, label=f"V={V}")
    worst = np.nanmax(np.abs(r - flux_radius(V, theta)) / r)
    print(f"V={V}: eccentricity {profile_eccentricity(prof):.4f}, worst bin error {worst:.1e}")
ax.set_aspect("equal")
ax.set_xlabel("momentum along motion")
ax.legend()
fig.savefig("flux_ellipsoids.png", dpi=120)
