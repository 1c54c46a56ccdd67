"""
The internal clock slows down
=============================

Motion of each component relative to the group is what lets the particle
evolve internally.  Its momentum-weighted RMS falls as sqrt(1 - V^2).
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from photonic import dilation_sweep, dirac_zitter_scale, make_isotropic_rest

particle = make_isotropic_rest(16, seed=3)
speeds = np.linspace(0.0, 0.99, 34)
reports = dilation_sweep(particle, speeds)

v_z = [r.v_z for r in reports]
print("largest deviation from sqrt(1 - V^2):", max(r.identity_residual for r in reports))

fig, ax = plt.subplots()
ax.plot(speeds, v_z, "o", label="momentum-weighted internal speed")
ax.plot(speeds, [dirac_zitter_scale(v) for v in speeds], "-", label=r"$\sqrt{1-V^2}$")
ax.set_xlabel("group speed V")
ax.set_ylabel("clock rate")
ax.legend()
fig.savefig("time_dilation.png", dpi=120)
