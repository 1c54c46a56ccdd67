"""
Boosting a particle made of light
=================================

A rest particle is built from balanced pairs of unit-speed waves.  Pushing it
with impulses shared in proportion to each component's momentum changes its
energy and momentum but leaves the rest mass alone, and the momentum ends up
at gamma * m0 * V.
"""

import numpy as np

from photonic import boost, effective_mass, gamma_factor, make_isotropic_rest, rest_mass, total_momentum

###############################################################################
# 128 randomly oriented balanced pairs: total momentum is exactly zero.
particle = make_isotropic_rest(128, magnitude=1.0, seed=1)
m0 = rest_mass(particle)
print(f"rest mass {m0:.6f}, momentum {total_momentum(particle)}")

###############################################################################
# Boost to a series of speeds and watch the invariants.
for speed in (0.3, 0.6, 0.9, 0.99):
    result = boost(particle, [speed, 0.0, 0.0], tol=1e-10)
    P = total_momentum(result.final)
    expected = gamma_factor(speed) * m0 * speed
    print(
        f"V={speed:4.2f}  m_e/m0={effective_mass(result.final) / m0:8.4f}  "
        f"P_x={P[0]:10.4f} (gamma m0 V = {expected:10.4f})  "
        f"rest-mass drift {result.rest_mass_drift:.1e}  steps {result.steps_taken}"
    )
