"""
How one balanced pair transforms
================================

Two equal and opposite waves carry rest energy but no momentum.  After a
boost their momenta are ``gamma V x +- r u``: their energy grows by exactly
gamma whatever the orientation, and r traces the flux ellipse.
"""

import numpy as np

from photonic import BalancedPair, boost, gamma_factor, pair_boost_closed_form

V = 0.6
print(" theta      a         b         r      (a+b)/2gamma  integrated a")
for theta in np.linspace(0, np.pi, 7):
    pair = BalancedPair.at_angle(theta)
    t = pair_boost_closed_form(pair, V)
    a_num = boost(pair.superposition(), [V, 0, 0], tol=1e-12).final.magnitudes[0]
    print(f"{theta:6.3f}  {t.a:8.5f}  {t.b:8.5f}  {t.r:8.5f}  {(t.a + t.b) / (2 * gamma_factor(V)):10.6f}  {a_num:10.5f}")
