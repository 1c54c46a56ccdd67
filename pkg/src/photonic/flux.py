"""Momentum-flux geometry of boosted superpositions.

A rest particle built from balanced pairs has its component momenta on a
sphere.  After a boost along +x each component momentum sits on an ellipsoid
of revolution whose centre is the component's share of the particle
momentum; in polar form about that centre the radius is

    r(theta) = 1 / sqrt(1 - V**2 cos(theta)**2)

with semi-axes gamma (along the motion) and 1 (transverse), so the
eccentricity equals V.  Dividing by an extra gamma gives the familiar
compressed field of a moving charge.
"""

from dataclasses import dataclass
from typing import List, NamedTuple

import numpy as np

from .kinematics import (
    MAX_SPEED,
    Superposition,
    as_vec3,
    balanced_pairs,
    boost,
    effective_mass,
    gamma_factor,
    group_velocity,
)

_REST_SPEED = 1e-9


def _check_speed(V):
    V = np.asarray(V, dtype=float)
    if np.any(V < 0.0) or np.any(V > MAX_SPEED):
        raise ValueError(f"speed must lie in [0, {MAX_SPEED}]")
    return V


def flux_radius(V, theta):
    """Expected momentum-flux radius at angle ``theta`` from the motion, in rest units.

    Broadcasts over array arguments.
    """
    V = _check_speed(V)
    c = np.cos(theta)
    out = 1.0 / np.sqrt(1.0 - V * V * c * c)
    return float(out) if np.ndim(out) == 0 else out


def em_radius(V, theta):
    """Field-compression radius: :func:`flux_radius` divided by gamma."""
    V = _check_speed(V)
    gamma = 1.0 / np.sqrt((1.0 - V) * (1.0 + V))
    out = flux_radius(V, theta) / gamma
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class BalancedPair:
    """Two equal and opposite components ``+m n`` and ``-m n`` at rest."""

    orientation: np.ndarray
    rest_magnitude: float = 1.0

    def __post_init__(self):
        n = as_vec3(self.orientation, "orientation")
        norm = np.linalg.norm(n)
        if norm == 0.0:
            raise ValueError("orientation must be non-zero")
        if not self.rest_magnitude > 0:
            raise ValueError("rest_magnitude must be positive")
        n = n / norm
        n.setflags(write=False)
        object.__setattr__(self, "orientation", n)

    @classmethod
    def at_angle(cls, theta, rest_magnitude=1.0):
        """Pair in the x-y plane at ``theta`` radians from +x."""
        return cls(np.array([np.cos(theta), np.sin(theta), 0.0]), rest_magnitude)

    @property
    def theta(self) -> float:
        """Rest angle between the orientation and the +x boost axis."""
        return float(np.arccos(np.clip(self.orientation[0], -1.0, 1.0)))

    def superposition(self) -> Superposition:
        return balanced_pairs([self.orientation], self.rest_magnitude)


class PairTransform(NamedTuple):
    a: float
    b: float
    r: float


def offset_angle(theta_rest, V):
    """Angle of a pair's half-difference vector after boosting to speed ``V`` along +x.

    The transverse part of ``a - b`` is untouched by impulses along x, while
    its longitudinal part grows by gamma.
    """
    gamma = gamma_factor(V)
    return np.arctan2(np.sin(theta_rest), gamma * np.cos(theta_rest))


def pair_boost_closed_form(pair: BalancedPair, V: float) -> PairTransform:
    """Boosted magnitudes of a balanced pair, from the two-wave triangle geometry.

    The boosted waves are ``gamma V x + r u`` and ``gamma V x - r u`` with
    ``u`` a unit vector at the boosted offset angle theta.  Then

        a + b = 2 gamma
        a**2 = r**2 + (gamma V)**2 + 2 gamma V r cos(theta)
        b**2 = r**2 + (gamma V)**2 - 2 gamma V r cos(theta)

    and eliminating a, b leaves :func:`flux_radius` for r.  Values are scaled
    by the pair's rest magnitude; ``a`` belongs to the component along
    ``+orientation``.
    """
    V = float(_check_speed(V))
    gamma = gamma_factor(V)
    theta = offset_angle(pair.theta, V)
    r = flux_radius(V, theta)
    gv = gamma * V
    cross = 2.0 * gv * r * np.cos(theta)
    base = r * r + gv * gv
    a = np.sqrt(max(base + cross, 0.0))
    b = np.sqrt(max(base - cross, 0.0))
    m = pair.rest_magnitude
    return PairTransform(float(m * a), float(m * b), float(m * r))


def make_isotropic_rest(n_pairs: int, magnitude: float = 1.0, seed: int = 0) -> Superposition:
    """Rest particle of ``n_pairs`` balanced pairs with uniformly random orientations.

    Directions come from normalised Gaussian triples.  Each pair is exactly
    antipodal, so the total momentum is exactly zero.
    """
    if n_pairs < 1:
        raise ValueError("n_pairs must be at least 1")
    if not magnitude > 0:
        raise ValueError("magnitude must be positive")
    rng = np.random.default_rng(seed)
    d = rng.standard_normal((n_pairs, 3))
    d /= np.linalg.norm(d, axis=1)[:, None]
    return balanced_pairs(d, magnitude)


@dataclass(frozen=True)
class FluxSample:
    """One angular bin of a momentum-flux profile.

    ``r`` and ``r_em`` are NaN for an empty bin; ``count`` says how many
    components fell in it.
    """

    theta: float
    r: float
    r_em: float
    count: int = 0


def flux_offsets(s_rest: Superposition, s_moving: Superposition):
    """Per-component offsets from the ellipsoid centre after a boost.

    Component i's centre is ``gamma V |p_i(rest)|``, its share of the particle
    momentum.  Returns ``(r, cos_theta)`` with r in units of the rest
    magnitude and theta measured from the direction of motion.
    """
    V = group_velocity(s_moving)
    speed = float(np.linalg.norm(V))
    gamma = gamma_factor(speed)
    axis = V / speed if speed > 0 else np.array([1.0, 0.0, 0.0])
    rest_mag = s_rest.magnitudes
    offset = s_moving.momenta - gamma * np.outer(rest_mag, V)
    norm = np.linalg.norm(offset, axis=1)
    return norm / rest_mag, (offset @ axis) / norm


def ellipsoid_profile(s_rest: Superposition, V: float, n_bins: int = 32, tol: float = 1e-12) -> List[FluxSample]:
    """Boost a rest particle to ``V`` along +x and bin its momentum-flux radius by angle.

    Bins are equal-width in cos(theta) (equal solid angle) over the angle of
    each component's offset from its ellipsoid centre.  A bin's ``theta`` is
    the arccos of its members' mean cos(theta), and its ``r`` is their mean
    radius.
    """
    if n_bins < 1:
        raise ValueError("n_bins must be at least 1")
    V = float(_check_speed(V))
    if np.linalg.norm(group_velocity(s_rest)) >= _REST_SPEED:
        raise ValueError("s_rest must be at rest (group speed below 1e-9)")
    moving = boost(s_rest, [V, 0.0, 0.0], tol=tol).final if V > 0 else s_rest
    r, cos_t = flux_offsets(s_rest, moving)
    gamma = gamma_factor(V)

    idx = np.clip(((cos_t + 1.0) * 0.5 * n_bins).astype(int), 0, n_bins - 1)
    counts = np.bincount(idx, minlength=n_bins)
    r_sum = np.bincount(idx, weights=r, minlength=n_bins)
    c_sum = np.bincount(idx, weights=cos_t, minlength=n_bins)
    edges = np.linspace(-1.0, 1.0, n_bins + 1)

    out = []
    for k in range(n_bins):
        n = int(counts[k])
        if n == 0:
            mid = 0.5 * (edges[k] + edges[k + 1])
            out.append(FluxSample(float(np.arccos(mid)), float("nan"), float("nan"), 0))
            continue
        theta = float(np.arccos(np.clip(c_sum[k] / n, -1.0, 1.0)))
        rk = float(r_sum[k] / n)
        out.append(FluxSample(theta, rk, rk / gamma, n))
    # ascending theta
    return out[::-1]


@dataclass(frozen=True)
class EllipseFit:
    """Centred ellipse x**2/A**2 + y**2/B**2 = 1 in the (motion, transverse) plane."""

    semi_axis_x: float
    semi_axis_y: float

    @property
    def eccentricity(self) -> float:
        major = max(self.semi_axis_x, self.semi_axis_y)
        minor = min(self.semi_axis_x, self.semi_axis_y)
        return float(np.sqrt(max(0.0, 1.0 - (minor / major) ** 2)))


def fit_ellipse(theta, r) -> EllipseFit:
    """Least-squares axis-aligned ellipse through polar points about a fixed centre.

    Solves ``x**2 u + y**2 w = 1`` for ``u = 1/A**2`` and ``w = 1/B**2``.
    NaN radii (empty bins) are dropped.
    """
    theta = np.asarray(theta, dtype=float)
    r = np.asarray(r, dtype=float)
    keep = np.isfinite(r)
    x = r[keep] * np.cos(theta[keep])
    y = r[keep] * np.sin(theta[keep])
    design = np.column_stack([x * x, y * y])
    (u, w), *_ = np.linalg.lstsq(design, np.ones(x.size), rcond=None)
    if u <= 0 or w <= 0:
        raise ValueError("profile is not elliptical about the given centre")
    return EllipseFit(float(1.0 / np.sqrt(u)), float(1.0 / np.sqrt(w)))


def profile_eccentricity(profile: List[FluxSample]) -> float:
    return fit_ellipse([p.theta for p in profile], [p.r for p in profile]).eccentricity


def apportion_charge(s: Superposition, Q: float) -> np.ndarray:
    """Share a conserved charge ``Q`` among components in proportion to p_i / m_e."""
    return float(Q) * s.magnitudes / effective_mass(s)
