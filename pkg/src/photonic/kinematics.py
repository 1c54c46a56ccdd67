"""Superpositions of constant-speed wave components and their group kinematics.

Natural units are used throughout (c = hbar = 1), so a component's energy
equals the magnitude of the momentum it carries.  A particle is modelled as a
finite set of such components; its momentum, energy, velocity and masses are
all derived from the component momenta.

Vectors are plain ``numpy`` arrays of shape ``(3,)``.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

import numba
import numpy as np

from .errors import (
    ConvergenceError,
    CorruptStateError,
    InvalidSuperpositionError,
    MasslessError,
    StepRejectedError,
)

#: Largest admissible boost target speed.
MAX_SPEED = 1.0 - 1e-9

#: Default cap on a single integration sub-step, as a fraction of m_e.
DEFAULT_STEP_FRACTION = 1e-4

#: Default budget of integration sub-steps for :func:`boost`.
DEFAULT_MAX_STEPS = 1_000_000

_RADICAND_SLACK = 1e-12
_MIN_MAGNITUDE = 1e-15


def as_vec3(value, name="vector"):
    """Return ``value`` as a finite float array of shape (3,)."""
    v = np.asarray(value, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{name} must have exactly 3 components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite components: {v}")
    return v


@dataclass(frozen=True)
class WaveComponent:
    """A single momentum carrier moving at unit speed."""

    momentum: np.ndarray

    def __post_init__(self):
        p = as_vec3(self.momentum, "component momentum")
        if not np.linalg.norm(p) > 0.0:
            raise InvalidSuperpositionError("component momentum must have non-zero magnitude")
        p.setflags(write=False)
        object.__setattr__(self, "momentum", p)

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.momentum))

    @property
    def energy(self) -> float:
        return self.magnitude

    @property
    def direction(self) -> np.ndarray:
        """Unit propagation direction; also the component velocity."""
        return self.momentum / self.magnitude

    velocity = direction


class Superposition:
    """Ordered collection of wave components forming one particle.

    Parameters
    ----------
    momenta : array_like, shape (N, 3)
        Component momentum vectors.  Every row must be finite with non-zero
        magnitude.

    The momenta are copied and stored read-only, so instances can be shared
    freely between threads.
    """

    __slots__ = ("_p", "_mag")

    def __init__(self, momenta):
        p = np.array(momenta, dtype=float, copy=True)
        if p.ndim == 1 and p.shape == (3,):
            p = p[None, :]
        if p.ndim != 2 or p.shape[1] != 3:
            raise InvalidSuperpositionError(f"momenta must have shape (N, 3), got {p.shape}")
        if p.shape[0] < 1:
            raise InvalidSuperpositionError("a superposition needs at least one component")
        if not np.all(np.isfinite(p)):
            raise InvalidSuperpositionError("component momenta must be finite")
        mag = np.linalg.norm(p, axis=1)
        bad = np.flatnonzero(mag <= 0.0)
        if bad.size:
            raise InvalidSuperpositionError(f"component {int(bad[0])} has zero magnitude")
        p.setflags(write=False)
        mag.setflags(write=False)
        self._p = p
        self._mag = mag

    @classmethod
    def from_components(cls, components: Iterable[WaveComponent]) -> "Superposition":
        return cls([c.momentum for c in components])

    @property
    def momenta(self) -> np.ndarray:
        """Read-only ``(N, 3)`` array of component momenta."""
        return self._p

    @property
    def magnitudes(self) -> np.ndarray:
        return self._mag

    @property
    def directions(self) -> np.ndarray:
        return self._p / self._mag[:, None]

    @property
    def components(self) -> tuple:
        return tuple(WaveComponent(row) for row in self._p)

    def __len__(self):
        return self._p.shape[0]

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        if not isinstance(other, Superposition):
            return NotImplemented
        return self._p.shape == other._p.shape and bool(np.array_equal(self._p, other._p))

    def __hash__(self):
        return hash(self._p.tobytes())

    def __repr__(self):
        return f"Superposition(N={len(self)}, P={total_momentum(self)}, m_e={total_energy(self):.6g})"

    def scaled(self, factor: float) -> "Superposition":
        if not factor > 0:
            raise ValueError("scale factor must be positive")
        return Superposition(self._p * factor)

    def concatenate(self, *others: "Superposition") -> "Superposition":
        return Superposition(np.vstack([self._p] + [o._p for o in others]))


@dataclass(frozen=True)
class BoostResult:
    """Outcome of :func:`boost`, with invariant-drift diagnostics."""

    final: Superposition
    steps_taken: int
    rest_mass_initial: float
    rest_mass_final: float
    max_momentum_residual: float

    @property
    def rest_mass_drift(self) -> float:
        """Relative change of the rest mass over the run."""
        return abs(self.rest_mass_final - self.rest_mass_initial) / self.rest_mass_initial


def total_momentum(s: Superposition) -> np.ndarray:
    """Vector sum of the component momenta."""
    return s.momenta.sum(axis=0)


def total_energy(s: Superposition) -> float:
    return float(s.magnitudes.sum())


def effective_mass(s: Superposition) -> float:
    """Effective mass m_e, defined through P = m_e V.  Equal to the energy when c = 1."""
    return total_energy(s)


def group_velocity(s: Superposition) -> np.ndarray:
    """Momentum-weighted mean of the component velocities.

    Each component moves at unit speed along its momentum, so the weighted
    sum of velocities is just the total momentum.
    """
    weighted = (s.magnitudes[:, None] * s.directions).sum(axis=0)
    return weighted / s.magnitudes.sum()


def _rest_mass(m_e, p_norm):
    radicand = (m_e - p_norm) * (m_e + p_norm)
    if radicand < 0.0:
        if -radicand <= _RADICAND_SLACK * m_e * m_e:
            return 0.0
        raise CorruptStateError(
            f"energy {m_e!r} is below momentum magnitude {p_norm!r}; state is corrupted"
        )
    return float(np.sqrt(radicand))


def rest_mass(s: Superposition) -> float:
    """Invariant mass sqrt(m_e**2 - |P|**2).

    Zero exactly when every component points the same way.  A slightly
    negative radicand from roundoff (within 1e-12 m_e**2) is clamped to zero;
    anything worse raises :class:`CorruptStateError`.
    """
    return _rest_mass(effective_mass(s), float(np.linalg.norm(total_momentum(s))))


def gamma_factor(speed: float) -> float:
    speed = float(speed)
    if speed >= 1.0:
        return float("inf")
    return 1.0 / np.sqrt((1.0 - speed) * (1.0 + speed))


def apportion_step(s: Superposition, dP) -> Superposition:
    """Apply one impulse ``dP``, shared among components in proportion to p_i / m_e.

    Component i receives ``dP * p_i / m_e``.  The shares sum to one, so the
    total momentum advances by exactly ``dP`` up to roundoff.

    Raises
    ------
    StepRejectedError
        If any updated component magnitude would drop below 1e-15 m_e.
    """
    dP = as_vec3(dP, "dP")
    m_e = effective_mass(s)
    p = s.momenta + np.outer(s.magnitudes / m_e, dP)
    mag = np.linalg.norm(p, axis=1)
    if mag.min() < _MIN_MAGNITUDE * m_e:
        raise StepRejectedError(
            f"impulse {dP} too large for one step: component {int(mag.argmin())} vanishes"
        )
    return Superposition(p)


@numba.njit(cache=True)
def _rk4_leg(par, perp2, length, step_fraction, step_budget, min_magnitude):
    n = par.shape[0]
    stage = np.empty(n)
    acc = np.empty(n)
    done = 0.0
    steps = 0
    while length - done > 0.0:
        if steps >= step_budget:
            return done, steps, 1
        m_e = 0.0
        for i in range(n):
            m_e += np.sqrt(par[i] * par[i] + perp2[i])
        h = min(step_fraction * m_e, length - done)
        # classical RK4; every stage's rates sum to one
        for s in range(4):
            if s == 0:
                for i in range(n):
                    stage[i] = par[i]
            else:
                c = h if s == 3 else 0.5 * h
                for i in range(n):
                    stage[i] = par[i] + c * stage[i]
            total = 0.0
            for i in range(n):
                stage[i] = np.sqrt(stage[i] * stage[i] + perp2[i])
                total += stage[i]
            w = 1.0 if s == 0 or s == 3 else 2.0
            for i in range(n):
                stage[i] /= total
                if s == 0:
                    acc[i] = stage[i]
                else:
                    acc[i] += w * stage[i]
        smallest = np.inf
        for i in range(n):
            par[i] += (h / 6.0) * acc[i]
            mag = np.sqrt(par[i] * par[i] + perp2[i])
            if mag < smallest:
                smallest = mag
        done += h
        steps += 1
        if smallest < min_magnitude * m_e:
            return done, steps, 2
    return done, steps, 0


def _integrate_leg(p, dP, step_fraction, step_budget):
    """Integrate the apportionment ODE along a fixed impulse direction.

    With the accumulated impulse lambda as the independent variable only the
    components' projections onto ``dP`` change:

        d(par_i)/d(lambda) = |p_i| / sum_j |p_j|

    The right-hand sides sum to one at every RK4 stage, so the total momentum
    advances by exactly the step length.

    Returns the updated momenta and the number of sub-steps used.
    """
    length = float(np.linalg.norm(dP))
    if length == 0.0:
        return p, 0
    e = dP / length
    par = np.ascontiguousarray(p @ e)
    perp = p - np.outer(par, e)
    perp2 = np.ascontiguousarray(np.einsum("ij,ij->i", perp, perp))
    done, steps, status = _rk4_leg(par, perp2, length, step_fraction, step_budget, _MIN_MAGNITUDE)
    if status == 1:
        raise ConvergenceError(
            "boost exceeded its step budget",
            steps_taken=steps,
            impulse_done=done,
            impulse_total=length,
        )
    if status == 2:
        raise StepRejectedError("a component magnitude vanished during integration")
    return perp + np.outer(par, e), steps


def boost(
    s: Superposition,
    v_target,
    tol: float = 1e-9,
    *,
    max_steps: int = DEFAULT_MAX_STEPS,
    step_fraction: float = DEFAULT_STEP_FRACTION,
) -> BoostResult:
    """Drive a superposition to a target group velocity with apportioned impulses.

    The required impulse follows from P = gamma m0 V with the rest mass of the
    input.  It is applied along a fixed direction in sub-steps no larger than
    ``step_fraction * m_e``.  If the landed velocity misses the target by more
    than ``tol`` (rest-mass drift), a correcting impulse is integrated the same
    way, until the budget of ``max_steps`` sub-steps runs out.

    Parameters
    ----------
    s : Superposition
        Starting state; needs a non-zero rest mass.
    v_target : array_like, shape (3,)
        Target group velocity, ``|v_target| <= 1 - 1e-9``.
    tol : float
        Allowed vector distance between the final and target velocity.

    Returns
    -------
    BoostResult

    Raises
    ------
    MasslessError
        If ``s`` has no rest frame.
    ConvergenceError
        If the step budget is exhausted.
    """
    v_target = as_vec3(v_target, "v_target")
    speed = float(np.linalg.norm(v_target))
    if speed > MAX_SPEED:
        raise ValueError(f"target speed {speed} exceeds the ceiling {MAX_SPEED}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if not 0 < step_fraction <= 1:
        raise ValueError("step_fraction must lie in (0, 1]")

    m0 = rest_mass(s)
    if m0 == 0.0:
        raise MasslessError("superposition is massless (all components parallel); it has no rest frame")

    p = np.array(s.momenta)
    steps = 0
    max_resid = 0.0
    m0_now = m0
    while True:
        P = p.sum(axis=0)
        mag = np.linalg.norm(p, axis=1)
        m_e = mag.sum()
        V = P / m_e
        miss = float(np.linalg.norm(V - v_target))
        if miss <= tol:
            break
        if steps >= max_steps:
            raise ConvergenceError(
                "boost did not reach the target velocity",
                steps_taken=steps,
                velocity_miss=miss,
                rest_mass_initial=m0,
                rest_mass_final=m0_now,
            )
        dP = gamma_factor(speed) * m0_now * v_target - P
        p, n = _integrate_leg(p, dP, step_fraction, max_steps - steps)
        steps += n
        resid = float(np.linalg.norm(p.sum(axis=0) - (P + dP)))
        max_resid = max(max_resid, resid)
        m0_now = _rest_mass(np.linalg.norm(p, axis=1).sum(), float(np.linalg.norm(p.sum(axis=0))))
        if n == 0:
            raise ConvergenceError(
                "boost stalled short of the target velocity", steps_taken=steps, velocity_miss=miss
            )

    final = Superposition(p)
    return BoostResult(
        final=final,
        steps_taken=steps,
        rest_mass_initial=m0,
        rest_mass_final=rest_mass(final),
        max_momentum_residual=max_resid,
    )


def balanced_pairs(directions: Sequence, magnitudes) -> Superposition:
    """Antipodal pairs ``+m n``, ``-m n`` for each direction, interleaved.

    Components ``2k`` and ``2k+1`` form pair ``k``; the total momentum is
    exactly zero.
    """
    n = np.asarray(directions, dtype=float).reshape(-1, 3)
    m = np.broadcast_to(np.asarray(magnitudes, dtype=float), (n.shape[0],))
    half = n * m[:, None]
    out = np.empty((2 * n.shape[0], 3))
    out[0::2] = half
    out[1::2] = -half
    return Superposition(out)
