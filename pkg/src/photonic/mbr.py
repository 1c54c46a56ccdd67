"""Finding the rest frame of the microwave background from its dipole.

An observer moving at ``beta`` through an isotropic blackbody sees a sky
temperature

    T(n) = T_rest sqrt(1 - beta**2) / (1 - n . beta)

for arrival direction ``n``.  To first order this is an isotropic part plus a
dipole of relative size ``|beta|``.  Fitting monopole + dipole and stepping
the observer's velocity against the dipole drives it to the frame where the
dipole vanishes.
"""

from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union

import numpy as np

from .errors import ConvergenceError, RankDeficientError
from .kinematics import as_vec3

#: Speed of light in km/s, for reporting only.
C_KM_S = 299792.458

#: CMB temperature in kelvin.  Only ratios matter to the procedure.
T_CMB = 2.725

MAX_OBSERVER_SPEED = 0.1


@dataclass(frozen=True)
class SkySample:
    direction: np.ndarray
    temperature: float


@dataclass(frozen=True)
class Sky:
    """Directional temperature samples stored as arrays.

    ``directions`` has shape (n, 3) with unit rows; ``temperatures`` shape (n,).
    """

    directions: np.ndarray
    temperatures: np.ndarray

    def __len__(self):
        return self.temperatures.shape[0]

    def __iter__(self):
        for d, t in zip(self.directions, self.temperatures):
            yield SkySample(d, float(t))

    @classmethod
    def from_samples(cls, samples: Sequence[SkySample]) -> "Sky":
        d = np.array([s.direction for s in samples], dtype=float).reshape(-1, 3)
        t = np.array([s.temperature for s in samples], dtype=float)
        return cls(d, t)


@dataclass(frozen=True)
class DipoleFit:
    monopole: float
    dipole: np.ndarray
    residual_rms: float

    @property
    def ratio(self) -> float:
        """Dipole amplitude relative to the monopole."""
        return float(np.linalg.norm(self.dipole) / self.monopole)


@dataclass(frozen=True)
class FrameEstimate:
    """Result of :func:`find_null_frame`.

    ``beta`` is the velocity change the observer applied to null the dipole;
    its negation estimates the observer's original velocity.
    ``ratio_history`` lists the dipole ratio measured before each update,
    ending with the final one.
    """

    beta: np.ndarray
    iterations: int
    final_dipole_ratio: float
    ratio_history: Tuple[float, ...] = field(default=())

    @property
    def observer_velocity(self) -> np.ndarray:
        return -self.beta

    @property
    def speed_km_s(self) -> float:
        return float(np.linalg.norm(self.beta)) * C_KM_S


def _check_beta(beta):
    beta = as_vec3(beta, "beta")
    if np.linalg.norm(beta) >= MAX_OBSERVER_SPEED:
        raise ValueError(f"observer speed must be below {MAX_OBSERVER_SPEED}")
    return beta


def doppler_temperature(directions, beta, T_rest=T_CMB):
    """Observed temperature toward ``directions`` for an observer moving at ``beta``."""
    beta = as_vec3(beta, "beta")
    b2 = float(beta @ beta)
    return T_rest * np.sqrt(1.0 - b2) / (1.0 - np.asarray(directions, dtype=float) @ beta)


def uniform_directions(n: int, rng) -> np.ndarray:
    """``n`` unit vectors, uniform on the sphere, drawn as antipodal pairs.

    Pairs make every even function of direction orthogonal to the dipole
    terms in a least-squares fit.  For odd ``n`` the last row is unpaired.
    """
    half = rng.standard_normal(((n + 1) // 2, 3))
    half /= np.linalg.norm(half, axis=1)[:, None]
    out = np.empty((2 * half.shape[0], 3))
    out[0::2] = half
    out[1::2] = -half
    return out[:n]


def synthesize_sky(
    beta,
    T_rest: float = T_CMB,
    n_samples: int = 10_000,
    noise_sigma: float = 0.0,
    seed: Union[int, np.random.SeedSequence] = 0,
) -> Sky:
    """Simulated temperature map seen by an observer moving at ``beta``.

    Gaussian detector noise with standard deviation ``noise_sigma`` kelvin is
    added per sample.  Identical arguments give identical skies.
    """
    beta = _check_beta(beta)
    if not T_rest > 0:
        raise ValueError("T_rest must be positive")
    if n_samples < 12:
        raise ValueError("need at least 12 samples")
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be non-negative")
    rng = np.random.default_rng(seed)
    d = uniform_directions(n_samples, rng)
    t = doppler_temperature(d, beta, T_rest)
    if noise_sigma > 0:
        t = t + rng.normal(0.0, noise_sigma, size=n_samples)
    return Sky(d, t)


def fit_dipole(samples: Union[Sky, Sequence[SkySample]]) -> DipoleFit:
    """Least-squares fit of ``T(n) = monopole + dipole . n``."""
    sky = samples if isinstance(samples, Sky) else Sky.from_samples(samples)
    n = len(sky)
    if n < 4:
        raise RankDeficientError(f"need at least 4 samples for monopole + dipole, got {n}")
    design = np.column_stack([np.ones(n), sky.directions])
    rank = np.linalg.matrix_rank(design)
    if rank < 4:
        raise RankDeficientError(
            f"design matrix has rank {rank} < 4: sample directions do not span all three axes"
        )
    coef, *_ = np.linalg.lstsq(design, sky.temperatures, rcond=None)
    resid = sky.temperatures - design @ coef
    return DipoleFit(float(coef[0]), coef[1:].copy(), float(np.sqrt(np.mean(resid * resid))))


def compose_velocities(u, v) -> np.ndarray:
    """Velocity in the original frame of something moving at ``v`` relative to a frame moving at ``u``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    uu = float(u @ u)
    uv = float(u @ v)
    if uu == 0.0:
        return v.copy()
    gamma = 1.0 / np.sqrt(1.0 - uu)
    return (u + v / gamma + (gamma / (1.0 + gamma)) * uv * u) / (1.0 + uv)


def find_null_frame(
    initial_beta,
    T_rest: float = T_CMB,
    n_samples: int = 10_000,
    noise_sigma: float = 0.0,
    tol: float = 1e-9,
    seed: int = 0,
    max_iter: int = 100,
) -> FrameEstimate:
    """Accelerate against the measured dipole until it vanishes.

    Parameters
    ----------
    initial_beta : array_like, shape (3,)
        The observer's true velocity relative to the background at the start.
    tol : float
        Stop once ``|dipole| / monopole < tol``.

    Each iteration measures a fresh sky in the current frame, fits its dipole
    and applies the velocity change ``-dipole / monopole`` with relativistic
    composition.

    Raises
    ------
    ConvergenceError
        If the dipole ratio is still above ``tol`` after ``max_iter`` updates.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    current = _check_beta(initial_beta)
    applied = np.zeros(3)
    seeds = np.random.SeedSequence(seed).spawn(max_iter + 1)
    history = []
    for it in range(max_iter + 1):
        fit = fit_dipole(synthesize_sky(current, T_rest, n_samples, noise_sigma, seeds[it]))
        ratio = fit.ratio
        history.append(ratio)
        if ratio < tol:
            return FrameEstimate(applied, it, ratio, tuple(history))
        if it == max_iter:
            break
        step = -fit.dipole / fit.monopole
        current = _check_beta(compose_velocities(current, step))
        applied = compose_velocities(applied, step)
    raise ConvergenceError(
        f"dipole ratio {history[-1]:.3g} still above {tol:g} after {max_iter} updates",
        final_dipole_ratio=history[-1],
        beta=applied,
    )
