"""Particles as superpositions of unit-speed wave components.

Submodules
----------
kinematics
    Superposition model, group quantities and apportioned-impulse boosts.
clock
    Internal motion and the velocity-dependent internal clock rate.
flux
    Momentum-flux ellipsoids, balanced-pair transforms and charge sharing.
mbr
    Locating the null-dipole frame of the microwave background.
"""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    CorruptStateError,
    InvalidSuperpositionError,
    MasslessError,
    PhotonicError,
    RankDeficientError,
    StepRejectedError,
)
from .kinematics import (
    BoostResult,
    Superposition,
    WaveComponent,
    apportion_step,
    balanced_pairs,
    boost,
    effective_mass,
    gamma_factor,
    group_velocity,
    rest_mass,
    total_energy,
    total_momentum,
)
from .clock import ClockReport, dilation_sweep, dirac_zitter_scale, internal_velocity, zitter_speed
from .flux import (
    BalancedPair,
    FluxSample,
    apportion_charge,
    ellipsoid_profile,
    em_radius,
    flux_radius,
    make_isotropic_rest,
    pair_boost_closed_form,
)
from .mbr import DipoleFit, FrameEstimate, Sky, SkySample, find_null_frame, fit_dipole, synthesize_sky
from .textio import read_superposition, write_superposition
