"""Desk-scale invariant suite shared by ``photonic check`` and the tests.

Every check returns ``(passed, detail)``.  :func:`run_checks` runs them all
without stopping at the first failure.
"""

from typing import Callable, Dict, List, Tuple

import numpy as np

from . import clock, flux, kinematics as kin, mbr

CheckResult = Tuple[bool, str]

_REGISTRY: Dict[str, Callable[[], CheckResult]] = {}


def check(name):
    def register(fn):
        _REGISTRY[name] = fn
        return fn

    return register


def random_superposition(rng, n, low=1e-3, high=1e3):
    """Random directions with log-uniform magnitudes in [low, high]."""
    d = rng.standard_normal((n, 3))
    d /= np.linalg.norm(d, axis=1)[:, None]
    mag = np.exp(rng.uniform(np.log(low), np.log(high), n))
    return kin.Superposition(d * mag[:, None])


@check("kinematics: momentum additivity of apportion_step")
def _momentum_additivity():
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(200):
        s = random_superposition(rng, int(rng.integers(1, 64)))
        m_e = kin.effective_mass(s)
        dP = rng.standard_normal(3) * m_e * 10 ** rng.uniform(-6, -1)
        moved = kin.apportion_step(s, dP)
        err = np.linalg.norm(kin.total_momentum(moved) - kin.total_momentum(s) - dP)
        worst = max(worst, err / (m_e + np.linalg.norm(dP)))
    return worst <= 1e-12, f"max scaled residual {worst:.2e}"


@check("kinematics: energy exceeds momentum, equality iff parallel")
def _energy_momentum():
    rng = np.random.default_rng(2)
    ok = True
    for _ in range(200):
        s = random_superposition(rng, int(rng.integers(2, 64)))
        ok &= kin.effective_mass(s) > np.linalg.norm(kin.total_momentum(s))
    parallel = kin.Superposition(np.outer([1.0, 2.5, 0.1], [0.6, 0.0, 0.8]))
    gap = kin.effective_mass(parallel) - np.linalg.norm(kin.total_momentum(parallel))
    ok &= abs(gap) <= 1e-12 * kin.effective_mass(parallel) and kin.rest_mass(parallel) == 0.0
    return bool(ok), f"parallel gap {gap:.1e}"


@check("kinematics: rest mass conserved along a boost")
def _invariant_mass():
    s = flux.make_isotropic_rest(32, 1.0, seed=3)
    res = kin.boost(s, [0.0, 0.8, 0.0], tol=1e-9)
    return res.rest_mass_drift <= 1e-8, f"relative drift {res.rest_mass_drift:.2e}"


@check("kinematics: P = gamma m0 V after boost")
def _momentum_closure():
    s = flux.make_isotropic_rest(32, 1.0, seed=4)
    v = np.array([0.3, -0.4, 0.5])
    res = kin.boost(s, v, tol=1e-12)
    expected = kin.gamma_factor(np.linalg.norm(v)) * res.rest_mass_initial * v
    err = np.linalg.norm(kin.total_momentum(res.final) - expected) / kin.effective_mass(res.final)
    return err <= 1e-8, f"scaled residual {err:.2e}"


@check("kinematics: scale covariance")
def _scale_covariance():
    rng = np.random.default_rng(5)
    s = random_superposition(rng, 50)
    lam = 3.7
    t = s.scaled(lam)
    errs = [
        np.linalg.norm(kin.total_momentum(t) - lam * kin.total_momentum(s)) / (lam * kin.effective_mass(s)),
        abs(kin.effective_mass(t) - lam * kin.effective_mass(s)) / (lam * kin.effective_mass(s)),
        abs(kin.rest_mass(t) - lam * kin.rest_mass(s)) / (lam * kin.effective_mass(s)),
        np.linalg.norm(kin.group_velocity(t) - kin.group_velocity(s)),
    ]
    return max(errs) <= 1e-12, f"max error {max(errs):.1e}"


@check("kinematics: balanced pairs boost independently")
def _pair_independence():
    rng = np.random.default_rng(6)
    d = rng.standard_normal((6, 3))
    d /= np.linalg.norm(d, axis=1)[:, None]
    mags = rng.uniform(0.5, 2.0, 6)
    whole = kin.balanced_pairs(d, mags)
    v = [0.7, 0.0, 0.0]
    joint = kin.boost(whole, v, tol=1e-12).final
    parts = [kin.boost(kin.balanced_pairs(d[k : k + 1], mags[k]), v, tol=1e-12).final for k in range(6)]
    P = sum(kin.total_momentum(p) for p in parts)
    m_e = sum(kin.effective_mass(p) for p in parts)
    ref = kin.effective_mass(joint)
    err = max(np.linalg.norm(P - kin.total_momentum(joint)) / ref, abs(m_e - ref) / ref)
    return err <= 1e-9, f"relative mismatch {err:.1e}"


@check("clock: v_z = sqrt(1 - V^2) for random superpositions")
def _clock_identity():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        s = random_superposition(rng, int(rng.integers(2, 1025)))
        worst = max(worst, clock.zitter_speed(s).identity_residual)
    return worst <= 1e-12, f"max residual {worst:.1e}"


@check("clock: internal and group motion partition unit speed")
def _partition():
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(100):
        rep = clock.zitter_speed(random_superposition(rng, int(rng.integers(2, 200))))
        worst = max(worst, abs(rep.v_z**2 + rep.speed**2 - 1.0))
    return worst <= 1e-12, f"max deviation {worst:.1e}"


@check("clock: agrees with the Dirac zitterbewegung scaling")
def _dirac():
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(100):
        rep = clock.zitter_speed(random_superposition(rng, int(rng.integers(1, 100))))
        worst = max(worst, abs(clock.dirac_zitter_scale(rep.speed) - rep.v_z))
    return worst <= 1e-12, f"max deviation {worst:.1e}"


@check("clock: split components are equivalent to merged ones")
def _equal_split():
    rest = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -2.0], [0.3, 0.4, 0.0]])
    d = np.array([0.6, 0.0, 0.8])
    merged = kin.Superposition(np.vstack([rest, 3.0 * d]))
    split = kin.Superposition(np.vstack([rest, d, d, d]))
    a, b = clock.zitter_speed(merged), clock.zitter_speed(split)
    err = max(abs(a.v_z - b.v_z), np.linalg.norm(kin.group_velocity(merged) - kin.group_velocity(split)))
    return err <= 1e-12, f"difference {err:.1e}"


@check("flux: radius is even, pi-periodic, gamma at 0 and 1 at pi/2")
def _flux_shape():
    V = np.linspace(0.0, 0.99, 25)[:, None]
    th = np.linspace(-np.pi, np.pi, 73)[None, :]
    r = flux.flux_radius(V, th)
    gamma = 1.0 / np.sqrt(1.0 - V[:, 0] ** 2)
    errs = [
        np.abs(r - flux.flux_radius(V, -th)).max(),
        np.abs(r - flux.flux_radius(V, th + np.pi)).max(),
        np.abs(flux.flux_radius(V[:, 0], 0.0) - gamma).max(),
        np.abs(flux.flux_radius(V[:, 0], np.pi / 2) - 1.0).max(),
        max(0.0, (r.max(axis=1) - gamma).max()),
        max(0.0, (1.0 - r.min(axis=1)).max()),
    ]
    return max(errs) <= 1e-12, f"max deviation {max(errs):.1e}"


@check("flux: pair closed form matches integrated boost")
def _pair_vs_integration():
    worst = 0.0
    for v in (0.3, 0.6, 0.9):
        for th in (0.0, np.pi / 6, np.pi / 4, np.pi / 3, np.pi / 2):
            pair = flux.BalancedPair.at_angle(th)
            closed = flux.pair_boost_closed_form(pair, v)
            final = kin.boost(pair.superposition(), [v, 0.0, 0.0], tol=1e-12).final
            a, b = final.magnitudes
            worst = max(worst, abs(a - closed.a) / closed.a, abs(b - closed.b) / closed.b)
    return worst <= 1e-6, f"max relative error {worst:.1e}"


@check("flux: pair energy grows by gamma at every orientation")
def _energy_ratio():
    worst = 0.0
    for v in (0.2, 0.5, 0.95):
        g = kin.gamma_factor(v)
        for th in np.linspace(0.0, np.pi, 13):
            t = flux.pair_boost_closed_form(flux.BalancedPair.at_angle(th, 2.0), v)
            worst = max(worst, abs((t.a + t.b) / 4.0 - g) / g)
    return worst <= 1e-12, f"max deviation {worst:.1e}"


@check("flux: em radius times gamma equals flux radius")
def _em():
    V = np.linspace(0.0, 0.999, 100)[:, None]
    th = np.linspace(0.0, np.pi, 100)[None, :]
    g = 1.0 / np.sqrt(1.0 - V * V)
    err = np.abs(flux.em_radius(V, th) * g - flux.flux_radius(V, th)).max()
    return err <= 1e-12, f"max deviation {err:.1e}"


@check("flux: apportioned charge sums to Q before and after boost")
def _charge():
    s = flux.make_isotropic_rest(50, 1.0, seed=10)
    moved = kin.boost(s, [0.0, 0.0, 0.9], tol=1e-9).final
    errs = [abs(flux.apportion_charge(x, -1.6).sum() + 1.6) for x in (s, moved)]
    return max(errs) <= 1e-12, f"max deviation {max(errs):.1e}"


@check("mbr: observer at rest is a fixed point")
def _mbr_fixed_point():
    est = mbr.find_null_frame(np.zeros(3), n_samples=2000, tol=1e-9, seed=11)
    b = float(np.linalg.norm(est.beta))
    return b <= 1e-12, f"|beta| = {b:.1e} after {est.iterations} updates"


@check("mbr: dipole is odd in the observer velocity")
def _mbr_antisymmetry():
    beta = np.array([4e-4, -7e-4, 2e-4])
    plus = mbr.fit_dipole(mbr.synthesize_sky(beta, n_samples=2000, seed=12))
    minus = mbr.fit_dipole(mbr.synthesize_sky(-beta, n_samples=2000, seed=12))
    err = np.linalg.norm(plus.dipole + minus.dipole) / np.linalg.norm(plus.dipole)
    return err <= 1e-9, f"relative asymmetry {err:.1e}"


@check("mbr: monopole stays within 2 beta^2 of T_rest")
def _mbr_monopole():
    worst = 0.0
    for b in (1e-4, 1e-3, 1e-2):
        fit = mbr.fit_dipole(mbr.synthesize_sky([0.0, b, 0.0], n_samples=2000, seed=13))
        worst = max(worst, abs(fit.monopole - mbr.T_CMB) / mbr.T_CMB / (2 * b * b))
    return worst <= 1.0, f"worst fraction of bound {worst:.2f}"


@check("mbr: each update shrinks the dipole at least tenfold")
def _mbr_contraction():
    est = mbr.find_null_frame([1.1675e-3, 0.0, 0.0], n_samples=2000, tol=1e-12, seed=14)
    h = est.ratio_history
    ok = all(b <= a / 10 for a, b in zip(h, h[1:]))
    return ok, "ratios " + ", ".join(f"{x:.1e}" for x in h)


def check_names() -> List[str]:
    return list(_REGISTRY)


def run_checks() -> List[Tuple[str, bool, str]]:
    """Run every registered check; exceptions count as failures."""
    results = []
    for name, fn in _REGISTRY.items():
        try:
            ok, detail = fn()
        except Exception as exc:  # report, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, bool(ok), detail))
    return results
