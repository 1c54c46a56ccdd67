"""Command-line front end.

Subcommands write CSV or text files and print a one-line summary.  Exit
status: 0 success, 1 invalid input or failed checks, 2 numerical failure.

Settings may also come from ``--config FILE`` holding ``key = value`` lines
(keys are flag names without the leading dashes); flags given on the command
line win.
"""

import argparse
import math
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from . import checks, clock, flux, kinematics as kin, mbr
from .errors import ConvergenceError, CorruptStateError, PhotonicError, StepRejectedError
from .textio import fmt, format_superposition, parse_superposition, read_superposition

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2

COMMANDS = ("boost", "ellipsoid", "clock", "pair", "mbr-find", "check")

DEFAULTS = {
    "output": None,
    "input": None,
    "seed": 0,
    "tolerance": 1e-9,
    "speeds": "0,0.3,0.6,0.9",
    "v": None,
    "thetas": "0,pi/6,pi/4,pi/3,pi/2",
    "pairs": 10_000,
    "samples": 10_000,
    "bins": 32,
    "magnitude": 1.0,
    "beta": None,
    "speed_km_s": 350.0,
    "direction": "1,0,0",
    "noise": 0.0,
    "t_rest": mbr.T_CMB,
    "sky_output": None,
}


@dataclass
class RunConfig:
    command: str
    output_path: Optional[Path] = None
    input_path: Optional[Path] = None
    seed: int = 0
    tolerance: float = 1e-9
    speeds: List[float] = field(default_factory=list)
    velocity: Optional[np.ndarray] = None
    thetas: List[float] = field(default_factory=list)
    n_pairs: int = 10_000
    n_samples: int = 10_000
    n_bins: int = 32
    magnitude: float = 1.0
    beta: Optional[np.ndarray] = None
    noise_sigma: float = 0.0
    t_rest: float = mbr.T_CMB
    sky_output_path: Optional[Path] = None
    argv: Sequence[str] = ()

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        for v in self.speeds:
            if not 0.0 <= v < kin.MAX_SPEED:
                raise ValueError(f"speed {v} outside [0, 1 - 1e-9)")
        for name in ("n_pairs", "n_samples", "n_bins"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.output_path is not None and str(self.output_path) == "":
            raise ValueError("output path is empty")


def _number(token: str) -> float:
    t = token.strip().lower().replace("pi", repr(math.pi))
    if not t:
        raise ValueError("empty number")
    if "/" in t:
        num, den = t.split("/", 1)
        return float(num) / float(den)
    return float(t)


def parse_list(text) -> List[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    return [_number(tok) for tok in str(text).split(",") if tok.strip()]


def parse_vector(text) -> np.ndarray:
    vals = parse_list(text)
    if len(vals) == 1:
        vals = [vals[0], 0.0, 0.0]
    if len(vals) != 3:
        raise ValueError(f"expected 1 or 3 components, got {len(vals)}")
    return np.array(vals)


def read_config_file(path) -> dict:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (p.strip() for p in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in DEFAULTS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are validation failures (exit 1), not argparse's 2
        self.print_usage(sys.stderr)
        raise ValueError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="photonic",
        description="Simulate particles as superpositions of unit-speed wave components.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p, output_help):
        p.add_argument("--config", help="key = value file; command-line flags override it")
        p.add_argument("-o", "--output", help=output_help)
        p.add_argument("--seed", type=int, help="random seed (default 0)")
        p.add_argument("--tolerance", "--tol", dest="tolerance", type=float,
                       help="convergence tolerance (default 1e-9)")

    p = sub.add_parser("boost", help="boost a superposition file to a target velocity")
    common(p, "write the boosted superposition here (default: stdout)")
    p.add_argument("--input", "-i", help="superposition file (default: bundled antipodal pair)")
    p.add_argument("--v", help="target velocity: 'vx,vy,vz' or a speed along +x")

    p = sub.add_parser("ellipsoid", help="momentum-flux profile of a boosted isotropic particle (CSV)")
    common(p, "CSV path (default: stdout)")
    p.add_argument("--v", help="comma-separated speeds along +x (default 0,0.3,0.6,0.9)")
    p.add_argument("--pairs", type=int, help="number of balanced pairs (default 10000)")
    p.add_argument("--bins", type=int, help="equal-solid-angle bins (default 32)")
    p.add_argument("--magnitude", type=float, help="rest magnitude of each component (default 1)")

    p = sub.add_parser("clock", help="time-dilation sweep (CSV)")
    common(p, "CSV path (default: stdout)")
    p.add_argument("--speeds", help="comma-separated speeds along +x (default 0,0.3,0.6,0.9)")
    p.add_argument("--input", "-i", help="rest superposition file (default: bundled antipodal pair)")

    p = sub.add_parser("pair", help="balanced-pair transform table (CSV)")
    common(p, "CSV path (default: stdout)")
    p.add_argument("--v", help="comma-separated speeds (default 0,0.3,0.6,0.9)")
    p.add_argument("--thetas", help="comma-separated rest angles in radians; 'pi' allowed "
                                    "(default 0,pi/6,pi/4,pi/3,pi/2)")

    p = sub.add_parser("mbr-find", help="find the null-dipole frame from a simulated sky")
    common(p, "frame report path (default: stdout)")
    p.add_argument("--beta", help="observer velocity 'bx,by,bz' (overrides --speed-km-s)")
    p.add_argument("--speed-km-s", dest="speed_km_s", type=float, help="observer speed (default 350)")
    p.add_argument("--direction", help="observer direction 'x,y,z' (default 1,0,0)")
    p.add_argument("--samples", type=int, help="sky samples per measurement (default 10000)")
    p.add_argument("--noise", type=float, help="detector noise in kelvin (default 0)")
    p.add_argument("--t-rest", dest="t_rest", type=float, help="background temperature (default 2.725)")
    p.add_argument("--sky-output", dest="sky_output", help="also write the initial sky as CSV")

    p = sub.add_parser("check", help="run every invariant check; optionally validate a superposition file")
    common(p, "also write the pass/fail listing here")
    p.add_argument("--input", "-i", help="superposition file to validate")
    return parser


def config_from_args(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    given = {k: v for k, v in vars(ns).items() if v is not None}
    settings = dict(DEFAULTS)
    if "config" in given:
        settings.update(read_config_file(given["config"]))
    settings.update({k: v for k, v in given.items() if k in DEFAULTS})

    cmd = ns.command
    speeds_src = settings["v"] if cmd in ("ellipsoid", "pair") and settings["v"] is not None else settings["speeds"]
    if cmd == "mbr-find":
        if settings["beta"] is not None:
            beta = parse_vector(settings["beta"])
        else:
            d = parse_vector(settings["direction"])
            beta = float(settings["speed_km_s"]) / mbr.C_KM_S * d / np.linalg.norm(d)
    else:
        beta = None
    cfg = RunConfig(
        command=cmd,
        output_path=Path(settings["output"]) if settings["output"] is not None else None,
        input_path=Path(settings["input"]) if settings["input"] is not None else None,
        seed=int(settings["seed"]),
        tolerance=float(settings["tolerance"]),
        speeds=parse_list(speeds_src) if cmd in ("ellipsoid", "pair", "clock") else [],
        velocity=parse_vector(settings["v"] if settings["v"] is not None else "0.6") if cmd == "boost" else None,
        thetas=parse_list(settings["thetas"]),
        n_pairs=int(settings["pairs"]),
        n_samples=int(settings["samples"]),
        n_bins=int(settings["bins"]),
        magnitude=float(settings["magnitude"]),
        beta=beta,
        noise_sigma=float(settings["noise"]),
        t_rest=float(settings["t_rest"]),
        sky_output_path=Path(settings["sky_output"]) if settings["sky_output"] is not None else None,
        argv=tuple(argv),
    )
    return cfg


def _provenance(cfg: RunConfig) -> List[str]:
    return [
        f"photonic {__version__}",
        "command: photonic " + " ".join(cfg.argv),
        f"seed: {cfg.seed}",
    ]


def _emit(cfg: RunConfig, text: str, path: Optional[Path] = None):
    path = path if path is not None else cfg.output_path
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _csv(cfg, header, rows) -> str:
    lines = ["# " + c for c in _provenance(cfg)]
    lines.append(header)
    for row in rows:
        lines.append(",".join("" if (isinstance(x, float) and math.isnan(x)) else fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def _load_input(cfg) -> kin.Superposition:
    if cfg.input_path is not None:
        return read_superposition(cfg.input_path)
    text = resources.files("photonic").joinpath("data/antipodal_pair.txt").read_text(encoding="utf-8")
    return parse_superposition(text)


def _summary(cfg, msg):
    # keep stdout clean when it carries the data
    print(msg, file=sys.stderr if cfg.output_path is None else sys.stdout)


def cmd_boost(cfg: RunConfig) -> int:
    s = _load_input(cfg)
    res = kin.boost(s, cfg.velocity, tol=cfg.tolerance)
    V = kin.group_velocity(res.final)
    report = _provenance(cfg) + [
        f"target_velocity: {' '.join(fmt(x) for x in cfg.velocity)}",
        f"final_velocity: {' '.join(fmt(x) for x in V)}",
        f"steps_taken: {res.steps_taken}",
        f"rest_mass_initial: {fmt(res.rest_mass_initial)}",
        f"rest_mass_final: {fmt(res.rest_mass_final)}",
        f"rest_mass_drift: {fmt(res.rest_mass_drift)}",
        f"max_momentum_residual: {fmt(res.max_momentum_residual)}",
    ]
    _emit(cfg, format_superposition(res.final, report))
    _summary(cfg, f"boost: {len(s)} components to |V|={np.linalg.norm(V):.12g} in {res.steps_taken} steps, "
             f"rest-mass drift {res.rest_mass_drift:.3e}")
    return EXIT_OK


def cmd_ellipsoid(cfg: RunConfig) -> int:
    s = flux.make_isotropic_rest(cfg.n_pairs, cfg.magnitude, cfg.seed)
    rows = []
    worst = 0.0
    ecc = []
    for v in cfg.speeds:
        profile = flux.ellipsoid_profile(s, v, cfg.n_bins)
        for b in profile:
            closed = flux.flux_radius(v, b.theta)
            rows.append((v, b.theta, b.r, closed, b.r_em))
            if b.count:
                worst = max(worst, abs(b.r - closed) / b.r)
        ecc.append(flux.profile_eccentricity(profile))
    _emit(cfg, _csv(cfg, "v,theta,r_empirical,r_closed_form,r_em", rows))
    _summary(cfg, f"ellipsoid: {cfg.n_pairs} pairs, {cfg.n_bins} bins, max relative bin error {worst:.3e}, "
             "eccentricity " + " ".join(f"{e:.4f}" for e in ecc))
    return EXIT_OK


def cmd_clock(cfg: RunConfig) -> int:
    s = _load_input(cfg)
    reports = clock.dilation_sweep(s, cfg.speeds)
    rows = [(v, r.gamma, r.v_z, r.identity_residual) for v, r in zip(cfg.speeds, reports)]
    _emit(cfg, _csv(cfg, "speed,gamma,v_z,residual", rows))
    worst = max((r.identity_residual for r in reports), default=0.0)
    _summary(cfg, f"clock: {len(rows)} speeds, max identity residual {worst:.3e}")
    return EXIT_OK


def cmd_pair(cfg: RunConfig) -> int:
    rows = []
    for v in cfg.speeds:
        for th in cfg.thetas:
            t = flux.pair_boost_closed_form(flux.BalancedPair.at_angle(th), v)
            rows.append((v, th, t.a, t.b, t.r))
    _emit(cfg, _csv(cfg, "v,theta,a,b,r", rows))
    _summary(cfg, f"pair: {len(rows)} transforms")
    return EXIT_OK


def cmd_mbr_find(cfg: RunConfig) -> int:
    if cfg.sky_output_path is not None:
        sky = mbr.synthesize_sky(cfg.beta, cfg.t_rest, cfg.n_samples, cfg.noise_sigma, cfg.seed)
        rows = [(*d, t) for d, t in zip(sky.directions, sky.temperatures)]
        _emit(cfg, _csv(cfg, "nx,ny,nz,temperature_k", rows), cfg.sky_output_path)
    est = mbr.find_null_frame(cfg.beta, cfg.t_rest, cfg.n_samples, cfg.noise_sigma, cfg.tolerance, cfg.seed)
    obs = est.observer_velocity
    lines = ["# " + c for c in _provenance(cfg)] + [
        f"true_beta: {' '.join(fmt(x) for x in cfg.beta)}",
        f"recovered_beta: {' '.join(fmt(x) for x in est.beta)}",
        f"observer_velocity: {' '.join(fmt(x) for x in obs)}",
        f"speed_km_s: {fmt(est.speed_km_s)}",
        f"iterations: {est.iterations}",
        f"final_dipole_ratio: {fmt(est.final_dipole_ratio)}",
    ]
    _emit(cfg, "\n".join(lines) + "\n")
    _summary(cfg, f"mbr-find: {est.speed_km_s:.6f} km/s after {est.iterations} updates, "
             f"dipole ratio {est.final_dipole_ratio:.3e}")
    return EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    lines = []
    status = EXIT_OK
    if cfg.input_path is not None:
        try:
            s = read_superposition(cfg.input_path)
            lines.append(f"PASS  input file {cfg.input_path}: {len(s)} components")
        except (PhotonicError, ValueError, OSError) as exc:
            lines.append(f"FAIL  input file {cfg.input_path}: {exc}")
            status = EXIT_INVALID
    for name, ok, detail in checks.run_checks():
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        if not ok:
            status = EXIT_INVALID
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if cfg.output_path is not None:
        cfg.output_path.write_text(text, encoding="utf-8")
    n_fail = sum(1 for ln in lines if ln.startswith("FAIL"))
    _summary(cfg, f"check: {len(lines) - n_fail} passed, {n_fail} failed")
    return status


_HANDLERS = {
    "boost": cmd_boost,
    "ellipsoid": cmd_ellipsoid,
    "clock": cmd_clock,
    "pair": cmd_pair,
    "mbr-find": cmd_mbr_find,
    "check": cmd_check,
}


def run(cfg: RunConfig) -> int:
    """Execute one configured command and return its exit status."""
    try:
        cfg.validate()
        return _HANDLERS[cfg.command](cfg)
    except (ConvergenceError, CorruptStateError, StepRejectedError) as exc:
        print(f"photonic {cfg.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (PhotonicError, ValueError, OSError) as exc:
        print(f"photonic {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def check_all(cfg: Optional[RunConfig] = None) -> int:
    return run(cfg if cfg is not None else RunConfig(command="check"))


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = config_from_args(argv)
    except (ValueError, OSError) as exc:
        print(f"photonic: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
