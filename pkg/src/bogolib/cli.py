"""Scenario-driven command line: parse a config, run, serialize results.

Config files are INI-style with sections ``[scenario]``, ``[grid]``,
``[physics]``, ``[numerics]`` and ``[output]``; unknown sections or keys
are rejected so typos cannot silently change the physics.  Scalar results
land in ``summary.json`` (deterministic: resolved config included, no
wall-clock data), arrays in CSV files; timing and version info go to the
separate ``run_meta.json``.

Exit codes: 0 success, 2 configuration error, 3 solver/integrator
failure, 4 instability detected (outputs still written), 5 resource
limit.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import os
import platform
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bdg import assemble, build_phonon_basis, check_stability, diagonalize
from .errors import BogolibError, ConfigurationError, InstabilityError
from .gpe import energy_functional_h1, harmonic_potential, solve_stationary, zero_potential
from .grid import build_grid, norm
from .homogeneous import (
    bogoliubov_dispersion,
    compare_asymptotics,
    exact_fock_spectrum,
    hydro_coefficients,
    number_conservation_offblock,
    sound_mode_energy,
)
from .number_shift import StationaryProblem, build_report
from .tdgpe import (
    TrapQuench,
    center_of_mass,
    hr_diagnostic,
    mu_from_rate,
    propagate,
    propagate_modes,
    trajectory_xi_dot,
)

SCENARIOS = (
    "stationary",
    "spectrum",
    "dynamics",
    "number-shift",
    "homogeneous-check",
    "fock-oracle",
)

GRID_SCENARIOS = {"stationary", "spectrum", "dynamics", "number-shift"}

OUTPUT_DIR_ENV = "BOGOLIB_OUTPUT_DIR"


# ---------------------------------------------------------------------------
# Schema
# ---------------------------------------------------------------------------


def _parse_bounded_float(lo=None, hi=None, lo_open=False):
    def parse(raw):
        value = float(raw)
        if not np.isfinite(value):
            raise ValueError("must be finite")
        if lo is not None and (value <= lo if lo_open else value < lo):
            raise ValueError(f"must be {'>' if lo_open else '>='} {lo}")
        if hi is not None and value > hi:
            raise ValueError(f"must be <= {hi}")
        return value

    return parse


def _parse_bounded_int(lo=None, hi=None):
    def parse(raw):
        value = int(raw)
        if lo is not None and value < lo:
            raise ValueError(f"must be >= {lo}")
        if hi is not None and value > hi:
            raise ValueError(f"must be <= {hi}")
        return value

    return parse


def _parse_choice(choices):
    def parse(raw):
        if raw not in choices:
            raise ValueError(f"must be one of {', '.join(choices)}")
        return raw

    return parse


def _parse_nonzero_float(raw):
    value = float(raw)
    if value == 0 or not np.isfinite(value):
        raise ValueError("must be nonzero and finite")
    return value


def _parse_formats(raw):
    entries = {part.strip() for part in raw.split(",") if part.strip()}
    unknown = entries - {"json", "csv"}
    if unknown:
        raise ValueError(f"unknown formats {sorted(unknown)}; allowed: json, csv")
    if "json" not in entries:
        raise ValueError("the json summary format is mandatory")
    return ",".join(sorted(entries))


REQUIRED = object()

# section -> key -> (parser, default); REQUIRED marks mandatory keys and
# None marks optional keys with no default.
SCHEMA = {
    "scenario": {"name": (_parse_choice(SCENARIOS), REQUIRED)},
    "grid": {
        "n_points": (_parse_bounded_int(8, 8192), REQUIRED),
        "length": (_parse_bounded_float(0, lo_open=True), REQUIRED),
        "boundary": (_parse_choice(("periodic", "box")), REQUIRED),
    },
    "physics": {
        "u_tilde": (_parse_bounded_float(0), None),
        "u": (_parse_bounded_float(0), None),
        "n_particles": (_parse_bounded_float(0, lo_open=True), None),
        "potential": (str, "none"),
        "k_mode": (_parse_nonzero_float, None),
        "volume": (_parse_bounded_float(0, lo_open=True), None),
    },
    "numerics": {
        "tol": (_parse_bounded_float(0, lo_open=True), 1e-11),
        "max_iters": (_parse_bounded_int(1), 20000),
        "dt": (_parse_bounded_float(0, lo_open=True), 1e-3),
        "t_final": (_parse_bounded_float(0, lo_open=True), 10.0),
        "k_modes": (_parse_bounded_int(1), None),
        "delta_n": (_parse_bounded_float(0, lo_open=True), 0.5),
        "n_max_excited": (_parse_bounded_int(1, 60), None),
        "evolution": (_parse_choice(("gpe", "linear")), "gpe"),
    },
    "output": {
        "directory": (str, "out"),
        "stride": (_parse_bounded_int(1), 10),
        "formats": (_parse_formats, "csv,json"),
    },
}


def _parse_potential_spec(spec: str):
    """'none' | 'harmonic(omega)' | 'quench(from,to,t_switch)'."""
    spec = spec.strip()
    if spec == "none":
        return ("none",)
    if spec.startswith("harmonic(") and spec.endswith(")"):
        inner = spec[len("harmonic(") : -1]
        try:
            omega = float(inner)
        except ValueError:
            raise ConfigurationError(f"bad harmonic frequency {inner!r}") from None
        if omega <= 0:
            raise ConfigurationError("harmonic frequency must be positive")
        return ("harmonic", omega)
    if spec.startswith("quench(") and spec.endswith(")"):
        parts = spec[len("quench(") : -1].split(",")
        if len(parts) != 3:
            raise ConfigurationError("quench needs (from, to, t_switch)")
        try:
            w_from, w_to, t_switch = (float(p) for p in parts)
        except ValueError:
            raise ConfigurationError(f"bad quench parameters {spec!r}") from None
        if w_from <= 0 or w_to <= 0 or t_switch < 0:
            raise ConfigurationError("quench frequencies must be positive, t_switch >= 0")
        return ("quench", w_from, w_to, t_switch)
    raise ConfigurationError(
        f"unknown potential {spec!r}; expected none, harmonic(omega) or "
        "quench(from,to,t_switch)"
    )


def load_config(path: str) -> dict:
    """Parse and validate a config file into a fully resolved dict."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigurationError(f"config syntax error: {exc}") from exc

    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigurationError(f"unknown section [{section}]")
        for key in parser[section]:
            if key not in SCHEMA[section]:
                raise ConfigurationError(
                    f"unknown key {key!r} in [{section}]; allowed: "
                    f"{', '.join(SCHEMA[section])}"
                )

    config: dict = {}
    for section, keys in SCHEMA.items():
        config[section] = {}
        for key, (parse, default) in keys.items():
            if parser.has_option(section, key):
                raw = parser.get(section, key)
                try:
                    config[section][key] = parse(raw)
                except ValueError as exc:
                    raise ConfigurationError(f"[{section}] {key} = {raw!r}: {exc}") from None
            elif default is REQUIRED:
                if section == "grid":
                    continue  # enforced below, only for grid-based scenarios
                raise ConfigurationError(f"missing required key [{section}] {key}")
            elif default is not None:
                config[section][key] = default

    scenario = config["scenario"]["name"]

    if scenario in GRID_SCENARIOS:
        for key in SCHEMA["grid"]:
            if key not in config["grid"]:
                raise ConfigurationError(f"missing required key [grid] {key}")
    elif config["grid"]:
        raise ConfigurationError(f"[grid] section is not used by scenario {scenario}")

    phys = config["physics"]
    if scenario in GRID_SCENARIOS:
        has_ut = "u_tilde" in phys
        has_un = "u" in phys and "n_particles" in phys
        if scenario == "number-shift":
            if not has_un:
                raise ConfigurationError("number-shift needs physical u and n_particles")
            if has_ut:
                raise ConfigurationError("give (u, n_particles), not u_tilde")
        elif has_ut == has_un:
            raise ConfigurationError(
                "specify exactly one of u_tilde or the pair (u, n_particles)"
            )
        phys["_potential_parsed"] = _parse_potential_spec(phys["potential"])
        if phys["_potential_parsed"][0] == "quench" and scenario != "dynamics":
            raise ConfigurationError("quench potentials are only for dynamics runs")
    else:
        for key in ("u", "n_particles", "volume"):
            if key not in phys:
                raise ConfigurationError(f"scenario {scenario} needs [physics] {key}")
        if scenario == "fock-oracle":
            if "k_mode" not in phys:
                raise ConfigurationError("fock-oracle needs [physics] k_mode")
            if "n_max_excited" not in config["numerics"]:
                raise ConfigurationError("fock-oracle needs [numerics] n_max_excited")
            if abs(phys["n_particles"] - round(phys["n_particles"])) > 0:
                raise ConfigurationError("fock-oracle n_particles must be an integer")

    return config


def resolved_u_tilde(config: dict) -> tuple[float, float]:
    """(u_tilde, n_particles) from either parametrization."""
    phys = config["physics"]
    if "u_tilde" in phys:
        return phys["u_tilde"], phys.get("n_particles", 1.0)
    return phys["u"] * phys["n_particles"], phys["n_particles"]


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


class OutputWriter:
    """Writes tabular files into the run directory, honoring `formats`."""

    def __init__(self, directory: Path, formats: str):
        self.directory = directory
        self.formats = set(formats.split(","))
        self.files: list[str] = []

    def csv(self, name: str, header: list[str], rows) -> None:
        if "csv" not in self.formats:
            return
        path = self.directory / name
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in rows:
                writer.writerow([repr(x) if isinstance(x, float) else x for x in row])
        self.files.append(name)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return repr(obj)


def _config_for_summary(config: dict) -> dict:
    return {
        section: {k: _jsonable(v) for k, v in keys.items() if not k.startswith("_")}
        for section, keys in config.items()
    }


def write_summary(directory: Path, config: dict, results: dict, files: list[str]) -> Path:
    summary = {
        "config": _config_for_summary(config),
        "results": _jsonable(results),
        "files": sorted(files),
    }
    path = directory / "summary.json"
    path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return path


def write_meta(directory: Path, elapsed: float) -> None:
    meta = {
        "elapsed_seconds": elapsed,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "bogolib_version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
    }
    (directory / "run_meta.json").write_text(json.dumps(meta, indent=2) + "\n")


def _mirror(values: np.ndarray, boundary: str) -> np.ndarray:
    if boundary == "box":
        return values[::-1]
    return np.roll(values[::-1], 1)  # periodic mirror about the domain center


def _parity_of_wave(values: np.ndarray, boundary: str) -> str:
    mirrored = _mirror(values, boundary)
    even = np.linalg.norm(values - mirrored)
    odd = np.linalg.norm(values + mirrored)
    return "odd" if odd < even else "even"


# ---------------------------------------------------------------------------
# Scenario runners
# ---------------------------------------------------------------------------


def _build_state(config: dict):
    gridcfg = config["grid"]
    grid = build_grid(gridcfg["n_points"], gridcfg["length"], gridcfg["boundary"])
    pot_spec = config["physics"]["_potential_parsed"]
    if pot_spec[0] == "none":
        potential = zero_potential(grid)
    else:  # harmonic or quench: the stationary solve uses the initial trap
        potential = harmonic_potential(grid, pot_spec[1])
    u_tilde, n_particles = resolved_u_tilde(config)
    num = config["numerics"]
    state = solve_stationary(
        grid,
        potential,
        u_tilde,
        n_particles=n_particles,
        tol=num["tol"],
        max_iters=num["max_iters"],
    )
    return grid, state


def _default_k_modes(config: dict, grid) -> int:
    k = config["numerics"].get("k_modes")
    return k if k is not None else max(2, grid.n_points // 4)


def run_stationary(config: dict, out: OutputWriter) -> dict:
    grid, state = _build_state(config)
    h1 = energy_functional_h1(state)
    results = {
        "mu": state.mu,
        "h1": h1,
        "residual": state.residual,
        "norm": norm(state.xi),
        "mu_minus_h1": state.mu - h1,
    }
    out.csv(
        "fields.csv",
        ["x", "potential", "xi_re", "xi_im", "density"],
        zip(
            grid.points.tolist(),
            state.potential.values.real.tolist(),
            state.xi.values.real.tolist(),
            state.xi.values.imag.tolist(),
            (np.abs(state.xi.values) ** 2).tolist(),
        ),
    )
    return results


def run_spectrum(config: dict, out: OutputWriter) -> dict:
    grid, state = _build_state(config)
    K = _default_k_modes(config, grid)
    basis = build_phonon_basis(state, K)
    qh = assemble(state, basis)
    spectrum = diagonalize(qh, basis)
    report = check_stability(spectrum)

    uniform = (
        config["physics"]["_potential_parsed"][0] == "none" and grid.boundary == "periodic"
    )
    u_tilde, _ = resolved_u_tilde(config)
    analytic = None
    if uniform:
        base = 2.0 * np.pi / grid.length
        ks = sorted(
            (s * j * base for j in range(1, K // 2 + 1) for s in (1, -1)), key=abs
        )[:K]
        analytic = np.sort([bogoliubov_dispersion(k, u_tilde, grid.length) for k in ks])

    parities = [_parity_of_wave(w.values, grid.boundary) for w in spectrum.p_waves]
    header = ["mode", "energy", "parity"]
    rows = [[m, float(e), parities[m]] for m, e in enumerate(spectrum.energies)]
    if analytic is not None:
        # Uniform gas: energies come in +-k pairs ordered by |k|.
        header = ["mode", "k", "energy", "parity", "energy_analytic"]
        base = 2.0 * np.pi / grid.length
        rows = [
            [m, (m // 2 + 1) * base, float(e), parities[m], float(ref)]
            for m, (e, ref) in enumerate(zip(spectrum.energies, analytic))
        ]

    results = {
        "mu": state.mu,
        "e3": qh.e3,
        "omega_g": spectrum.omega_g,
        "stable": report.stable,
        "n_modes": int(len(spectrum.energies)),
        "lowest_energy": float(spectrum.energies[0]),
    }
    odd = [float(e) for e, p in zip(spectrum.energies, parities) if p == "odd"]
    if odd:
        results["lowest_odd_parity_energy"] = odd[0]
    if analytic is not None:
        results["max_rel_dev_vs_analytic"] = float(
            np.max(np.abs(spectrum.energies - analytic) / analytic)
        )

    out.csv("modes.csv", header, rows)
    if not report.stable:
        error = InstabilityError("; ".join(report.messages) or "unstable spectrum")
        error.results = results
        raise error
    return results


def run_dynamics(config: dict, out: OutputWriter) -> dict:
    grid, state = _build_state(config)
    num = config["numerics"]
    pot_spec = config["physics"]["_potential_parsed"]
    potential_of_t = None
    if pot_spec[0] == "quench":
        potential_of_t = TrapQuench(grid, pot_spec[1], pot_spec[2], pot_spec[3])
    traj = propagate(
        state,
        t_final=num["t_final"],
        dt=num["dt"],
        potential_of_t=potential_of_t,
        stride=config["output"]["stride"],
        evolution=num["evolution"],
    )
    K = _default_k_modes(config, grid)
    basis = build_phonon_basis(state, K)
    traj = propagate_modes(traj, basis)
    diagnostics = hr_diagnostic(traj)

    rows = []
    gram_devs, overlaps = [], []
    mu_rate_dev = 0.0
    eye = np.eye(K)
    for i, t in enumerate(traj.times):
        phi = traj.modes_t[i].mode_matrix
        gram_dev = float(np.max(np.abs(phi.conj() @ phi.T * grid.dx - eye)))
        overlap = float(np.max(np.abs(phi.conj() @ traj.xi_t[i].values * grid.dx)))
        gram_devs.append(gram_dev)
        overlaps.append(overlap)
        mu_rate = mu_from_rate(traj.xi_t[i], trajectory_xi_dot(traj, i))
        mu_rate_dev = max(mu_rate_dev, abs(mu_rate - traj.mu_t[i]))
        rows.append(
            [
                float(t),
                float(traj.norm_t[i]),
                float(traj.h1_t[i]),
                float(traj.mu_t[i]),
                mu_rate,
                center_of_mass(traj.xi_t[i]),
                diagnostics[i].mismatch,
                gram_dev,
                overlap,
            ]
        )
    out.csv(
        "timeseries.csv",
        ["t", "norm", "h1", "mu", "mu_rate_form", "center", "mismatch", "gram_dev", "overlap"],
        rows,
    )
    first, last = traj.xi_t[0].values, traj.xi_t[-1].values
    out.csv(
        "fields.csv",
        ["x", "xi0_re", "xi0_im", "xi_final_re", "xi_final_im", "density_final"],
        zip(
            grid.points.tolist(),
            first.real.tolist(),
            first.imag.tolist(),
            last.real.tolist(),
            last.imag.tolist(),
            (np.abs(last) ** 2).tolist(),
        ),
    )
    return {
        "max_norm_drift": float(np.max(np.abs(traj.norm_t - 1.0))),
        "max_h1_drift": float(np.max(np.abs(traj.h1_t - traj.h1_t[0]))),
        "max_mismatch": float(max(d.mismatch for d in diagnostics)),
        "max_gram_deviation": float(max(gram_devs)),
        "max_condensate_overlap": float(max(overlaps)),
        "max_mu_form_deviation": float(mu_rate_dev),
        "evolution": num["evolution"],
    }


def _norm_of(values: np.ndarray, dx: float) -> float:
    return float(np.sqrt(np.vdot(values, values).real * dx))


def run_number_shift(config: dict, out: OutputWriter) -> dict:
    grid, state = _build_state(config)
    phys = config["physics"]
    num = config["numerics"]
    problem = StationaryProblem(
        grid=grid,
        potential=state.potential,
        u=phys["u"],
        tol=num["tol"],
        max_iters=num["max_iters"],
    )
    K = _default_k_modes(config, grid)
    basis = build_phonon_basis(state, K)
    spectrum = diagonalize(assemble(state, basis), basis)
    report = build_report(problem, state, basis, spectrum, delta_N=num["delta_n"])

    rel_corrections = [
        _norm_of(f.values - p.values, grid.dx) / max(_norm_of(p.values, grid.dx), 1e-300)
        for f, p in zip(report.f_waves, spectrum.p_waves)
    ]
    out.csv(
        "r_coefficients.csv",
        ["k", "re", "im", "abs"],
        [[k, float(rk.real), float(rk.imag), float(abs(rk))] for k, rk in enumerate(report.r)],
    )
    out.csv(
        "dxi_dn.csv",
        ["x", "re", "im"],
        zip(
            grid.points.tolist(),
            report.dxi_dN.values.real.tolist(),
            report.dxi_dN.values.imag.tolist(),
        ),
    )
    return {
        "r0_raw": report.r0_raw,
        "r0": report.r0,
        "r_norm_sq": float(np.sum(np.abs(report.r) ** 2)),
        "truncation_residual": report.truncation_residual,
        "condensate_amplitude": report.condensate_amplitude,
        "delta_n": report.delta_N,
        "max_f_correction_rel": float(max(rel_corrections)),
    }


def run_homogeneous_check(config: dict, out: OutputWriter) -> dict:
    phys = config["physics"]
    u, n_particles, volume = phys["u"], int(phys["n_particles"]), phys["volume"]
    u_tilde = u * n_particles
    base = 2.0 * np.pi / volume
    rows = []
    max_product_dev = 0.0
    max_energy_dev = 0.0
    for j in range(1, 33):
        k = j * base
        hc = hydro_coefficients(k, u, n_particles, volume)
        eps = bogoliubov_dispersion(k, u_tilde, volume)
        mode_e = sound_mode_energy(hc)
        max_product_dev = max(max_product_dev, abs(hc.phi_coeff * hc.rho_coeff - 0.5))
        max_energy_dev = max(max_energy_dev, abs(mode_e - k * hc.v_sound))
        rows.append([k, eps, k * hc.v_sound, mode_e, hc.phi_coeff, hc.rho_coeff])
    hc1 = hydro_coefficients(base, u, n_particles, volume)
    eps1 = bogoliubov_dispersion(base, u_tilde, volume)
    out.csv(
        "dispersion.csv",
        ["k", "epsilon", "k_v_sound", "mode_energy", "phi_coeff", "rho_coeff"],
        rows,
    )
    return {
        "v_sound": hc1.v_sound,
        "max_product_deviation": max_product_dev,
        "max_mode_energy_deviation": max_energy_dev,
        "small_k_energy_rel_error": abs(sound_mode_energy(hc1) - eps1) / eps1,
    }


def run_fock_oracle(config: dict, out: OutputWriter) -> dict:
    phys = config["physics"]
    num = config["numerics"]
    n_particles = int(round(phys["n_particles"]))
    spec = exact_fock_spectrum(
        n_particles, phys["k_mode"], phys["u"], phys["volume"], num["n_max_excited"]
    )
    report = compare_asymptotics(spec, phys["u"] * n_particles)
    row = report.rows[0]
    offblock = number_conservation_offblock(
        n_particles, phys["k_mode"], phys["u"], phys["volume"], num["n_max_excited"]
    )
    out.csv(
        "sectors.csv",
        ["momentum_sector", "lowest_energy"],
        sorted(spec.sector_minima.items()),
    )
    out.csv("gaps.csv", ["index", "excitation_energy"], list(enumerate(spec.gaps.tolist())))
    return {
        "dimension": spec.dimension,
        "ground_energy": spec.ground_energy,
        "ground_predicted": row.ground_predicted,
        "ground_error": row.ground_error,
        "first_gap": spec.first_gap,
        "gap_predicted": row.gap_predicted,
        "gap_error": row.gap_error,
        "number_conservation_offblock": offblock,
    }


RUNNERS = {
    "stationary": run_stationary,
    "spectrum": run_spectrum,
    "dynamics": run_dynamics,
    "number-shift": run_number_shift,
    "homogeneous-check": run_homogeneous_check,
    "fock-oracle": run_fock_oracle,
}


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def run(config_path: str) -> int:
    started = time.time()
    config = load_config(config_path)
    directory = Path(os.environ.get(OUTPUT_DIR_ENV) or config["output"]["directory"])
    directory.mkdir(parents=True, exist_ok=True)
    scenario = config["scenario"]["name"]
    out = OutputWriter(directory, config["output"]["formats"])
    try:
        results = RUNNERS[scenario](config, out)
    except InstabilityError as exc:
        # Spectrum is already on disk; finish the summary, then report the
        # instability through the exit code.
        if getattr(exc, "results", None) is not None:
            write_summary(directory, config, exc.results, out.files)
            write_meta(directory, time.time() - started)
        raise
    write_summary(directory, config, results, out.files)
    write_meta(directory, time.time() - started)
    print(f"{scenario}: wrote summary.json and {len(out.files)} data file(s) to {directory}")
    return 0


def validate(config_path: str) -> int:
    config = load_config(config_path)
    print(json.dumps(_config_for_summary(config), indent=2, sort_keys=True))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bogolib",
        description="Condensate ground states, quasiparticle spectra, and "
        "time-dependent diagnostics for the 1D Bose gas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="execute the scenario in a config file")
    p_run.add_argument("config", help="path to INI config")
    p_val = sub.add_parser("validate", help="check a config file without running")
    p_val.add_argument("config", help="path to INI config")
    args = parser.parse_args(argv)

    try:
        if args.command == "run":
            return run(args.config)
        return validate(args.config)
    except BogolibError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
