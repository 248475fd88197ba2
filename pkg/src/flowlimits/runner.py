"""Scenario execution: runs an experiment, writes CSV curves and a JSON summary.

Every scenario emits one CSV per figure-analogue with ``#``-prefixed metadata
lines (scenario echo, seeds, derived scalars), a header row, and
17-significant-digit data rows, so identical configurations reproduce
byte-identical CSV bodies. A machine-readable ``summary.json`` records bound
margins, crossover times, the violation count, and wall time.

Margins are ``min(truth - floor)`` or ``min(ceiling - |truth|)`` over the
grid; a validity claim is violated when its margin drops below -1e-9. The
as-printed Bogoliubov variant is a comparison curve, not a validity claim,
so its (expected) violations are reported but do not fail the run.
"""

from __future__ import annotations

import json
import time as _time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .autocorrelation import (
    QubitParams,
    autocorr_crossover,
    autocorr_curve,
    im_autocorr_ceiling,
    ml_autocorr_floor,
    mt_autocorr_floor,
    qubit_hamiltonian,
    velocity_moment,
)
from .config import ConfigError, ScenarioConfig
from .ensembles import GoeSpec, sample_goe_pair
from .fisher import (
    INTEGRAL_CALIBRATION,
    cramer_rao_floor,
    qfi_ceiling,
    qfi_from_autocorr,
    qfi_spectral,
)
from .gaps import abs_moment, anchored_sum, char_function, correlation_distribution
from .linalg import SIGMA_X, eigh, gibbs, to_energy_basis
from .response import (
    bogoliubov_ceiling,
    bogoliubov_temperature,
    crossover_times,
    heisenberg_ceiling,
    qsl_ceiling,
    susceptibility_curve,
    tau_qsl,
)
from .speed_limits import alpha_constant
from .states import goe_fidelity_experiment

__all__ = ["RunSummary", "BoundViolationError", "run_scenario", "write_csv"]

VIOLATION_TOL = 1e-9


class BoundViolationError(RuntimeError):
    """A validity-claimed bound was crossed; carries the margin report."""


@dataclass
class RunSummary:
    scenario: str
    seeds: dict = field(default_factory=dict)
    alpha: float = 0.0
    crossovers: dict = field(default_factory=dict)
    margins: dict = field(default_factory=dict)
    comparison_margins: dict = field(default_factory=dict)
    violation_count: int = 0
    wall_time_s: float = 0.0
    files: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "seeds": self.seeds,
            "alpha": self.alpha,
            "crossovers": self.crossovers,
            "margins": self.margins,
            "comparison_margins": self.comparison_margins,
            "violation_count": self.violation_count,
            "wall_time_s": self.wall_time_s,
            "files": self.files,
            "version": __version__,
        }


def _fmt(value) -> str:
    if isinstance(value, (bool,)):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def write_csv(path: Path, metadata: dict, header: list[str], columns: list[np.ndarray]) -> None:
    """Write a curve file: ``# key = value`` lines, header, 17-digit rows."""
    if len(header) != len(columns):
        raise ValueError("header and columns disagree")
    n = len(columns[0])
    if any(len(col) != n for col in columns):
        raise ValueError("columns have unequal lengths")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in metadata.items():
            fh.write(f"# {key} = {_fmt(value)}\n")
        fh.write(",".join(header) + "\n")
        for i in range(n):
            fh.write(",".join(_fmt(col[i]) for col in columns) + "\n")


def _min_margin(values: np.ndarray) -> float:
    return float(np.min(values)) if len(values) else 0.0


def _autocorr_bundle(oe, rho, grid):
    """Curve, floors, ceiling and scales shared by the autocorrelation scenarios."""
    dist = correlation_distribution(oe, rho)
    curve = autocorr_curve(oe, rho, grid)
    c0 = curve.c0
    vel = velocity_moment(oe, rho)
    anchored = anchored_sum(oe, rho, oe.spectrum.ground_energy)
    liou_abs = dist.total_weight * abs_moment(dist)
    mt = mt_autocorr_floor(c0, vel, grid)
    ml = ml_autocorr_floor(c0, anchored, grid)
    ml_liou = c0 - alpha_constant() * liou_abs * grid
    ceiling = im_autocorr_ceiling(anchored, grid)
    tau_c = autocorr_crossover(vel, anchored)
    return curve, mt, ml, ml_liou, ceiling, dict(
        c0=c0, velocity=vel, anchored=anchored, liouvillian_abs=liou_abs, tau_c=tau_c
    )


def _run_qubit_autocorr(cfg: ScenarioConfig, outdir: Path, summary: RunSummary) -> None:
    q = cfg.qubit
    params = QubitParams(a=q.a, b=q.b, c=q.c, k=q.k, beta=q.beta)
    spectrum = eigh(qubit_hamiltonian(params))
    oe = to_energy_basis(SIGMA_X, spectrum)
    rho = gibbs(spectrum, q.beta)
    grid = cfg.time.grid()
    curve, mt, ml, ml_liou, ceiling, scales = _autocorr_bundle(oe, rho, grid)
    re, im = curve.values.real, curve.values.imag
    summary.crossovers["tau_c"] = scales["tau_c"]
    summary.margins.update(
        {
            "re_vs_mt_floor": _min_margin(re - mt),
            "re_vs_ml_floor": _min_margin(re - ml),
            "re_vs_ml_floor_liouvillian": _min_margin(re - ml_liou),
            "im_vs_ceiling": _min_margin(ceiling - np.abs(im)),
        }
    )
    path = outdir / "qubit_autocorr.csv"
    write_csv(
        path,
        {
            "scenario": cfg.scenario,
            "a": q.a,
            "b": q.b,
            "c": q.c,
            "k": q.k,
            "beta": q.beta,
            "alpha": alpha_constant(),
            **scales,
        },
        ["t", "re_C", "im_C", "mt_floor", "ml_floor", "ml_floor_liouvillian", "im_ceiling"],
        [grid, re, im, mt, ml, ml_liou, ceiling],
    )
    summary.files.append(str(path))


def _run_goe_autocorr(cfg: ScenarioConfig, outdir: Path, summary: RunSummary) -> None:
    g = cfg.goe
    h, o = sample_goe_pair(GoeSpec(dim=g.dim, sigma=g.sigma, seed=g.seed), g.seed2)
    spectrum = eigh(h)
    oe = to_energy_basis(o, spectrum)
    rho = gibbs(spectrum, g.beta)
    grid = cfg.time.grid()
    curve, mt, ml, _ml_liou, ceiling, scales = _autocorr_bundle(oe, rho, grid)
    c0 = scales["c0"]
    re, im = curve.values.real, curve.values.imag
    summary.seeds = {"seed": g.seed, "seed2": g.seed2}
    summary.crossovers["tau_c"] = scales["tau_c"]
    summary.margins.update(
        {
            "re_vs_mt_floor": _min_margin((re - mt) / c0),
            "re_vs_ml_floor": _min_margin((re - ml) / c0),
            "im_vs_ceiling": _min_margin((ceiling - np.abs(im)) / c0),
        }
    )
    path = outdir / "goe_autocorr.csv"
    write_csv(
        path,
        {
            "scenario": cfg.scenario,
            "dim": g.dim,
            "sigma": g.sigma,
            "seed": g.seed,
            "seed2": g.seed2,
            "beta": g.beta,
            "alpha": alpha_constant(),
            **scales,
        },
        [
            "t",
            "re_C",
            "im_C",
            "mt_floor",
            "ml_floor",
            "im_ceiling",
            "re_C_norm",
            "im_C_norm",
            "mt_floor_norm",
            "ml_floor_norm",
            "im_ceiling_norm",
        ],
        [grid, re, im, mt, ml, ceiling, re / c0, im / c0, mt / c0, ml / c0, ceiling / c0],
    )
    summary.files.append(str(path))


def _run_goe_fidelity(cfg: ScenarioConfig, outdir: Path, summary: RunSummary) -> None:
    g = cfg.goe
    result = goe_fidelity_experiment(g.dim, g.sigma, g.beta, g.seed, cfg.time.grid())
    grid = result.fidelity.grid
    fid = result.fidelity.values
    floor = result.floor.values
    within = grid <= result.tau + 1e-15
    summary.seeds = {"seed": g.seed}
    summary.crossovers["tau"] = result.tau
    summary.margins["fidelity_vs_ml_floor_within_tau"] = _min_margin(fid[within] - floor[within])
    path = outdir / "goe_fidelity.csv"
    write_csv(
        path,
        {
            "scenario": cfg.scenario,
            "dim": g.dim,
            "sigma": g.sigma,
            "seed": g.seed,
            "beta": g.beta,
            "alpha": alpha_constant(),
            "tau": result.tau,
        },
        ["t", "fidelity", "ml_floor"],
        [grid, fid, floor],
    )
    summary.files.append(str(path))


def _run_response_qubit(cfg: ScenarioConfig, outdir: Path, summary: RunSummary) -> None:
    q = cfg.qubit
    variant = cfg.response.variant
    h0 = qubit_hamiltonian(QubitParams(a=q.a, b=q.b, c=q.c, k=q.k, beta=q.beta))
    a_op = v_op = SIGMA_X
    grid = cfg.time.grid()
    chi = susceptibility_curve(a_op, v_op, h0, q.beta, grid)
    heis = heisenberg_ceiling(a_op, v_op, h0, q.beta)
    bog = bogoliubov_ceiling(a_op, v_op, h0, q.beta, variant=variant)
    qsl = qsl_ceiling(v_op, h0, q.beta, grid)
    taus = crossover_times(v_op, a_op, h0, q.beta)
    abs_chi = np.abs(chi.values)
    summary.crossovers.update(
        {"tau_h": taus.tau_h, "tau_b_printed": taus.tau_b, "tau_b_derived": taus.tau_b_derived}
    )
    summary.margins.update(
        {
            "chi_vs_heisenberg": _min_margin(heis - abs_chi),
            "chi_vs_qsl": _min_margin(qsl - abs_chi),
        }
    )
    bog_margin = _min_margin(bog - abs_chi)
    if variant == "derived":
        summary.margins["chi_vs_bogoliubov"] = bog_margin
    else:
        summary.comparison_margins["chi_vs_bogoliubov_as_printed"] = bog_margin
    path = outdir / "response_qubit.csv"
    write_csv(
        path,
        {
            "scenario": cfg.scenario,
            "a": q.a,
            "b": q.b,
            "c": q.c,
            "k": q.k,
            "beta": q.beta,
            "variant": variant,
            "alpha": alpha_constant(),
            "bogoliubov_temperature": bogoliubov_temperature(a_op, v_op, h0, q.beta),
            "tau_qsl": tau_qsl(v_op, h0, q.beta),
            "tau_h": taus.tau_h,
            "tau_b_printed": taus.tau_b,
            "tau_b_derived": taus.tau_b_derived,
        },
        ["t", "chi", "heisenberg_ceiling", "bogoliubov_ceiling", "qsl_ceiling"],
        [grid, chi.values, np.full_like(grid, heis), np.full_like(grid, bog), qsl],
    )
    summary.files.append(str(path))


def _run_qfi_sweep(cfg: ScenarioConfig, outdir: Path, summary: RunSummary) -> None:
    q = cfg.qubit
    params = QubitParams(a=q.a, b=q.b, c=q.c, k=q.k, beta=0.0)
    spectrum = eigh(qubit_hamiltonian(params))
    oe = to_energy_basis(SIGMA_X, spectrum)
    betas = np.array(cfg.qfi.betas)
    spectral = np.empty(betas.size)
    integral = np.empty(betas.size)
    ceiling = np.empty(betas.size)
    cr_floor = np.empty(betas.size)
    max_gap = float(spectrum.max_energy - spectrum.ground_energy)
    for i, beta in enumerate(betas):
        rho = gibbs(spectrum, beta)
        dist = correlation_distribution(oe, rho)
        im_c = lambda t: np.asarray(char_function(dist, t)).imag
        spectral[i] = qfi_spectral(spectrum, beta, SIGMA_X)
        integral[i] = qfi_from_autocorr(im_c, 1.0 / beta, max_gap=max_gap)
        ceiling[i] = qfi_ceiling(SIGMA_X, spectrum, beta)
        cr_floor[i] = cramer_rao_floor(SIGMA_X, spectrum, beta, m=1)
    # route agreement is a validity claim: the calibrated integral must track
    # the spectral oracle to 1e-6 relative, or the run fails loudly
    max_rel = float(np.max(np.abs(integral - spectral) / np.maximum(np.abs(spectral), 1e-12)))
    summary.margins.update(
        {
            "ceiling_vs_spectral": _min_margin(ceiling - spectral),
            "qfi_route_agreement_1e-6": 1e-6 - max_rel,
        }
    )
    path = outdir / "qfi_sweep.csv"
    write_csv(
        path,
        {
            "scenario": cfg.scenario,
            "a": q.a,
            "b": q.b,
            "c": q.c,
            "k": q.k,
            "calibration": INTEGRAL_CALIBRATION,
        },
        ["beta", "qfi_spectral", "qfi_integral", "qfi_ceiling", "cramer_rao_floor"],
        [betas, spectral, integral, ceiling, cr_floor],
    )
    summary.files.append(str(path))


def _run_custom_matrix(cfg: ScenarioConfig, outdir: Path, summary: RunSummary) -> None:
    cu = cfg.custom
    try:
        h = np.loadtxt(cu.h_file, delimiter=",", dtype=complex, ndmin=2)
        o = np.loadtxt(cu.o_file, delimiter=",", dtype=complex, ndmin=2)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot load custom matrices: {exc}") from exc
    if h.shape != o.shape or h.shape[0] != h.shape[1]:
        raise ConfigError(
            f"custom matrices must be square and matching, got {h.shape} and {o.shape}"
        )
    spectrum = eigh(h)
    oe = to_energy_basis(o, spectrum)
    rho = gibbs(spectrum, cu.beta)
    grid = cfg.time.grid()
    curve, mt, ml, ml_liou, ceiling, scales = _autocorr_bundle(oe, rho, grid)
    re, im = curve.values.real, curve.values.imag
    summary.crossovers["tau_c"] = scales["tau_c"]
    summary.margins.update(
        {
            "re_vs_mt_floor": _min_margin(re - mt),
            "re_vs_ml_floor": _min_margin(re - ml),
            "im_vs_ceiling": _min_margin(ceiling - np.abs(im)),
        }
    )
    path = outdir / "custom_matrix.csv"
    write_csv(
        path,
        {
            "scenario": cfg.scenario,
            "h_file": cu.h_file,
            "o_file": cu.o_file,
            "dim": h.shape[0],
            "beta": cu.beta,
            "alpha": alpha_constant(),
            **scales,
        },
        ["t", "re_C", "im_C", "mt_floor", "ml_floor", "ml_floor_liouvillian", "im_ceiling"],
        [grid, re, im, mt, ml, ml_liou, ceiling],
    )
    summary.files.append(str(path))


_RUNNERS = {
    "qubit_autocorr": _run_qubit_autocorr,
    "goe_autocorr": _run_goe_autocorr,
    "goe_fidelity": _run_goe_fidelity,
    "response_qubit": _run_response_qubit,
    "qfi_sweep": _run_qfi_sweep,
    "custom_matrix": _run_custom_matrix,
}


def run_scenario(cfg: ScenarioConfig, out_override: str | None = None) -> RunSummary:
    """Execute a scenario, write its CSV files and ``summary.json``.

    Raises
    ------
    BoundViolationError
        If any validity-claimed margin falls below the tolerance; the summary
        is still written first so the margins can be inspected.
    """
    started = _time.perf_counter()
    outdir = Path(out_override) if out_override else Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    summary = RunSummary(scenario=cfg.scenario, alpha=alpha_constant())
    _RUNNERS[cfg.scenario](cfg, outdir, summary)
    summary.violation_count = sum(1 for m in summary.margins.values() if m < -VIOLATION_TOL)
    summary.wall_time_s = _time.perf_counter() - started
    with open(outdir / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    if summary.violation_count:
        worst = min(summary.margins.items(), key=lambda kv: kv[1])
        raise BoundViolationError(
            f"{summary.violation_count} bound violation(s); worst margin "
            f"{worst[1]:.3e} on {worst[0]} (see {outdir / 'summary.json'})"
        )
    return summary
