"""Orchestration: full simulation runs, convergence studies, self-verification.

These are the code paths behind the command-line subcommands.  They operate
on a :class:`~nlac.config.RunConfig` and write their delimited output, image
snapshots, and figures into the configured output directory.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .config import RunConfig
from .diagnostics import StepRecord, make_record, steady_state_reached, write_diagnostics_csv
from .grid import Grid2D, make_grid, norm_inf, norm_l2
from .initial import init_cosine, init_random, init_rings
from .kernel import gaussian_kernel, validate_kernel
from .nonlocal_op import NonlocalOperator
from .potential import Potential, check_stabilized_bound, default_params, flory_huggins
from .report import (
    save_bounds_figure,
    save_convergence_figure,
    save_energy_figure,
    save_field_png,
    snapshot_name,
    write_pgm,
)
from .scheme import (
    SEMI_IMPLICIT,
    MbpWarning,
    SchemeConfig,
    SesavState,
    advance,
    init_state,
    mbp_max_tau,
    step_fn,
)

__all__ = [
    "RunResult",
    "ConvergenceRow",
    "ConvergenceStudy",
    "VerifyCheck",
    "VerifyReport",
    "build_problem",
    "initial_field",
    "run_simulation",
    "run_convergence",
    "verify",
]


def build_potential(cfg: RunConfig) -> Potential:
    if cfg.potential_kind == "flory-huggins":
        pot = flory_huggins(cfg.theta, cfg.theta_c)
    else:
        pot = default_params(cfg.potential_kind)
    if cfg.kappa_override is not None and cfg.kappa_override < pot.f_lip:
        warnings.warn(
            f"kappa override {cfg.kappa_override} is below the Lipschitz bound "
            f"{pot.f_lip:.6g}; bound preservation is not guaranteed",
            MbpWarning,
            stacklevel=2,
        )
    return pot


def build_problem(
    cfg: RunConfig,
) -> tuple[Grid2D, NonlocalOperator, Potential, SchemeConfig]:
    """Assemble grid, operator, potential, and scheme settings from a config."""
    grid = make_grid(cfg.L, cfg.N)
    op = NonlocalOperator(gaussian_kernel(cfg.delta, grid), grid)
    pot = build_potential(cfg)
    scfg = SchemeConfig(
        tau=cfg.tau,
        eps=cfg.eps,
        potential=pot,
        order=cfg.order,
        predictor=cfg.predictor,
        kappa=cfg.kappa_override,
    )
    return grid, op, pot, scfg


def initial_field(cfg: RunConfig, grid: Grid2D) -> np.ndarray:
    """Build the configured initial condition, times the optional init.scale."""
    if cfg.init_kind == "cosine":
        phi0 = init_cosine(grid)
    elif cfg.init_kind == "rings":
        phi0 = init_rings(grid, cfg.eps, cfg.R1, cfg.R2, cfg.center_x, cfg.center_y)
    elif cfg.init_kind == "random":
        phi0 = init_random(grid, cfg.amplitude, cfg.seed)
    else:
        raise ValueError(f"unknown initial condition {cfg.init_kind!r}")
    return cfg.scale * phi0


@dataclass(frozen=True)
class RunResult:
    config: RunConfig
    records: tuple[StepRecord, ...]
    final_state: SesavState
    steady_reached: bool
    mbp_violated: bool
    output_dir: Path | None


def _check_tau_cap(cfg: RunConfig, scfg: SchemeConfig, grid: Grid2D) -> None:
    if cfg.order != 2:
        return
    cap = mbp_max_tau(scfg, grid)
    if cfg.tau <= cap:
        return
    msg = (
        f"tau = {cfg.tau} exceeds the second-order bound-preserving cap "
        f"{cap:.6g}; the maximum bound principle is not guaranteed"
    )
    if cfg.strict_mbp_tau:
        raise ValueError(msg)
    warnings.warn(msg, MbpWarning, stacklevel=2)


def _step_count(T: float, tau: float) -> int:
    # runs an integer number of steps; T is expected to be a multiple of tau
    n = int(round(T / tau))
    if abs(n * tau - T) > 1e-9 * max(1.0, T):
        n = math.ceil(T / tau - 1e-12)
    return max(n, 0)


def run_simulation(cfg: RunConfig, write_outputs: bool = True) -> RunResult:
    """Advance the configured problem to T_final (or a steady state).

    Appends one diagnostics record per step; writes selected snapshots as
    16-bit PGM plus rendered PNG; on completion writes the diagnostics CSV,
    the energy and bound-history figures, and a plain-text summary.
    """
    grid, op, pot, scfg = build_problem(cfg)
    _check_tau_cap(cfg, scfg, grid)

    outdir: Path | None = None
    if write_outputs:
        outdir = Path(cfg.output_dir)
        outdir.mkdir(parents=True, exist_ok=True)

    state = init_state(initial_field(cfg, grid), pot, grid)
    records = [make_record(0.0, state, pot, op, cfg.eps)]

    n_steps = _step_count(cfg.T_final, cfg.tau)
    snap_steps: dict[int, list[float]] = {}
    for t_snap in cfg.snapshot_times:
        k = min(max(int(round(t_snap / cfg.tau)), 0), n_steps)
        snap_steps.setdefault(k, []).append(t_snap)

    def emit_snapshots(step_idx: int, phi: np.ndarray) -> None:
        if outdir is None:
            return
        for t_snap in snap_steps.get(step_idx, ()):
            stem = snapshot_name(t_snap)
            write_pgm(phi, pot.beta, outdir / f"{stem}.pgm")
            save_field_png(phi, grid, pot.beta, t_snap, outdir / f"{stem}.png")

    emit_snapshots(0, state.phi)

    step = step_fn(scfg)
    steady = False
    for k in range(1, n_steps + 1):
        state = step(state, scfg, op)
        records.append(make_record(k * cfg.tau, state, pot, op, cfg.eps))
        emit_snapshots(k, state.phi)
        if cfg.steady_stop and steady_state_reached(
            records[-1].e_modified, records[-2].e_modified, cfg.steady_threshold
        ):
            steady = True
            break

    mbp_violated = any(r.sup > pot.beta + 1e-12 for r in records)
    result = RunResult(
        config=cfg,
        records=tuple(records),
        final_state=state,
        steady_reached=steady,
        mbp_violated=mbp_violated,
        output_dir=outdir,
    )
    if outdir is not None:
        write_diagnostics_csv(records, outdir / "diagnostics.csv")
        save_energy_figure(records, outdir / "energy.png")
        save_bounds_figure(records, pot.beta, outdir / "bounds.png")
        (outdir / "summary.txt").write_text(summary_text(result))
    return result


def summary_text(result: RunResult) -> str:
    """Human-readable run summary, also written to summary.txt."""
    records = result.records
    first, last = records[0], records[-1]
    emod = [r.e_modified for r in records]
    eorig = [r.e_original for r in records]
    lines = [
        f"final_time = {last.t:.17g}",
        f"steps = {last.step}",
        f"final_sup_norm = {last.sup:.17g}",
        f"final_min = {last.min:.17g}",
        f"final_max = {last.max:.17g}",
        f"energy_original_first = {first.e_original:.17g}",
        f"energy_original_last = {last.e_original:.17g}",
        f"energy_modified_first = {first.e_modified:.17g}",
        f"energy_modified_last = {last.e_modified:.17g}",
        f"energy_modified_min = {min(emod):.17g}",
        f"energy_modified_max = {max(emod):.17g}",
        f"energy_original_min = {min(eorig):.17g}",
        f"energy_original_max = {max(eorig):.17g}",
        f"steady_reached = {str(result.steady_reached).lower()}",
        f"mbp_violated = {str(result.mbp_violated).lower()}",
    ]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ConvergenceRow:
    tau: float
    error1: float
    rate1: float | None
    error2: float
    rate2: float | None


@dataclass(frozen=True)
class ConvergenceStudy:
    rows: tuple[ConvergenceRow, ...]
    k_ref: int
    T: float


def _rate(e_prev: float, e_cur: float, tau_prev: float, tau_cur: float) -> float:
    if tau_prev == tau_cur:
        return 0.0
    return float(np.log2(e_prev / e_cur) / np.log2(tau_prev / tau_cur))


def run_convergence(
    cfg: RunConfig,
    k_list: Sequence[int] = (5, 6, 7, 8, 9, 10),
    k_ref: int = 15,
    progress: Callable[[str], None] | None = None,
) -> ConvergenceStudy:
    """Temporal self-convergence study against a fine reference solution.

    The reference is the second-order scheme with the semi-implicit predictor
    at tau = T / 2**k_ref.  For every k in k_list, both schemes advance to T
    with tau = T / 2**k and the discrete L2 error at T is recorded; observed
    orders come from consecutive error ratios.
    """
    if sorted(k_list) != list(k_list):
        raise ValueError(f"k_list must be increasing, got {k_list!r}")
    if k_ref <= max(k_list):
        raise ValueError(f"k_ref = {k_ref} must exceed max(k_list) = {max(k_list)}")
    say = progress or (lambda _msg: None)

    grid, op, pot, _ = build_problem(cfg)
    state0 = init_state(initial_field(cfg, grid), pot, grid)
    T = cfg.T_final

    def scheme_cfg(order: int, tau: float) -> SchemeConfig:
        return SchemeConfig(
            tau=tau,
            eps=cfg.eps,
            potential=pot,
            order=order,
            predictor=cfg.predictor,
            kappa=cfg.kappa_override,
        )

    say(f"reference: order 2, 2^{k_ref} steps")
    ref_cfg = SchemeConfig(
        tau=T / 2 ** k_ref,
        eps=cfg.eps,
        potential=pot,
        order=2,
        predictor=SEMI_IMPLICIT,
        kappa=cfg.kappa_override,
    )
    phi_ref = advance(state0, ref_cfg, op, 2 ** k_ref).phi

    errors: dict[int, list[float]] = {1: [], 2: []}
    taus = [T / 2 ** k for k in k_list]
    for k, tau in zip(k_list, taus):
        for order in (1, 2):
            final = advance(state0, scheme_cfg(order, tau), op, 2 ** k)
            err = norm_l2(final.phi - phi_ref, grid)
            errors[order].append(err)
            say(f"order {order}, tau = T/2^{k}: error = {err:.4e}")

    rows = []
    for i, tau in enumerate(taus):
        rates = {}
        for order in (1, 2):
            if i == 0:
                rates[order] = None
            else:
                rates[order] = _rate(errors[order][i - 1], errors[order][i], taus[i - 1], tau)
        rows.append(
            ConvergenceRow(
                tau=tau,
                error1=errors[1][i],
                rate1=rates[1],
                error2=errors[2][i],
                rate2=rates[2],
            )
        )
    return ConvergenceStudy(rows=tuple(rows), k_ref=k_ref, T=T)


def write_convergence_outputs(study: ConvergenceStudy, outdir: str | Path) -> Path:
    """Write the study as CSV (mirroring the benchmark table layout) plus a figure."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / "convergence.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["tau", "sesav1_error", "sesav1_rate", "sesav2_error", "sesav2_rate"])
        for row in study.rows:
            writer.writerow(
                [
                    f"{row.tau:.17g}",
                    f"{row.error1:.6e}",
                    "-" if row.rate1 is None else f"{row.rate1:.4f}",
                    f"{row.error2:.6e}",
                    "-" if row.rate2 is None else f"{row.rate2:.4f}",
                ]
            )
    save_convergence_figure(
        [row.tau for row in study.rows],
        {
            "order 1": [row.error1 for row in study.rows],
            "order 2": [row.error2 for row in study.rows],
        },
        outdir / "convergence.png",
    )
    return csv_path


@dataclass(frozen=True)
class VerifyCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[VerifyCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify(cfg: RunConfig) -> VerifyReport:
    """Self-checks of the discretization on a small grid.

    Covers the kernel admissibility conditions, agreement of the spectral
    operator with its dense assembly, the infinity-norm resolvent bound
    (a*I + L)^-1 with ratio at most 1/a, agreement of the direct and
    conjugate-gradient shifted solves, and the stabilized-reaction bound.
    """
    if cfg.N > 32:
        raise ValueError(f"verification uses dense assembly and needs N <= 32, got N={cfg.N}")
    grid = make_grid(cfg.L, cfg.N)
    table = gaussian_kernel(cfg.delta, grid)
    op = NonlocalOperator(table, grid)
    pot = build_potential(cfg)
    rng = np.random.default_rng(cfg.seed)
    checks: list[VerifyCheck] = []

    for cond in validate_kernel(table).conditions:
        checks.append(
            VerifyCheck(
                name=f"kernel-{cond.name}",
                passed=cond.passed,
                detail=f"violation = {cond.violation:.3e}",
            )
        )

    dense = op.dense_matrix()
    worst = 0.0
    for _ in range(10):
        u = rng.uniform(-1.0, 1.0, size=(cfg.N, cfg.N))
        direct = op.apply(u)
        ref = (dense @ u.ravel()).reshape(cfg.N, cfg.N)
        # relative to the operator scale: under-resolved kernels cancel almost
        # completely, so the output norm is not a usable reference
        scale = table.mass * norm_l2(u, grid)
        worst = max(worst, norm_l2(direct - ref, grid) / scale)
    checks.append(
        VerifyCheck(
            name="spectral-vs-dense",
            passed=worst <= 1e-12,
            detail=f"max relative error = {worst:.3e}",
        )
    )

    for a in (0.1, 1.0, 10.0):
        worst = 0.0
        for _ in range(100):
            r = rng.uniform(-1.0, 1.0, size=(cfg.N, cfg.N))
            w = op.solve_shifted(a, 1.0, r)
            worst = max(worst, norm_inf(w) / norm_inf(r))
        checks.append(
            VerifyCheck(
                name=f"resolvent-bound-a={a:g}",
                passed=worst <= 1.0 / a + 1e-10,
                detail=f"max amplification = {worst:.12g}, bound = {1.0 / a:g}",
            )
        )

    r = rng.uniform(-1.0, 1.0, size=(cfg.N, cfg.N))
    direct = op.solve_shifted(1.0, cfg.eps ** 2, r)
    iterative = op.solve_shifted_cg(1.0, cfg.eps ** 2, r)
    rel = norm_l2(direct - iterative, grid) / max(norm_l2(direct, grid), 1e-300)
    checks.append(
        VerifyCheck(
            name="direct-vs-cg-solve",
            passed=rel <= 1e-10,
            detail=f"relative difference = {rel:.3e}",
        )
    )

    bound = check_stabilized_bound(pot)
    checks.append(
        VerifyCheck(
            name="stabilized-reaction-bound",
            passed=bound.passed,
            detail=f"max |f + kappa id| = {bound.max_abs:.12g}, bound = {bound.bound:.12g}",
        )
    )
    return VerifyReport(checks=tuple(checks))
