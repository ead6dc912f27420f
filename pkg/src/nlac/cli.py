"""Command-line interface.

Three subcommands, each driven by a config file in the flat key/value format
described in :mod:`nlac.config`:

* ``run``       advance a simulation, writing diagnostics, snapshots, figures
* ``converge``  temporal convergence study against a fine reference
* ``verify``    discretization self-checks on a small grid
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .config import load_config, with_overrides
from .runner import run_convergence, run_simulation, verify, write_convergence_outputs

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlac",
        description="Nonlocal Allen-Cahn solver with certified energy decay and bound preservation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("config", help="path to a key/value config file")
        p.add_argument("--output-dir", help="override run.output_dir")
        p.add_argument("--seed", type=int, help="override init.seed")

    run_p = sub.add_parser("run", help="advance a simulation and write its outputs")
    add_common(run_p)
    run_p.add_argument(
        "--strict-mbp-tau",
        action="store_true",
        help="make the second-order bound-preserving step-size cap a hard error",
    )
    run_p.add_argument(
        "--snapshot-every",
        type=float,
        metavar="DT",
        help="add snapshots at every multiple of DT up to T_final",
    )

    conv_p = sub.add_parser("converge", help="temporal convergence study")
    add_common(conv_p)
    conv_p.add_argument(
        "--k-min", type=int, default=5, help="coarsest refinement level (tau = T/2^k)"
    )
    conv_p.add_argument(
        "--k-max", type=int, default=10, help="finest refinement level (tau = T/2^k)"
    )
    conv_p.add_argument(
        "--k-ref", type=int, default=15, help="reference refinement level"
    )

    ver_p = sub.add_parser("verify", help="discretization self-checks (needs N <= 32)")
    add_common(ver_p)
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    cfg = with_overrides(cfg, output_dir=args.output_dir, seed=args.seed)
    if args.strict_mbp_tau:
        cfg = with_overrides(cfg, strict_mbp_tau=True)
    if args.snapshot_every is not None:
        dt = args.snapshot_every
        if not dt > 0.0:
            print(f"--snapshot-every must be positive, got {dt}", file=sys.stderr)
            return 2
        extra = np.arange(0.0, cfg.T_final + 0.5 * dt, dt)
        times = tuple(sorted(set(cfg.snapshot_times) | set(float(t) for t in extra)))
        cfg = with_overrides(cfg, snapshot_times=times)

    result = run_simulation(cfg)
    last = result.records[-1]
    print(f"completed {last.step} steps to t = {last.t:g}")
    print(f"sup norm {last.sup:.6g}, modified energy {last.e_modified:.9g}")
    if result.steady_reached:
        print("steady state reached")
    if result.mbp_violated:
        print("WARNING: maximum bound principle violated during the run")
    print(f"outputs in {result.output_dir}")
    return 0


def _cmd_converge(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    cfg = with_overrides(cfg, output_dir=args.output_dir, seed=args.seed)
    k_list = list(range(args.k_min, args.k_max + 1))
    study = run_convergence(cfg, k_list=k_list, k_ref=args.k_ref, progress=print)
    csv_path = write_convergence_outputs(study, cfg.output_dir)
    print(f"table written to {csv_path}")
    for row in study.rows:
        r1 = "-" if row.rate1 is None else f"{row.rate1:.4f}"
        r2 = "-" if row.rate2 is None else f"{row.rate2:.4f}"
        print(
            f"tau = {row.tau:.6e}  order1: {row.error1:.4e} ({r1})  "
            f"order2: {row.error2:.4e} ({r2})"
        )
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    cfg = with_overrides(cfg, output_dir=args.output_dir, seed=args.seed)
    report = verify(cfg)
    for check in report.checks:
        status = "ok  " if check.passed else "FAIL"
        print(f"{status} {check.name}: {check.detail}")
    if not report.passed:
        print("verification FAILED", file=sys.stderr)
        return 1
    print("all checks passed")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"run": _cmd_run, "converge": _cmd_converge, "verify": _cmd_verify}
    try:
        return handlers[args.command](args)
    except (ValueError, OverflowError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
