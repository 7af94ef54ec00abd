"""wrzero command-line interface.

Exit codes: 0 success, 2 when the system has no WR0 realization, 1 on
input, file or numerical errors.
"""

import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import Optional, Union

import numpy as np

from wrzero.config import get_settings
from wrzero.model.graph import PolySystem
from wrzero.model.parser import load_system
from wrzero.pipeline.check import check_system
from wrzero.pipeline.sim import IntegrationError, certify
from wrzero.pipeline.steady import (
    SteadyStateError,
    build_DJ,
    complex_balance_residual,
    relative_field_residual,
    solve_steady,
)
from wrzero.pipeline.wr0 import FailureReason, Realization, find_wr0
from wrzero.renderers import BaseRenderer, available_formats, get_renderer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_REALIZATION = 2


def _status(message: str) -> None:
    print(message, file=sys.stderr)


def _realize(sys_: PolySystem, renderer: BaseRenderer) -> Union[Realization, int]:
    """The realization, or the exit code after reporting the failure."""
    result = find_wr0(sys_)
    if isinstance(result, FailureReason):
        print(renderer.render_failure(result))
        _status(f"✗ No WR0 realization: {result}")
        return EXIT_NO_REALIZATION
    return result


def cmd_check(args, renderer: BaseRenderer) -> int:
    """Consistency verdict, extreme rays and conservation laws."""
    report = check_system(load_system(args.input))
    print(renderer.render_check(report))
    verdict = "consistent" if report.consistent else "inconsistent (no positive steady states)"
    _status(f"✓ Checked {report.m} monomials in {report.n} variables: {verdict}")
    return EXIT_OK


def cmd_realize(args, renderer: BaseRenderer) -> int:
    """Find the WR0 realization."""
    result = _realize(load_system(args.input), renderer)
    if isinstance(result, int):
        return result
    print(renderer.render_realization(result))
    _status(
        f"✓ WR0 realization with {len(result.graph.edges)} edges "
        f"and {len(result.components)} connected components"
    )
    return EXIT_OK


def _sample_residual(system: PolySystem, realization: Realization, x: np.ndarray) -> float:
    """Larger of the field and complex-balance residuals, relative to the monomial flux at x."""
    balance = float(np.max(np.abs(complex_balance_residual(realization, x))))
    return max(relative_field_residual(system, x), balance / system.flux_scale(x))


def cmd_steady_states(args, renderer: BaseRenderer) -> int:
    """Parametrize the positive steady states and verify sampled points."""
    settings = get_settings()
    system = load_system(args.input)
    result = _realize(system, renderer)
    if isinstance(result, int):
        return result
    param = solve_steady(*build_DJ(result))
    samples = param.sample_points(seed=args.seed)
    worst = max(_sample_residual(system, result, x) for x in samples)
    print(renderer.render_steady(param, samples))
    if worst > settings.field_tolerance:
        _status(f"✗ Sampled steady states leave a relative residual of {worst:.2e}")
        return EXIT_ERROR
    _status(
        f"✓ Steady states exp(z* + ker D), dim ker D = {len(param.kernel)}; "
        f"{len(samples)} samples verified (max relative residual {worst:.1e})"
    )
    return EXIT_OK


def _parse_x0(text: str, n: int) -> np.ndarray:
    try:
        x0 = np.array([float(v) for v in text.split(",")], dtype=float)
    except ValueError as e:
        raise ValueError(f"--x0 must be comma-separated numbers: {e}") from e
    if x0.shape != (n,):
        raise ValueError(f"--x0 has {len(x0)} entries but the system has {n} variables")
    return x0


def _write_trajectory(path: Path, report, n: int) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["t", *(f"x{k + 1}" for k in range(n)), "L"])
        trajectory = report.trajectory
        for t, x, value in zip(trajectory.times, trajectory.states, report.lyapunov):
            writer.writerow([repr(float(t)), *(repr(float(v)) for v in x), repr(float(value))])


def cmd_simulate(args, renderer: BaseRenderer) -> int:
    """Integrate from x0 and certify the complex-balanced dynamics."""
    settings = get_settings()
    system = load_system(args.input)
    x0 = _parse_x0(args.x0, system.n)
    result = _realize(system, renderer)
    if isinstance(result, int):
        return result
    t_end = args.t_end if args.t_end is not None else settings.t_end
    report = certify(system, result, x0, t_end=t_end, rel_tol=args.rel_tol)
    _write_trajectory(Path(args.trajectory), report, system.n)
    print(renderer.render_certification(report))
    stats = report.step_stats
    _status(f"✓ Trajectory written to {args.trajectory} ({stats.accepted} steps, {stats.rejected} rejected)")
    if report.lyapunov_monotone and report.converged and report.conserved:
        _status(f"✓ Converged to x* within {report.terminal_distance:.1e}; Lyapunov function monotone")
    else:
        _status(
            f"✗ Certification incomplete: monotone={report.lyapunov_monotone}, "
            f"converged={report.converged}, conserved={report.conserved} (distance {report.terminal_distance:.1e})"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="Polynomial system (text grammar or JSON document)")
    common.add_argument(
        "--format", "-f",
        choices=available_formats(),
        default=settings.output_format,
        help="Output format (default: %(default)s)",
    )
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")

    parser = argparse.ArgumentParser(
        prog="wrzero-cli",
        description="Weakly reversible deficiency-zero realizations of polynomial systems",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # check
    parser_check = subparsers.add_parser("check", parents=[common], help="Consistency and extreme rays")
    parser_check.set_defaults(func=cmd_check)

    # realize
    parser_realize = subparsers.add_parser("realize", parents=[common], help="Find the WR0 realization")
    parser_realize.set_defaults(func=cmd_realize)

    # steady-states
    parser_steady = subparsers.add_parser(
        "steady-states", parents=[common], help="Parametrize the positive steady states"
    )
    parser_steady.add_argument(
        "--seed", type=int, default=settings.seed, help="Seed for sub-sampling the kernel grid"
    )
    parser_steady.set_defaults(func=cmd_steady_states)

    # simulate
    parser_sim = subparsers.add_parser("simulate", parents=[common], help="Integrate and certify")
    parser_sim.add_argument("--x0", required=True, help="Initial state, comma-separated")
    parser_sim.add_argument("--t-end", type=float, default=None, help="End time")
    parser_sim.add_argument("--rel-tol", type=float, default=None, help="Relative tolerance")
    parser_sim.add_argument(
        "--trajectory", default="trajectory.csv", help="CSV path for t,x1..xn,L (default: %(default)s)"
    )
    parser_sim.set_defaults(func=cmd_simulate)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_ERROR

    settings = get_settings()
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level.upper(),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return args.func(args, get_renderer(args.format))
    except (OSError, ValueError, SteadyStateError, IntegrationError) as e:
        _status(f"✗ {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
