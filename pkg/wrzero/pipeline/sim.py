"""Simulate pipeline stage - integrate the mass-action ODE and certify its dynamics.

Certification checks what a complex-balanced system must do: the entropy-like
Lyapunov function never increases, conservation laws hold, and the trajectory
settles on the steady state of its invariant polyhedron.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import RK45

from wrzero.config import get_settings
from wrzero.model.graph import PolySystem
from wrzero.pipeline.steady import (
    ConservationBasis,
    build_DJ,
    conservation_laws,
    solve_steady,
    steady_state_in_polyhedron,
)
from wrzero.pipeline.wr0 import Realization

logger = logging.getLogger(__name__)

# RK45 evaluates the right-hand side twice during setup and six times per step attempt
_SETUP_EVALUATIONS = 2
_EVALUATIONS_PER_ATTEMPT = 6


class IntegrationError(RuntimeError):
    """The integrator could not produce a trajectory up to t_end."""


class PositivityError(IntegrationError):
    def __init__(self, time: float, state: np.ndarray, floor: float):
        self.time = time
        self.state = np.array(state)
        super().__init__(
            f"State left the positive orthant at t={time:.6g}: "
            f"{np.array2string(self.state, precision=3)} has a coordinate below {floor:g}"
        )


@dataclass(frozen=True)
class StepStats:
    accepted: int
    rejected: int


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    step_stats: StepStats

    @property
    def terminal_state(self) -> np.ndarray:
        return self.states[-1]


def integrate(
    sys: PolySystem,
    x0: np.ndarray,
    t_end: float,
    rel_tol: Optional[float] = None,
) -> Trajectory:
    """
    Adaptive Dormand-Prince integration from x0 over [0, t_end].

    Every accepted state is recorded. Raises PositivityError as soon as a
    coordinate drops below the positivity floor, IntegrationError on step-size
    underflow or when the step budget runs out.
    """
    settings = get_settings()
    rel_tol = settings.rel_tol if rel_tol is None else rel_tol
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (sys.n,):
        raise ValueError(f"x0 must have {sys.n} entries, got shape {x0.shape}")
    if np.any(x0 <= 0):
        raise ValueError("x0 must be strictly positive")
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    if not 1e-12 < rel_tol < 1e-2:
        raise ValueError(f"rel_tol must lie in (1e-12, 1e-2), got {rel_tol}")

    solver = RK45(
        lambda t, x: sys.evaluate(x), 0.0, x0, t_end, rtol=rel_tol, atol=settings.abs_tol
    )
    times, states = [0.0], [x0.copy()]
    while solver.status == "running":
        if len(times) > settings.max_steps:
            raise IntegrationError(f"Step budget of {settings.max_steps} exhausted at t={solver.t:.6g}")
        message = solver.step()
        if solver.status == "failed":
            raise IntegrationError(f"Integration failed at t={solver.t:.6g}: {message}")
        if np.any(solver.y < settings.positivity_floor):
            raise PositivityError(solver.t, solver.y, settings.positivity_floor)
        times.append(solver.t)
        states.append(solver.y.copy())

    accepted = len(times) - 1
    attempts = (solver.nfev - _SETUP_EVALUATIONS) // _EVALUATIONS_PER_ATTEMPT
    stats = StepStats(accepted, max(0, attempts - accepted))
    logger.info("Integrated to t=%g: %d accepted, %d rejected steps", t_end, stats.accepted, stats.rejected)
    return Trajectory(np.array(times), np.array(states), stats)


def lyapunov_value(x: np.ndarray, x_star: np.ndarray) -> float:
    """L(x) = sum x_i (ln x_i - ln x*_i - 1)."""
    x = np.asarray(x, dtype=float)
    x_star = np.asarray(x_star, dtype=float)
    if np.any(x <= 0) or np.any(x_star <= 0):
        raise ValueError("the Lyapunov function is defined for positive states only")
    return float(np.sum(x * (np.log(x) - np.log(x_star) - 1.0)))


@dataclass(frozen=True)
class CertificationReport:
    lyapunov_monotone: bool
    max_lyapunov_increase: float
    conservation_laws: ConservationBasis
    conservation_drift: np.ndarray
    conserved: bool
    x_star: np.ndarray
    terminal_distance: float
    converged: bool
    trajectory: Trajectory = field(repr=False)
    lyapunov: np.ndarray = field(repr=False)

    @property
    def step_stats(self) -> StepStats:
        return self.trajectory.step_stats


def certify(
    sys: PolySystem,
    realization: Realization,
    x0: np.ndarray,
    t_end: Optional[float] = None,
    rel_tol: Optional[float] = None,
) -> CertificationReport:
    """Integrate from x0 and compare against the steady state of x0's invariant polyhedron."""
    settings = get_settings()
    t_end = settings.t_end if t_end is None else t_end
    x0 = np.asarray(x0, dtype=float)

    param = solve_steady(*build_DJ(realization))
    laws = conservation_laws(sys)
    x_star = steady_state_in_polyhedron(param, laws, x0)
    trajectory = integrate(sys, x0, t_end, rel_tol)

    lyapunov = np.array([lyapunov_value(x, x_star) for x in trajectory.states])
    increase = float(max(0.0, np.max(np.diff(lyapunov), initial=0.0)))
    slack = settings.lyapunov_slack * abs(lyapunov[0])

    if len(laws):
        V = laws.as_array()
        drift = np.max(np.abs((trajectory.states - x0) @ V), axis=0)
    else:
        drift = np.zeros(0)

    distance = float(np.max(np.abs(trajectory.terminal_state - x_star)))
    report = CertificationReport(
        lyapunov_monotone=increase <= slack,
        max_lyapunov_increase=increase,
        conservation_laws=laws,
        conservation_drift=drift,
        conserved=bool(np.all(drift <= settings.conservation_tolerance)),
        x_star=x_star,
        terminal_distance=distance,
        converged=distance < settings.convergence_tolerance,
        trajectory=trajectory,
        lyapunov=lyapunov,
    )
    if not report.lyapunov_monotone:
        logger.warning("Lyapunov function increased by %.3e (slack %.3e)", increase, slack)
    return report
