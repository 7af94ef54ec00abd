"""Steady-states pipeline stage - the positive steady-state set exp(z* + ker D).

For a WR0 realization the positive steady states are exactly the solutions
of the log-linear system Dz = J built from the component vertices and the
extreme rays; every one of them is complex-balanced.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from wrzero.config import get_settings
from wrzero.model.graph import PolySystem, difference, monomial_values
from wrzero.pipeline.wr0 import Realization
from wrzero.ratmat import RatMatrix, RatVector, integer_primitive, kernel_basis

logger = logging.getLogger(__name__)


class SteadyStateError(RuntimeError):
    """The steady-state solve did not reach its tolerance."""


@dataclass(frozen=True)
class ConservationBasis:
    """Integer basis of {v : v^T W = 0}; v^T x is constant along trajectories."""

    vectors: tuple[tuple[int, ...], ...]
    n: int

    def __len__(self) -> int:
        return len(self.vectors)

    def as_array(self) -> np.ndarray:
        """n x k matrix with the laws as columns."""
        return np.array(self.vectors, dtype=float).reshape(len(self.vectors), self.n).T

    def values(self, x: np.ndarray) -> np.ndarray:
        return self.as_array().T @ np.asarray(x, dtype=float)


@dataclass(frozen=True)
class SteadyStateParam:
    D: RatMatrix
    J: np.ndarray
    z_star: np.ndarray
    kernel: tuple[RatVector, ...]
    residual: float

    @property
    def n(self) -> int:
        return self.D.cols

    def kernel_matrix(self) -> np.ndarray:
        """n x k float matrix with the kernel basis as columns."""
        return np.array(
            [[float(x) for x in v] for v in self.kernel], dtype=float
        ).reshape(len(self.kernel), self.n).T

    def point(self, t: Sequence[float]) -> np.ndarray:
        """exp(z* + K t), a positive steady state for any real t."""
        t = np.asarray(t, dtype=float).reshape(len(self.kernel))
        return np.exp(self.z_star + self.kernel_matrix() @ t)

    def sample_points(
        self,
        grid: Optional[Sequence[float]] = None,
        max_points: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> list[np.ndarray]:
        """
        Steady states on the grid^k of kernel parameters. Beyond max_points a
        seeded random subset is taken, keeping grid order.
        """
        settings = get_settings()
        grid = tuple(settings.sample_grid if grid is None else grid)
        max_points = settings.max_sample_points if max_points is None else max_points
        seed = settings.seed if seed is None else seed
        parameters = list(itertools.product(grid, repeat=len(self.kernel)))
        if len(parameters) > max_points:
            rng = np.random.default_rng(seed)
            keep = sorted(rng.choice(len(parameters), size=max_points, replace=False))
            parameters = [parameters[i] for i in keep]
        return [self.point(t) for t in parameters]


def build_DJ(r: Realization) -> tuple[RatMatrix, np.ndarray]:
    """
    Stack, per component in order, the rows y_j - y_base and the entries
    ln(c_j / c_base), where the base is the smallest index of the component
    and c is the extreme ray supported on it.
    """
    vertices = r.graph.vertices
    n = r.graph.n
    rows: list[RatVector] = []
    logs: list[float] = []
    for block in r.components:
        ray = r.generators.ray_supported_on(block)
        base, *others = block
        for j in others:
            rows.append(difference(vertices[j], vertices[base]))
            logs.append(math.log(ray[j]) - math.log(ray[base]))
    return RatMatrix.from_rows(rows, cols=n), np.array(logs, dtype=float)


def solve_steady(D: RatMatrix, J: np.ndarray, tolerance: Optional[float] = None) -> SteadyStateParam:
    """Minimum-norm solution z* of Dz = J and the exact kernel of D."""
    tolerance = get_settings().steady_tolerance if tolerance is None else tolerance
    J = np.asarray(J, dtype=float)
    if D.rows != len(J):
        raise ValueError(f"D has {D.rows} rows but J has {len(J)} entries")
    Df = D.to_float()
    if D.rows:
        z_star = np.linalg.pinv(Df) @ J
        residual = float(np.max(np.abs(Df @ z_star - J)))
    else:
        z_star = np.zeros(D.cols)
        residual = 0.0
    if residual > tolerance:
        raise SteadyStateError(f"Dz* - J has residual {residual:.3e} above {tolerance:.1e}")
    return SteadyStateParam(D, J, z_star, tuple(kernel_basis(D)), residual)


def complex_balance_residual(r: Realization, x: np.ndarray) -> np.ndarray:
    """Per vertex: outflow sum kappa_ij x^{y_i} minus inflow sum kappa_ji x^{y_j}."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("complex balance is evaluated at positive states only")
    fluxes = monomial_values(r.graph.vertices, x)
    residual = np.zeros(r.graph.size)
    for e in r.graph.edges:
        flow = float(e.kappa) * fluxes[e.source]
        residual[e.source] += flow
        residual[e.target] -= flow
    return residual


def conservation_laws(sys: PolySystem) -> ConservationBasis:
    laws = kernel_basis(sys.net_matrix().transpose())
    return ConservationBasis(tuple(integer_primitive(v) for v in laws), sys.n)


def relative_field_residual(sys: PolySystem, x: np.ndarray) -> float:
    """|f(x)|_inf relative to the largest monomial flux at x."""
    x = np.asarray(x, dtype=float)
    scale = sys.flux_scale(x)
    return float(np.max(np.abs(sys.evaluate(x))) / scale)


def steady_state_in_polyhedron(
    param: SteadyStateParam, conservation: ConservationBasis, x0: np.ndarray
) -> np.ndarray:
    """
    The unique steady state x* with v^T x* = v^T x0 for every conservation law.

    ker D and the conservation laws span the same space, so x* = exp(z* + V t)
    where t minimizes the strictly convex sum(exp(z* + V t)) - (V^T x0) . t.
    """
    x0 = np.asarray(x0, dtype=float)
    if np.any(x0 <= 0):
        raise ValueError("x0 must be strictly positive")
    if not len(conservation):
        return np.exp(param.z_star)

    V = conservation.as_array()
    target = V.T @ x0

    def potential(t):
        return float(np.sum(np.exp(param.z_star + V @ t)) - target @ t)

    def gradient(t):
        return V.T @ np.exp(param.z_star + V @ t) - target

    def hessian(t):
        x = np.exp(param.z_star + V @ t)
        return V.T @ (x[:, None] * V)

    result = minimize(
        potential,
        np.zeros(V.shape[1]),
        method="trust-exact",
        jac=gradient,
        hess=hessian,
        options={"gtol": 1e-12 * max(1.0, float(np.max(np.abs(target))))},
    )
    x_star = np.exp(param.z_star + V @ result.x)
    mismatch = float(np.max(np.abs(V.T @ x_star - target)) / max(1.0, float(np.max(np.abs(target)))))
    if mismatch > 1e-8:
        raise SteadyStateError(
            f"Steady state search in the polyhedron stopped at mismatch {mismatch:.3e}: {result.message}"
        )
    logger.debug("Polyhedron steady state after %d iterations", result.nit)
    return x_star
