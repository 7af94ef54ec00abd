"""Plain-text renderer for reading results in a terminal."""

from typing import Sequence

import numpy as np

from wrzero.model.graph import associated_system
from wrzero.model.parser import render_monomial, render_system
from wrzero.pipeline.check import CheckReport
from wrzero.pipeline.sim import CertificationReport
from wrzero.pipeline.steady import SteadyStateParam
from wrzero.pipeline.wr0 import FailureReason, Realization
from wrzero.ratmat import format_rational
from wrzero.renderers.base import BaseRenderer


def _vector(values) -> str:
    return "(" + ", ".join(f"{float(v):.10g}" for v in values) + ")"


class TextRenderer(BaseRenderer):
    @property
    def format_name(self) -> str:
        return "text"

    def render_realization(self, realization: Realization) -> str:
        graph = realization.graph
        lines = [
            f"WR0 realization: {graph.size} vertices, {len(graph.edges)} edges, "
            f"{len(realization.components)} components, deficiency {realization.deficiency}"
        ]
        for p, block in enumerate(realization.components, start=1):
            lines.append(f"component {p}: " + ", ".join(render_monomial(graph.vertices[i]) for i in block))
        for e in graph.edges:
            source = render_monomial(graph.vertices[e.source])
            target = render_monomial(graph.vertices[e.target])
            lines.append(f"  {source} -> {target}  [{format_rational(e.kappa)}]")
        lines.append("associated system:")
        lines.extend(f"  {line}" for line in render_system(associated_system(graph)).splitlines())
        return "\n".join(lines)

    def render_failure(self, reason: FailureReason) -> str:
        return f"no WR0 realization: {reason}"

    def render_check(self, report: CheckReport) -> str:
        lines = [
            f"m = {report.m}, n = {report.n}",
            f"consistent: {'yes' if report.consistent else 'no'}",
            f"extreme rays: {len(report.rays)}",
        ]
        lines.extend(f"  {list(ray)}" for ray in report.rays.rays)
        if report.partition is None:
            lines.append("ray supports do not partition the monomials")
        else:
            blocks = ("{" + ", ".join(f"y{i + 1}" for i in block) + "}" for block in report.partition)
            lines.append("partition of sources: " + " | ".join(blocks))
        lines.append(f"conservation laws: {len(report.conservation_laws)}")
        lines.extend(f"  {list(v)}" for v in report.conservation_laws.vectors)
        return "\n".join(lines)

    def render_steady(self, param: SteadyStateParam, samples: Sequence[np.ndarray]) -> str:
        lines = ["D ="]
        lines.extend("  [" + ", ".join(format_rational(x) for x in row) + "]" for row in param.D.to_rows())
        lines.append(f"J = {_vector(param.J)}")
        lines.append(f"z* = {_vector(param.z_star)}  (residual {param.residual:.2e})")
        lines.append("ker D = " + (", ".join(
            "(" + ", ".join(format_rational(x) for x in v) + ")" for v in param.kernel
        ) or "{0}"))
        lines.append(f"sample steady states: {len(samples)}")
        lines.extend(f"  {_vector(x)}" for x in samples)
        return "\n".join(lines)

    def render_certification(self, report: CertificationReport) -> str:
        stats = report.step_stats
        lines = [
            f"Lyapunov monotone: {'yes' if report.lyapunov_monotone else 'no'} "
            f"(max increase {report.max_lyapunov_increase:.2e})",
            f"x* = {_vector(report.x_star)}",
            f"terminal state = {_vector(report.trajectory.terminal_state)}",
            f"terminal distance = {report.terminal_distance:.2e} "
            f"({'converged' if report.converged else 'not converged'})",
            f"steps: {stats.accepted} accepted, {stats.rejected} rejected",
            f"conservation laws held: {'yes' if report.conserved else 'no'}",
        ]
        for v, drift in zip(report.conservation_laws.vectors, report.conservation_drift):
            lines.append(f"conservation {list(v)}: drift {drift:.2e}")
        return "\n".join(lines)
