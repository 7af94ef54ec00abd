"""Conversion of pipeline results into the pydantic wire documents."""

from typing import Sequence

import numpy as np

from wrzero.model.schemas import (
    CertificationDocument,
    CheckDocument,
    FailureDocument,
    SteadyStateDocument,
)
from wrzero.pipeline.check import CheckReport
from wrzero.pipeline.sim import CertificationReport
from wrzero.pipeline.steady import SteadyStateParam
from wrzero.pipeline.wr0 import FailureReason
from wrzero.ratmat import format_rational


def _floats(values) -> list[float]:
    return [float(v) for v in values]


def failure_document(reason: FailureReason) -> FailureDocument:
    return FailureDocument(reason=reason.kind.value, detail=reason.detail())


def check_document(report: CheckReport) -> CheckDocument:
    return CheckDocument(
        m=report.m,
        n=report.n,
        consistent=report.consistent,
        rays=[list(ray) for ray in report.rays.rays],
        partition=None if report.partition is None else [list(b) for b in report.partition],
        conservation_laws=[list(v) for v in report.conservation_laws.vectors],
    )


def steady_document(param: SteadyStateParam, samples: Sequence[np.ndarray]) -> SteadyStateDocument:
    return SteadyStateDocument(
        D=[[format_rational(x) for x in row] for row in param.D.to_rows()],
        J=_floats(param.J),
        z_star=_floats(param.z_star),
        kernel=[[format_rational(x) for x in v] for v in param.kernel],
        residual=param.residual,
        sample_points=[_floats(x) for x in samples],
    )


def certification_document(report: CertificationReport) -> CertificationDocument:
    return CertificationDocument(
        lyapunov_monotone=report.lyapunov_monotone,
        max_lyapunov_increase=report.max_lyapunov_increase,
        conservation_laws=[list(v) for v in report.conservation_laws.vectors],
        conservation_drift=_floats(report.conservation_drift),
        conserved=report.conserved,
        x_star=_floats(report.x_star),
        terminal_state=_floats(report.trajectory.terminal_state),
        terminal_distance=report.terminal_distance,
        converged=report.converged,
        accepted_steps=report.step_stats.accepted,
        rejected_steps=report.step_stats.rejected,
    )
