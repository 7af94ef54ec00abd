"""Base renderer interface for command output."""

from abc import ABC, abstractmethod
from typing import Sequence

import numpy as np

from wrzero.pipeline.check import CheckReport
from wrzero.pipeline.sim import CertificationReport
from wrzero.pipeline.steady import SteadyStateParam
from wrzero.pipeline.wr0 import FailureReason, Realization
from wrzero.renderers.documents import (
    certification_document,
    check_document,
    failure_document,
    steady_document,
)


class BaseRenderer(ABC):
    """
    Turns pipeline results into the text written to stdout.

    Every format renders a realization its own way; the other results default
    to their JSON documents.
    """

    @property
    @abstractmethod
    def format_name(self) -> str:
        """Value of --format selecting this renderer."""
        pass

    @abstractmethod
    def render_realization(self, realization: Realization) -> str:
        pass

    def render_failure(self, reason: FailureReason) -> str:
        return failure_document(reason).model_dump_json(indent=2)

    def render_check(self, report: CheckReport) -> str:
        return check_document(report).model_dump_json(indent=2)

    def render_steady(self, param: SteadyStateParam, samples: Sequence[np.ndarray]) -> str:
        return steady_document(param, samples).model_dump_json(indent=2)

    def render_certification(self, report: CertificationReport) -> str:
        return certification_document(report).model_dump_json(indent=2)
