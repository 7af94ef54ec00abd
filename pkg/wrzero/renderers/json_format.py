"""JSON renderer - realizations as RealizationDocument with exact rational weights."""

from wrzero.model.schemas import RealizationDocument
from wrzero.pipeline.wr0 import Realization
from wrzero.renderers.base import BaseRenderer


class JsonRenderer(BaseRenderer):
    @property
    def format_name(self) -> str:
        return "json"

    def render_realization(self, realization: Realization) -> str:
        return RealizationDocument.from_graph(realization.graph).model_dump_json(
            indent=2, by_alias=True
        )
