"""Graphviz DOT renderer - one cluster per connected component, kappa on every edge."""

from wrzero.model.parser import render_monomial
from wrzero.pipeline.wr0 import Realization
from wrzero.ratmat import format_rational
from wrzero.renderers.base import BaseRenderer


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


class DotRenderer(BaseRenderer):
    @property
    def format_name(self) -> str:
        return "dot"

    def render_realization(self, realization: Realization) -> str:
        graph = realization.graph
        lines = ["digraph wr0 {", "  rankdir=LR;", "  node [shape=plaintext];"]
        for p, block in enumerate(realization.components, start=1):
            lines.append(f"  subgraph cluster_{p} {{")
            lines.append(f"    label={_quote(f'component {p}')};")
            for i in block:
                lines.append(f"    v{i} [label={_quote(render_monomial(graph.vertices[i]))}];")
            lines.append("  }")
        for e in graph.edges:
            lines.append(f"  v{e.source} -> v{e.target} [label={_quote(format_rational(e.kappa))}];")
        lines.append("}")
        return "\n".join(lines)
