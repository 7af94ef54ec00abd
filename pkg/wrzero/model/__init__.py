# Model package
from wrzero.model.graph import (
    ComponentPartition,
    Edge,
    PolySystem,
    Vertex,
    WeightedEGraph,
    associated_system,
    connected_components,
    deficiency,
    dynamically_equivalent,
    is_weakly_reversible,
    kirchhoff_kernel,
    kirchhoff_matrix,
    terminal_sccs,
)
from wrzero.model.parser import ParseError, load_graph, load_system, parse_system, render_system

__all__ = [
    "ComponentPartition",
    "Edge",
    "PolySystem",
    "Vertex",
    "WeightedEGraph",
    "associated_system",
    "connected_components",
    "deficiency",
    "dynamically_equivalent",
    "is_weakly_reversible",
    "kirchhoff_kernel",
    "kirchhoff_matrix",
    "terminal_sccs",
    "ParseError",
    "load_graph",
    "load_system",
    "parse_system",
    "render_system",
]
