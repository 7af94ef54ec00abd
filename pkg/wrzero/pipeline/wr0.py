"""Realize pipeline stage - find the weakly reversible deficiency-zero realization.

Runs the consistency pre-check, then for the extreme rays of ker W ∩ R^m_≥:
partition test, affine independence of each component, and the unique cone
decomposition of every net direction vector inside its component.
"""

import logging
from dataclasses import dataclass
from enum import Enum as PyEnum
from fractions import Fraction
from typing import Optional, Sequence, Union

from wrzero.model.graph import (
    ComponentPartition,
    PolySystem,
    Vertex,
    WeightedEGraph,
    associated_system,
    connected_components,
    deficiency,
    difference,
    is_weakly_reversible,
)
from wrzero.pipeline.cone import ConeRays, extreme_rays, supports_partition
from wrzero.ratmat import RatMatrix, RationalLike, solve_exact, to_vector, vectors_rank

logger = logging.getLogger(__name__)


class FailureKind(str, PyEnum):
    """Why no WR0 realization exists; values are the names used in reports."""
    INCONSISTENT = "Inconsistent"
    NOT_PARTITION = "NotPartition"
    NOT_AFFINELY_INDEPENDENT = "NotAffinelyIndependent"
    NOT_IN_CONE = "NotInCone"


@dataclass(frozen=True)
class FailureReason:
    """
    First failing test of the realization search.

    component and source are 1-based labels (component 1 is the block holding
    the smallest source index, source i is the i-th monomial in vertex order).
    """

    kind: FailureKind
    component: Optional[int] = None
    source: Optional[int] = None
    vertex: Optional[Vertex] = None

    def detail(self) -> dict:
        detail = {}
        if self.component is not None:
            detail["component"] = self.component
        if self.source is not None:
            detail["source"] = self.source
        if self.vertex is not None:
            detail["vertex"] = list(self.vertex)
        return detail

    def __str__(self) -> str:
        parts = [f"{key} {value}" for key, value in self.detail().items() if key != "vertex"]
        return " ".join([self.kind.value, *parts])


@dataclass(frozen=True)
class Realization:
    graph: WeightedEGraph
    components: ComponentPartition
    deficiency: int
    generators: ConeRays


class RealizationError(RuntimeError):
    """A post-condition of a found realization does not hold."""


def affinely_independent(vertices: Sequence[Vertex]) -> bool:
    """{y_j - y_0} linearly independent; a single vertex is trivially independent."""
    if not vertices:
        raise ValueError("affine independence needs at least one vertex")
    base = vertices[0]
    differences = [difference(y, base) for y in vertices[1:]]
    return vectors_rank(differences, len(base)) == len(differences)


def decompose_in_cone(
    w: Sequence[RationalLike], base: Vertex, others: Sequence[Vertex]
) -> Optional[tuple[Fraction, ...]]:
    """
    Coefficients k_j >= 0 with w = sum_j k_j (others[j] - base), or None.

    The differences must be linearly independent, which makes the solution
    unique when it exists.
    """
    w = to_vector(w)
    columns = [difference(y, base) for y in others]
    solved = solve_exact(RatMatrix.from_columns(columns, rows=len(w)), w)
    if solved is None:
        return None
    coefficients, kernel = solved
    if kernel:
        raise ValueError(f"{base} and {list(others)} are not affinely independent")
    if any(k < 0 for k in coefficients):
        return None
    return coefficients


def find_wr0(sys: PolySystem) -> Union[Realization, FailureReason]:
    """The unique WR0 realization of sys, or the reason none exists."""
    rays = extreme_rays(sys.net_matrix())
    if not rays.covers_all():
        logger.debug("ker W meets no strictly positive vector: %d rays", len(rays))
        return FailureReason(FailureKind.INCONSISTENT)

    partition = supports_partition(rays)
    if partition is None:
        logger.debug("Ray supports %s do not partition the sources", rays.supports())
        return FailureReason(FailureKind.NOT_PARTITION)

    edges = []
    for p, block in enumerate(partition, start=1):
        vertices = [sys.sources[i] for i in block]
        if not affinely_independent(vertices):
            logger.debug("Component %d %s is not affinely independent", p, vertices)
            return FailureReason(FailureKind.NOT_AFFINELY_INDEPENDENT, component=p)
        for i in block:
            targets = [j for j in block if j != i]
            coefficients = decompose_in_cone(
                sys.net_vectors[i], sys.sources[i], [sys.sources[j] for j in targets]
            )
            if coefficients is None:
                logger.debug("w_%d is outside the cone of component %d", i + 1, p)
                return FailureReason(
                    FailureKind.NOT_IN_CONE, component=p, source=i + 1, vertex=sys.sources[i]
                )
            edges.extend(
                (sys.sources[i], sys.sources[j], kappa)
                for j, kappa in zip(targets, coefficients)
                if kappa > 0
            )
        logger.debug("Component %d: %d vertices decomposed", p, len(block))

    graph = WeightedEGraph.from_edges(edges)
    realization = Realization(graph, partition, deficiency(graph).deficiency, rays)
    _verify(sys, realization)
    logger.info(
        "WR0 realization found: %d vertices, %d edges, %d components",
        graph.size, len(graph.edges), len(partition),
    )
    return realization


def _verify(sys: PolySystem, realization: Realization) -> None:
    graph = realization.graph
    if graph.vertices != sys.sources:
        raise RealizationError("Realization vertices differ from the sources of the system")
    if associated_system(graph) != sys:
        raise RealizationError("Realization does not generate the input system")
    if realization.deficiency != 0:
        raise RealizationError(f"Realization has deficiency {realization.deficiency}")
    if not is_weakly_reversible(graph):
        raise RealizationError("Realization is not weakly reversible")
    if connected_components(graph) != realization.components:
        raise RealizationError("Connected components differ from the ray supports")


def scaled_equivalence_check(sys: PolySystem, factors: Sequence[RationalLike]) -> bool:
    """
    Scaling w_i by a_i > 0 keeps the search outcome, and on success every
    weight out of y_i is multiplied by a_i.
    """
    factors = to_vector(factors)
    original = find_wr0(sys)
    scaled = find_wr0(sys.scaled(factors))
    if isinstance(original, FailureReason) or isinstance(scaled, FailureReason):
        return isinstance(original, FailureReason) and isinstance(scaled, FailureReason)
    before, after = original.graph, scaled.graph
    if before.vertices != after.vertices or len(before.edges) != len(after.edges):
        return False
    return all(
        (e.source, e.target) == (s.source, s.target) and s.kappa == factors[e.source] * e.kappa
        for e, s in zip(before.edges, after.edges)
    )
