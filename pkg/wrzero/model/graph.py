"""Polynomial systems, weighted E-graphs and the correspondence between them."""

import logging
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import networkx as nx
import numpy as np

from wrzero.ratmat import (
    RationalLike,
    RatMatrix,
    RatVector,
    integer_primitive,
    is_zero_vector,
    kernel_basis,
    to_rational,
    to_vector,
    vectors_rank,
)

logger = logging.getLogger(__name__)

Vertex = tuple[int, ...]


class KernelSupportError(RuntimeError):
    """The kernel of a Kirchhoff matrix is not supported on the terminal SCCs."""


def vertex_order_key(vertex: Vertex) -> tuple:
    """
    Total degree ascending, then descending lexicographic (x1 > x2 > ...).

    Every ordered collection of vertices or monomials in the package uses this key.
    """
    return (sum(vertex), tuple(-e for e in vertex))


def validate_vertex(vertex: Sequence[int], n: int) -> Vertex:
    vertex = tuple(vertex)
    if len(vertex) != n:
        raise ValueError(f"Vertex {vertex} does not have {n} coordinates")
    for e in vertex:
        if isinstance(e, bool) or not isinstance(e, (int, np.integer)):
            raise ValueError(f"Vertex {vertex} has a non-integer exponent {e!r}")
        if e < 0:
            raise ValueError(f"Vertex {vertex} has a negative exponent")
    return tuple(int(e) for e in vertex)


def difference(a: Vertex, b: Vertex) -> RatVector:
    """a - b as a rational vector."""
    return tuple(Fraction(x - y) for x, y in zip(a, b))


def monomial_values(vertices: Sequence[Vertex], x: np.ndarray) -> np.ndarray:
    """x^y for each vertex y, evaluated in floating point."""
    exponents = np.array(vertices, dtype=float).reshape(len(vertices), -1)
    return np.prod(np.power(np.asarray(x, dtype=float)[None, :], exponents), axis=1)


# ============================================================================
# POLYNOMIAL SYSTEMS
# ============================================================================

@dataclass(frozen=True)
class PolySystem:
    """
    dx/dt = sum_i x^{y_i} w_i.

    Sources are kept in vertex order with net_vectors aligned to them, so two
    systems are equal exactly when they describe the same polynomials.
    """

    n: int
    sources: tuple[Vertex, ...]
    net_vectors: tuple[RatVector, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("State dimension must be at least 1")
        if not self.sources:
            raise ValueError("A polynomial system needs at least one monomial")
        if len(self.sources) != len(self.net_vectors):
            raise ValueError(
                f"{len(self.sources)} sources but {len(self.net_vectors)} net direction vectors"
            )
        sources = [validate_vertex(y, self.n) for y in self.sources]
        if len(set(sources)) != len(sources):
            raise ValueError("Source vertices must be pairwise distinct")
        vectors = [to_vector(w) for w in self.net_vectors]
        for y, w in zip(sources, vectors):
            if len(w) != self.n:
                raise ValueError(f"Net direction vector of {y} does not have {self.n} entries")
            if is_zero_vector(w):
                raise ValueError(f"Net direction vector of {y} is zero")
        order = sorted(range(len(sources)), key=lambda i: vertex_order_key(sources[i]))
        object.__setattr__(self, "sources", tuple(sources[i] for i in order))
        object.__setattr__(self, "net_vectors", tuple(vectors[i] for i in order))

    @classmethod
    def from_terms(cls, n: int, terms: dict[Vertex, Sequence[RationalLike]]) -> "PolySystem":
        return cls(n, tuple(terms), tuple(to_vector(w) for w in terms.values()))

    @property
    def m(self) -> int:
        return len(self.sources)

    def source_matrix(self) -> RatMatrix:
        """Y_s: sources as columns."""
        return RatMatrix.from_columns(
            [tuple(Fraction(e) for e in y) for y in self.sources], rows=self.n
        )

    def net_matrix(self) -> RatMatrix:
        """W: net direction vectors as columns."""
        return RatMatrix.from_columns(self.net_vectors, rows=self.n)

    def index_of(self, vertex: Vertex) -> int:
        return self.sources.index(tuple(vertex))

    def scaled(self, factors: Sequence[RationalLike]) -> "PolySystem":
        """Column-scaled system with w_i replaced by a_i w_i."""
        factors = to_vector(factors)
        if len(factors) != self.m:
            raise ValueError(f"Expected {self.m} scale factors, got {len(factors)}")
        if any(a <= 0 for a in factors):
            raise ValueError("Scale factors must be positive")
        return PolySystem(
            self.n,
            self.sources,
            tuple(tuple(a * x for x in w) for a, w in zip(factors, self.net_vectors)),
        )

    @cached_property
    def float_net_matrix(self) -> np.ndarray:
        return self.net_matrix().to_float()

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """The vector field f(x) in floating point."""
        return self.float_net_matrix @ monomial_values(self.sources, x)

    def flux_scale(self, x: np.ndarray) -> float:
        """Largest monomial flux max_i x^{y_i} * |w_i|_inf."""
        W = np.abs(self.float_net_matrix)
        return float(np.max(monomial_values(self.sources, x) * W.max(axis=0)))


# ============================================================================
# WEIGHTED E-GRAPHS
# ============================================================================

class Edge(NamedTuple):
    source: int
    target: int
    kappa: Fraction


@dataclass(frozen=True)
class ComponentPartition:
    """Disjoint blocks of vertex indices, each sorted, blocks ordered by smallest member."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else -1)
        if any(not b for b in blocks):
            raise ValueError("Partition blocks must be nonempty")
        seen = [i for b in blocks for i in b]
        if len(seen) != len(set(seen)):
            raise ValueError("Partition blocks overlap")
        object.__setattr__(self, "blocks", tuple(blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_of(self, index: int) -> int:
        for p, block in enumerate(self.blocks):
            if index in block:
                return p
        raise KeyError(index)


@dataclass(frozen=True)
class WeightedEGraph:
    """
    Directed graph on lattice points with positive rational edge weights.

    Vertices are kept in vertex order and edges sorted by (source, target);
    build instances with from_edges.
    """

    n: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        vertices = [validate_vertex(v, self.n) for v in self.vertices]
        if len(set(vertices)) != len(vertices):
            raise ValueError("Duplicate vertices")
        if vertices != sorted(vertices, key=vertex_order_key):
            raise ValueError("Vertices must be in vertex order; use WeightedEGraph.from_edges")
        pairs = set()
        edges = []
        for source, target, kappa in self.edges:
            kappa = to_rational(kappa)
            if source == target:
                raise ValueError(f"Self-loop at vertex {vertices[source]}")
            if not (0 <= source < len(vertices) and 0 <= target < len(vertices)):
                raise ValueError(f"Edge ({source}, {target}) refers to a missing vertex")
            if (source, target) in pairs:
                raise ValueError(f"Duplicate edge {vertices[source]} -> {vertices[target]}")
            if kappa <= 0:
                raise ValueError(f"Edge weight {kappa} is not positive")
            pairs.add((source, target))
            edges.append(Edge(source, target, kappa))
        touched = {i for pair in pairs for i in pair}
        if len(touched) != len(vertices):
            raise ValueError("Isolated vertices are not allowed")
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[Sequence[int], Sequence[int], RationalLike]]
    ) -> "WeightedEGraph":
        """Build from (source vertex, target vertex, kappa) triples."""
        edges = [(tuple(a), tuple(b), to_rational(k)) for a, b, k in edges]
        if not edges:
            raise ValueError("A weighted E-graph needs at least one edge")
        n = len(edges[0][0])
        vertices = sorted({v for a, b, _ in edges for v in (a, b)}, key=vertex_order_key)
        index = {v: i for i, v in enumerate(vertices)}
        return cls(n, tuple(vertices), tuple(Edge(index[a], index[b], k) for a, b, k in edges))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def weight(self, source: Vertex, target: Vertex) -> Fraction:
        """kappa of source -> target, zero when the edge is absent."""
        i, j = self.vertices.index(tuple(source)), self.vertices.index(tuple(target))
        return next((e.kappa for e in self.edges if e.source == i and e.target == j), Fraction(0))

    def edge_vectors(self) -> list[RatVector]:
        return [difference(self.vertices[e.target], self.vertices[e.source]) for e in self.edges]

    def digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.size))
        graph.add_edges_from((e.source, e.target, {"kappa": e.kappa}) for e in self.edges)
        return graph


def net_direction_vectors(g: WeightedEGraph) -> dict[Vertex, RatVector]:
    """w_i = sum_j kappa_ij (y_j - y_i) for every source vertex, zero ones included."""
    nets: dict[Vertex, list[Fraction]] = {}
    for e in g.edges:
        y_i, y_j = g.vertices[e.source], g.vertices[e.target]
        acc = nets.setdefault(y_i, [Fraction(0)] * g.n)
        for k, d in enumerate(difference(y_j, y_i)):
            acc[k] += e.kappa * d
    return {y: tuple(w) for y, w in nets.items()}


def associated_system(g: WeightedEGraph) -> PolySystem:
    """The mass-action system of g; sources with a zero net vector contribute no monomial."""
    nets = net_direction_vectors(g)
    terms = {y: w for y, w in nets.items() if not is_zero_vector(w)}
    if len(terms) < len(nets):
        logger.debug("Dropped %d sources with zero net direction vector", len(nets) - len(terms))
    if not terms:
        raise ValueError("Every net direction vector of the graph is zero")
    return PolySystem(g.n, tuple(terms), tuple(terms.values()))


def dynamically_equivalent(g1: WeightedEGraph, g2: WeightedEGraph) -> bool:
    if g1.n != g2.n:
        raise ValueError("Graphs live in different dimensions")
    nets1, nets2 = net_direction_vectors(g1), net_direction_vectors(g2)
    zero = tuple(Fraction(0) for _ in range(g1.n))
    return all(nets1.get(y, zero) == nets2.get(y, zero) for y in set(nets1) | set(nets2))


def connected_components(g: WeightedEGraph) -> ComponentPartition:
    return ComponentPartition(tuple(nx.connected_components(g.digraph().to_undirected())))


def is_weakly_reversible(g: WeightedEGraph) -> bool:
    """Every edge lies inside a strongly connected component."""
    scc_of = {}
    for k, scc in enumerate(nx.strongly_connected_components(g.digraph())):
        for v in scc:
            scc_of[v] = k
    return all(scc_of[e.source] == scc_of[e.target] for e in g.edges)


def terminal_sccs(g: WeightedEGraph) -> list[tuple[int, ...]]:
    """SCCs with no edge leaving them, sorted by smallest member."""
    condensed = nx.condensation(g.digraph())
    terminal = [
        tuple(sorted(condensed.nodes[c]["members"]))
        for c in condensed.nodes
        if condensed.out_degree(c) == 0
    ]
    return sorted(terminal)


@dataclass(frozen=True)
class DeficiencyReport:
    deficiency: int
    per_component: tuple[int, ...]


def deficiency(g: WeightedEGraph) -> DeficiencyReport:
    """delta = |V| - l - dim S, plus delta_p = |V_p| - 1 - dim S(V_p) per component."""
    components = connected_components(g)
    vectors = g.edge_vectors()
    total = g.size - len(components) - vectors_rank(vectors, g.n)
    per_component = []
    for block in components:
        members = set(block)
        block_vectors = [v for e, v in zip(g.edges, vectors) if e.source in members]
        per_component.append(len(block) - 1 - vectors_rank(block_vectors, g.n))
    return DeficiencyReport(total, tuple(per_component))


def kirchhoff_matrix(g: WeightedEGraph) -> RatMatrix:
    """
    A_kappa with column i holding the out-rates of vertex i:
    entry (j, i) = kappa_ij and entry (i, i) = -sum_j kappa_ij.
    """
    size = g.size
    entries = [[Fraction(0)] * size for _ in range(size)]
    for e in g.edges:
        entries[e.target][e.source] += e.kappa
        entries[e.source][e.source] -= e.kappa
    return RatMatrix.from_rows(entries, cols=size)


def kirchhoff_kernel(g: WeightedEGraph) -> list[RatVector]:
    """
    Basis of ker A_kappa with one non-negative vector per terminal SCC,
    supported exactly on it, in terminal_sccs order.
    """
    A = kirchhoff_matrix(g)
    terminals = terminal_sccs(g)
    basis = []
    for members in terminals:
        local = RatMatrix.from_rows(
            [[A[i, j] for j in members] for i in members], cols=len(members)
        )
        local_kernel = kernel_basis(local)
        if len(local_kernel) != 1:
            raise KernelSupportError(
                f"Terminal SCC {members} has a {len(local_kernel)}-dimensional local kernel"
            )
        (c_local,) = local_kernel
        c = [Fraction(0)] * g.size
        for i, value in zip(members, c_local):
            c[i] = value
        c = tuple(Fraction(x) for x in integer_primitive(c))
        if any(c[i] <= 0 for i in members):
            raise KernelSupportError(f"Kernel vector of terminal SCC {members} is not positive")
        if not is_zero_vector(A.apply(c)):
            raise KernelSupportError(f"Kernel vector of terminal SCC {members} violates A c = 0")
        basis.append(c)
    dimension = len(kernel_basis(A))
    if dimension != len(terminals):
        raise KernelSupportError(
            f"ker A_kappa has dimension {dimension} but the graph has {len(terminals)} terminal SCCs"
        )
    return basis
