"""Pydantic documents for every JSON format read or written by wrzero.

Exact rationals travel as strings ("7", "55/2") so nothing is rounded on the
way through JSON.
"""

from typing import Annotated, Any, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, field_validator

from wrzero.model.graph import PolySystem, WeightedEGraph, connected_components, deficiency
from wrzero.ratmat import format_rational, to_rational


def _coerce_rational_string(value: Any) -> str:
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return format_rational(to_rational(value))
    raise ValueError(f"expected an integer or a rational string, got {value!r}")


RationalStr = Annotated[str, BeforeValidator(_coerce_rational_string)]


class SystemDocument(BaseModel):
    """Input system: W is given column-per-monomial."""

    n: int = Field(ge=1)
    monomials: list[list[int]]
    W: list[list[RationalStr]]

    @field_validator("monomials")
    @classmethod
    def _non_negative(cls, monomials: list[list[int]]) -> list[list[int]]:
        for mono in monomials:
            if any(e < 0 for e in mono):
                raise ValueError(f"monomial {mono} has a negative exponent")
        return monomials

    def to_system(self) -> PolySystem:
        if len(self.monomials) != len(self.W):
            raise ValueError(f"{len(self.monomials)} monomials but {len(self.W)} columns of W")
        return PolySystem(
            self.n,
            tuple(tuple(mono) for mono in self.monomials),
            tuple(tuple(to_rational(x) for x in column) for column in self.W),
        )

    @classmethod
    def from_system(cls, sys: PolySystem) -> "SystemDocument":
        return cls(
            n=sys.n,
            monomials=[list(y) for y in sys.sources],
            W=[[format_rational(x) for x in w] for w in sys.net_vectors],
        )


class EdgeDocument(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    source: int = Field(alias="from", ge=0)
    target: int = Field(alias="to", ge=0)
    kappa: RationalStr


class RealizationDocument(BaseModel):
    n: int = Field(ge=1)
    vertices: list[list[int]]
    edges: list[EdgeDocument]
    components: list[list[int]]
    deficiency: int

    def to_graph(self) -> WeightedEGraph:
        vertices = [tuple(v) for v in self.vertices]
        for e in self.edges:
            if e.source >= len(vertices) or e.target >= len(vertices):
                raise ValueError(f"edge ({e.source}, {e.target}) refers to a missing vertex")
        return WeightedEGraph.from_edges(
            (vertices[e.source], vertices[e.target], to_rational(e.kappa)) for e in self.edges
        )

    @classmethod
    def from_graph(cls, g: WeightedEGraph) -> "RealizationDocument":
        return cls(
            n=g.n,
            vertices=[list(v) for v in g.vertices],
            edges=[
                EdgeDocument(source=e.source, target=e.target, kappa=format_rational(e.kappa))
                for e in g.edges
            ],
            components=[list(b) for b in connected_components(g)],
            deficiency=deficiency(g).deficiency,
        )


class FailureDocument(BaseModel):
    reason: str
    detail: dict[str, Any]


class CheckDocument(BaseModel):
    m: int
    n: int
    consistent: bool
    rays: list[list[int]]
    partition: Optional[list[list[int]]]
    conservation_laws: list[list[int]]


class SteadyStateDocument(BaseModel):
    D: list[list[RationalStr]]
    J: list[float]
    z_star: list[float]
    kernel: list[list[RationalStr]]
    residual: float
    sample_points: list[list[float]]


class CertificationDocument(BaseModel):
    lyapunov_monotone: bool
    max_lyapunov_increase: float
    conservation_laws: list[list[int]]
    conservation_drift: list[float]
    conserved: bool
    x_star: list[float]
    terminal_state: list[float]
    terminal_distance: float
    converged: bool
    accepted_steps: int
    rejected_steps: int
