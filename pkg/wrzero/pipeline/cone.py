"""Extreme rays of the flux cone ker W ∩ R^m_≥ and the consistency test."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Optional, Sequence

from wrzero.model.graph import ComponentPartition
from wrzero.ratmat import RatMatrix, integer_primitive, rank, rref

logger = logging.getLogger(__name__)

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class ConeRays:
    """Minimal generators of a pointed cone in R^m_≥, integer-primitive."""

    m: int
    rays: tuple[IntVector, ...]

    def __post_init__(self):
        for ray in self.rays:
            if len(ray) != self.m:
                raise ValueError(f"Ray {ray} does not have {self.m} entries")
            if any(v < 0 for v in ray) or not any(ray):
                raise ValueError(f"Ray {ray} is not a nonzero non-negative vector")
            if reduce(gcd, ray, 0) != 1:
                raise ValueError(f"Ray {ray} is not primitive")

    def __len__(self) -> int:
        return len(self.rays)

    def supports(self) -> list[frozenset[int]]:
        return [frozenset(i for i, v in enumerate(ray) if v) for ray in self.rays]

    def covers_all(self) -> bool:
        """True when the rays sum to a strictly positive vector."""
        covered = set().union(*self.supports()) if self.rays else set()
        return len(covered) == self.m

    def ray_supported_on(self, block: Sequence[int]) -> IntVector:
        target = frozenset(block)
        for ray, support in zip(self.rays, self.supports()):
            if support == target:
                return ray
        raise KeyError(f"No ray is supported on {sorted(target)}")


def _ordered_row_basis(W: RatMatrix) -> list[IntVector]:
    """Row basis of W, integer-primitive, by decreasing pivot magnitude."""
    reduced, pivots = rref(W)
    rows = [integer_primitive(reduced.row(i)) for i in range(reduced.rows)]
    keyed = [(-abs(row[p]), k, row) for k, (row, p) in enumerate(zip(rows, pivots))]
    return [row for _, _, row in sorted(keyed)]


def _zero_set(ray: IntVector) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(ray) if v == 0)


def _adjacent(p: IntVector, q: IntVector, equalities: list[IntVector], m: int) -> bool:
    """
    p and q span a 2-face of {x ≥ 0, Ex = 0}: the constraints active at both
    have rank m - 2.
    """
    common_zero = _zero_set(p) & _zero_set(q)
    needed = m - 2 - len(common_zero)
    if needed < 0:
        return False
    if needed > len(equalities):
        return False
    free = [i for i in range(m) if i not in common_zero]
    if not equalities:
        return needed == 0
    restricted = RatMatrix.from_rows(
        [[Fraction(row[i]) for i in free] for row in equalities], cols=len(free)
    )
    return rank(restricted) == needed


def _primitive_int(v: Sequence[int]) -> IntVector:
    divisor = reduce(gcd, (abs(x) for x in v), 0)
    return tuple(x // divisor for x in v)


def extreme_rays(W: RatMatrix) -> ConeRays:
    """
    Minimal generator set of {v : Wv = 0, v ≥ 0} by double description.

    Starts from the unit vectors of R^m_≥ and intersects with one equality of
    W's row basis at a time. Rays come out primitive and in descending
    lexicographic order; the list is empty when the cone is {0}.
    """
    m = W.cols
    if m < 1:
        raise ValueError("W must have at least one column")
    rays: list[IntVector] = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    inserted: list[IntVector] = []

    for h in _ordered_row_basis(W):
        values = [sum(a * b for a, b in zip(h, ray)) for ray in rays]
        zero = [ray for ray, s in zip(rays, values) if s == 0]
        positive = [(ray, s) for ray, s in zip(rays, values) if s > 0]
        negative = [(ray, s) for ray, s in zip(rays, values) if s < 0]
        created = []
        for p, hp in positive:
            for q, hq in negative:
                if _adjacent(p, q, inserted, m):
                    created.append(_primitive_int([hp * b - hq * a for a, b in zip(p, q)]))
        inserted.append(h)
        rays = zero + created
        logger.debug(
            "Equality %d/%d: kept %d rays, created %d",
            len(inserted), W.rows, len(zero), len(created),
        )
        if not rays:
            break

    return ConeRays(m, tuple(sorted(set(rays), reverse=True)))


def supports_partition(rays: ConeRays) -> Optional[ComponentPartition]:
    """The partition {supp(c_p)} of {0..m-1}, or None when supports overlap or miss an index."""
    supports = rays.supports()
    covered = [i for support in supports for i in support]
    if len(covered) != len(set(covered)) or len(covered) != rays.m:
        return None
    return ComponentPartition(tuple(tuple(sorted(s)) for s in supports))


def is_consistent(W: RatMatrix) -> bool:
    """ker W meets the open positive orthant."""
    return extreme_rays(W).covers_all()
