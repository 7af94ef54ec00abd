"""Check pipeline stage - consistency and ray-support summary of a system."""

import logging
from dataclasses import dataclass
from typing import Optional

from wrzero.model.graph import ComponentPartition, PolySystem
from wrzero.pipeline.cone import ConeRays, extreme_rays, supports_partition
from wrzero.pipeline.steady import ConservationBasis, conservation_laws

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckReport:
    m: int
    n: int
    consistent: bool
    rays: ConeRays
    partition: Optional[ComponentPartition]
    conservation_laws: ConservationBasis


def check_system(sys: PolySystem) -> CheckReport:
    rays = extreme_rays(sys.net_matrix())
    consistent = rays.covers_all()
    if not consistent:
        logger.info("System admits no positive steady state: ker W has no positive vector")
    return CheckReport(
        m=sys.m,
        n=sys.n,
        consistent=consistent,
        rays=rays,
        partition=supports_partition(rays),
        conservation_laws=conservation_laws(sys),
    )
