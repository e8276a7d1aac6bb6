from typing import Optional, Sequence

from app.core.network.families import FamilyName, sample_family
from app.core.verifier.search_orchestrator import ADJACENCY_MODES, CounterexampleSearch
from app.dto.report_dto import SearchReport, VerificationMode


class SearchService:
    """계열 생성기 기반 반례 탐색 서비스"""

    def __init__(self):
        self.search_engine = CounterexampleSearch()

    def search(
        self,
        family: FamilyName,
        count: int,
        n_min: int,
        n_max: int,
        alpha_factors: Sequence[float],
        modes: Sequence[VerificationMode],
        max_size: Optional[int] = None,
        seed: int = 0,
        a: float = 1.0,
        adjacency_modes: Sequence[bool] = ADJACENCY_MODES,
    ) -> SearchReport:
        family = FamilyName(family)
        instances = sample_family(family, count, seed, n_min, n_max)
        report = self.search_engine.run(
            instances, alpha_factors, modes, max_size, a=a, adjacency_modes=adjacency_modes
        )
        return report.model_copy(update={"family": family.value, "seed": seed})
