from typing import Iterable, List, Optional, Sequence

from loguru import logger

from app.core.network.network import DirectedNetwork, ModelParams, symmetrized
from app.core.network.spectral import spectral_radius
from app.core.solver.contract_solver import first_best
from app.core.verifier.ic_verifier import IncentiveVerifier, get_verifier
from app.dto.report_dto import (
    DeviationInfo,
    SearchFinding,
    SearchReport,
    VerificationMode,
    VerificationReport,
)


ADJACENCY_MODES = (True, False)


class CounterexampleSearch:
    """계열 생성기 × α 격자에 대해 최선 계약의 반례를 찾습니다."""

    def __init__(self, verifier: Optional[IncentiveVerifier] = None):
        self._verifier = verifier or get_verifier()

    def run(
        self,
        instances: Iterable[DirectedNetwork],
        alpha_factors: Sequence[float],
        modes: Sequence[VerificationMode],
        max_size: Optional[int] = None,
        a: float = 1.0,
        adjacency_modes: Sequence[bool] = ADJACENCY_MODES,
    ) -> SearchReport:
        for factor in alpha_factors:
            if not 0 < factor < 1:
                raise ValueError(f"Alpha factors must lie in (0, 1), got {factor}")

        findings: List[SearchFinding] = []
        instance_count = 0
        runs = 0

        # ===== 인스턴스 fan-out =====
        for index, net in enumerate(instances):
            instance_count += 1
            lam = spectral_radius(symmetrized(net))
            for factor in alpha_factors:
                alpha = factor / lam if lam > 0 else 0.0
                params = ModelParams(a=a, alpha=alpha)
                contract = first_best(net, params)

                for mode in modes:
                    for adjacency in adjacency_modes:
                        report = self._verifier.verify(
                            contract, net, params, VerificationMode(mode), max_size, adjacency
                        )
                        runs += 1
                        if not report.passed:
                            findings.append(self._finding(index, net, factor, report))

            logger.debug(f"[Search - Instance {index}] n={net.n}, 누적 발견 {len(findings)}건")

        # ===== 병합 =====
        logger.info(f"[Search] 인스턴스 {instance_count}개, 검증 {runs}회, 발견 {len(findings)}건")
        return SearchReport(instances=instance_count, runs=runs, findings=findings)

    @staticmethod
    def _finding(index: int, net: DirectedNetwork, factor: float, report: VerificationReport) -> SearchFinding:
        return SearchFinding(
            instance=index,
            n=net.n,
            edges=[[i + 1, j + 1] for i, j in net.edges()],
            alpha_factor=factor,
            alpha=report.alpha,
            mode=report.mode,
            adjacency=report.adjacency,
            violations=minimal_violations(report.violations),
        )


def minimal_violations(violations: Sequence[DeviationInfo]) -> List[DeviationInfo]:
    """가장 작은 연합 크기의 위반만 남깁니다."""
    if not violations:
        return []
    smallest = min(len(v.coalition) for v in violations)
    return [v for v in violations if len(v.coalition) == smallest]


def search_counterexample(
    family_generator: Iterable[DirectedNetwork],
    alpha_grid: Sequence[float],
    modes: Sequence[VerificationMode],
    max_size: Optional[int] = None,
    adjacency_modes: Sequence[bool] = ADJACENCY_MODES,
) -> SearchReport:
    """alpha_grid 는 1/λ 의 배수(α·λ)로 해석합니다."""
    return CounterexampleSearch().run(
        family_generator, alpha_grid, modes, max_size, adjacency_modes=adjacency_modes
    )
