from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from itertools import permutations
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from app.config.setting import settings
from app.core.network.coalitions import Coalition, adjacent_coalitions
from app.core.network.network import DirectedNetwork, ModelParams
from app.core.solver.contract_solver import ContractLike, as_vector
from app.core.verifier.deviation import batch_member_gains, has_uniform_internal_weights
from app.dto.report_dto import DeviationInfo, ExaminedCounts, VerificationMode, VerificationReport


class Criterion(str, Enum):
    """위반 판정 기준"""
    ALL_STRICT = "all-strict"
    TOTAL = "total"


CRITERION_BY_MODE = {
    VerificationMode.GROUP: Criterion.ALL_STRICT,
    VerificationMode.GROUP_TRANSFERS: Criterion.TOTAL,
}

CHUNKS_PER_WORKER = 4


@dataclass(frozen=True)
class Violation:
    """0부터 시작하는 인덱스의 위반 기록"""
    coalition: Tuple[int, ...]
    rho: Tuple[int, ...]
    gains: Tuple[float, ...]

    @property
    def total(self) -> float:
        return float(sum(self.gains))

    def sort_key(self) -> tuple:
        return (len(self.coalition), self.coalition, self.rho)

    def to_info(self) -> DeviationInfo:
        return DeviationInfo(
            coalition=[i + 1 for i in self.coalition],
            permutation=[i + 1 for i in self.rho],
            gains=list(self.gains),
            total=self.total,
        )


@dataclass(frozen=True)
class _ChunkTask:
    """워커에 전달되는 불변 입력"""
    vector: np.ndarray
    adjacency: np.ndarray
    params: ModelParams
    criterion: Criterion
    tolerance: float
    coalitions: Tuple[Coalition, ...]


def _evaluate_chunk(task: _ChunkTask) -> Tuple[List[Violation], int]:
    """연합 묶음의 모든 비항등 순열을 검사합니다. (워커 프로세스에서 실행)"""
    matrix = task.adjacency.astype(float)
    sym = task.adjacency.astype(np.int64) + task.adjacency.T.astype(np.int64)
    base = task.params.a * task.vector - 0.5 * task.vector**2 \
        + task.params.alpha * task.vector * (matrix @ task.vector)

    found: List[Violation] = []
    examined = 0
    for coalition in task.coalitions:
        members = list(coalition)
        images = np.array(list(permutations(members))[1:], dtype=int)
        examined += images.shape[0]

        if task.criterion == Criterion.TOTAL and has_uniform_internal_weights(sym, members):
            # 내부 외부효과가 상쇄되므로 외부 항만으로 후보를 거름
            outside = np.ones(task.vector.shape[0], dtype=bool)
            outside[members] = False
            external = matrix[members][:, outside] @ task.vector[outside]
            fast_totals = task.params.alpha * (task.vector[images] - task.vector[members]) @ external
            candidates = np.flatnonzero(fast_totals > task.tolerance / 2)
            if candidates.size == 0:
                continue
            images = images[candidates]

        gains = batch_member_gains(task.vector, matrix, task.params, members, images, base)
        if task.criterion == Criterion.ALL_STRICT:
            hits = np.flatnonzero((gains > task.tolerance).all(axis=1))
        else:
            hits = np.flatnonzero(gains.sum(axis=1) > task.tolerance)

        for row in hits:
            found.append(Violation(
                coalition=coalition,
                rho=tuple(int(v) for v in images[row]),
                gains=tuple(float(g) for g in gains[row]),
            ))
    return found, examined


class IncentiveVerifier:
    """연합 편차를 전수 열거하는 검증 엔진"""

    def __init__(self, workers: Optional[int] = None, tolerance: Optional[float] = None):
        self._workers = workers if workers is not None else settings.VERIFY_WORKERS
        self._tolerance = tolerance if tolerance is not None else settings.GAIN_TOLERANCE

    @property
    def tolerance(self) -> float:
        return self._tolerance

    def verify(
        self,
        x: ContractLike,
        net: DirectedNetwork,
        params: ModelParams,
        mode: VerificationMode,
        max_size: Optional[int] = None,
        adjacency_required: bool = True,
        excluded: Iterable[int] = (),
        workers: Optional[int] = None,
    ) -> VerificationReport:
        """선택한 기준으로 연합 편차를 전수 검사합니다."""
        mode = VerificationMode(mode)
        if mode not in CRITERION_BY_MODE:
            raise ValueError(
                f"Mode '{mode.value}' is not a coalition mode. "
                f"Available modes: {', '.join(m.value for m in CRITERION_BY_MODE)}"
            )
        vector = as_vector(x, net.n)
        size_cap = min(max_size if max_size is not None else settings.DEFAULT_MAX_SIZE, net.n)
        coalitions = self._coalitions(net, size_cap, adjacency_required, set(excluded))

        task = _ChunkTask(
            vector=np.array(vector, dtype=float),
            adjacency=net.adjacency,
            params=params,
            criterion=CRITERION_BY_MODE[mode],
            tolerance=self._tolerance,
            coalitions=(),
        )
        found, examined = self._fan_out(task, coalitions, workers or self._workers)
        found.sort(key=Violation.sort_key)

        logger.info(
            f"[Verifier] {mode.value}: {len(coalitions)}개 연합, {examined}개 순열, 위반 {len(found)}건"
        )
        return VerificationReport(
            verdict="fail" if found else "pass",
            mode=mode,
            adjacency=adjacency_required,
            max_size=size_cap,
            alpha=params.alpha,
            violations=[violation.to_info() for violation in found],
            examined=ExaminedCounts(coalitions=len(coalitions), permutations=examined),
        )

    # ===== 열거와 병렬 처리 =====

    def _coalitions(
        self,
        net: DirectedNetwork,
        size_cap: int,
        adjacency_required: bool,
        excluded: set,
    ) -> List[Coalition]:
        if size_cap < 2:
            return []
        stream = adjacent_coalitions(net, 2, size_cap, any_coalition=not adjacency_required)
        return [coalition for coalition in stream if excluded.isdisjoint(coalition)]

    def _fan_out(
        self,
        task: _ChunkTask,
        coalitions: Sequence[Coalition],
        workers: int,
    ) -> Tuple[List[Violation], int]:
        if workers <= 1 or len(coalitions) < 2:
            return _evaluate_chunk(_with_coalitions(task, coalitions))

        chunk_count = min(len(coalitions), workers * CHUNKS_PER_WORKER)
        chunks = [tuple(coalitions[k::chunk_count]) for k in range(chunk_count)]
        logger.debug(f"[Verifier - FanOut] {len(chunks)}개 묶음 → {workers}개 워커")

        found: List[Violation] = []
        examined = 0
        with ProcessPoolExecutor(max_workers=workers) as executor:
            for chunk_found, chunk_examined in executor.map(
                _evaluate_chunk, [_with_coalitions(task, chunk) for chunk in chunks]
            ):
                found.extend(chunk_found)
                examined += chunk_examined
        logger.debug(f"[Verifier - Merge] {len(found)}건 병합")
        return found, examined


def _with_coalitions(task: _ChunkTask, coalitions: Sequence[Coalition]) -> _ChunkTask:
    return replace(task, coalitions=tuple(coalitions))


@lru_cache(maxsize=1)
def get_verifier() -> IncentiveVerifier:
    """IncentiveVerifier 싱글톤 인스턴스를 반환합니다."""
    return IncentiveVerifier()


# ============================================================
# 모드별 진입점
# ============================================================

def verify_group_ic(
    x: ContractLike,
    net: DirectedNetwork,
    params: ModelParams,
    max_size: Optional[int] = None,
    adjacency_required: bool = True,
    excluded: Iterable[int] = (),
    workers: Optional[int] = None,
) -> VerificationReport:
    """모든 구성원이 ε보다 크게 이득을 보는 편차가 있으면 실패"""
    return get_verifier().verify(
        x, net, params, VerificationMode.GROUP, max_size, adjacency_required, excluded, workers
    )


def verify_group_ic_transfers(
    x: ContractLike,
    net: DirectedNetwork,
    params: ModelParams,
    max_size: Optional[int] = None,
    adjacency_required: bool = True,
    excluded: Iterable[int] = (),
    workers: Optional[int] = None,
) -> VerificationReport:
    """총 이득이 ε보다 큰 편차가 있으면 실패 (이전 지불 허용)"""
    return get_verifier().verify(
        x, net, params, VerificationMode.GROUP_TRANSFERS, max_size, adjacency_required, excluded, workers
    )
