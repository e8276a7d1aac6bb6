from typing import Optional

import numpy as np
from loguru import logger

from app.config.setting import settings


def spectral_radius(
    sym: np.ndarray,
    tolerance: Optional[float] = None,
    max_steps: Optional[int] = None,
) -> float:
    """대칭 비음수 행렬의 최대 고유값을 거듭제곱법으로 계산합니다.

    A + cI (c > 0) 에 거듭제곱법을 적용해 이분 그래프의 ±λ 진동을 피하고,
    레일리 몫의 잔차 ||Bv - μv|| 가 허용오차 이하가 되면 멈춥니다.
    대칭 행렬에서는 이 잔차가 고유값 오차의 상한입니다.

    Args:
        sym: 대칭이고 원소가 비음수인 정방 행렬
        tolerance: 목표 정확도 (기본값 settings.SPECTRAL_TOLERANCE)
        max_steps: 최대 반복 횟수

    Returns:
        최대 고유값 λ (영행렬이면 정확히 0)
    """
    tolerance = tolerance if tolerance is not None else settings.SPECTRAL_TOLERANCE
    max_steps = max_steps if max_steps is not None else settings.POWER_ITERATION_MAX_STEPS

    matrix = np.asarray(sym, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {matrix.shape}")
    if not np.array_equal(matrix, matrix.T):
        raise ValueError("spectral_radius requires a symmetric matrix")
    if (matrix < 0).any():
        raise ValueError("spectral_radius requires nonnegative entries")

    if not matrix.any():
        return 0.0

    n = matrix.shape[0]
    shift = float(np.abs(matrix).sum(axis=1).max()) / 2.0
    shifted = matrix + shift * np.eye(n)

    start = np.ones(n)
    for attempt in range(2):
        estimate = _power_iterate(shifted, start, tolerance, max_steps)
        if estimate is not None:
            return max(estimate - shift, 0.0)

        # 시작 벡터가 지배 고유벡터와 직교한 경우
        logger.debug(f"[Spectral] 반복 정체, 시드 {settings.POWER_ITERATION_SEED}로 재시작")
        rng = np.random.default_rng(settings.POWER_ITERATION_SEED)
        start = np.abs(rng.standard_normal(n)) + 0.1

    logger.warning(f"[Spectral] {max_steps}회 안에 수렴하지 않아 eigvalsh로 대체합니다 (n={n})")
    return float(np.linalg.eigvalsh(matrix)[-1])


def _power_iterate(
    shifted: np.ndarray,
    start: np.ndarray,
    tolerance: float,
    max_steps: int,
) -> Optional[float]:
    v = start / np.linalg.norm(start)

    for _ in range(max_steps):
        w = shifted @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return None
        v = w / norm

        bv = shifted @ v
        mu = float(v @ bv)
        residual = float(np.linalg.norm(bv - mu * v))
        if residual <= tolerance:
            return mu
    return None
