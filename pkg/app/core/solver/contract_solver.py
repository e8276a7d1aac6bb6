from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from app.config.setting import settings
from app.core.errors import (
    ContractError,
    DimensionMismatch,
    ReducedSystemNotConcave,
    SingularSystem,
    SpectralConditionViolated,
)
from app.core.network.classifier import FamilyLabel, classify
from app.core.network.network import DirectedNetwork, ModelParams, symmetrized
from app.core.network.spectral import spectral_radius


# ============================================================
# 도메인 타입
# ============================================================

@dataclass(frozen=True, eq=False)
class Contract:
    """위치별 행동(수량) 벡터"""
    x: np.ndarray

    def __post_init__(self):
        vector = np.array(self.x, dtype=float, copy=True).reshape(-1)
        if not np.isfinite(vector).all():
            raise ValueError("Contract entries must be finite")
        if (vector < 0).any():
            raise ValueError("Contract entries must be nonnegative")
        vector.setflags(write=False)
        object.__setattr__(self, "x", vector)

    def __len__(self) -> int:
        return int(self.x.shape[0])

    def __getitem__(self, i: int) -> float:
        return float(self.x[i])

    def tolist(self) -> list[float]:
        return [float(v) for v in self.x]

    @classmethod
    def uniform(cls, n: int, value: float) -> "Contract":
        return cls(np.full(n, value, dtype=float))


ContractLike = Union[Contract, np.ndarray, Sequence[float]]


@dataclass(frozen=True)
class EqualityClasses:
    """같은 값을 공유해야 하는 에이전트 클래스 분할"""
    classes: Tuple[Tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        normalized = tuple(tuple(sorted(int(i) for i in group)) for group in self.classes)
        flat = [i for group in normalized for i in group]
        if any(len(group) == 0 for group in normalized):
            raise ValueError("Equality classes must be nonempty")
        if sorted(flat) != list(range(self.n)):
            raise ValueError(
                f"Equality classes must be disjoint and cover agents 1..{self.n}"
            )
        object.__setattr__(self, "classes", tuple(sorted(normalized)))

    @classmethod
    def singletons(cls, n: int) -> "EqualityClasses":
        return cls(tuple((i,) for i in range(n)), n)

    @classmethod
    def single(cls, n: int) -> "EqualityClasses":
        return cls((tuple(range(n)),), n)

    @classmethod
    def from_one_indexed(cls, groups: Iterable[Iterable[int]], n: int) -> "EqualityClasses":
        return cls(tuple(tuple(i - 1 for i in group) for group in groups), n)

    def indicator(self) -> np.ndarray:
        """n x k 클래스 지시 행렬 P"""
        matrix = np.zeros((self.n, len(self.classes)))
        for k, group in enumerate(self.classes):
            matrix[list(group), k] = 1.0
        return matrix

    def to_one_indexed(self) -> list[list[int]]:
        return [[i + 1 for i in group] for group in self.classes]


def as_vector(x: ContractLike, n: int) -> np.ndarray:
    vector = x.x if isinstance(x, Contract) else np.asarray(x, dtype=float).reshape(-1)
    if vector.shape[0] != n:
        raise DimensionMismatch(n, int(vector.shape[0]))
    return vector


# ============================================================
# 효용과 후생
# ============================================================

def utilities(x: ContractLike, net: DirectedNetwork, params: ModelParams) -> np.ndarray:
    """U_i = a x_i - x_i^2 / 2 + α x_i Σ_j g_ij x_j 를 모든 에이전트에 대해 계산합니다."""
    vector = as_vector(x, net.n)
    externality = net.matrix @ vector
    return params.a * vector - 0.5 * vector**2 + params.alpha * vector * externality


def utility(i: int, x: ContractLike, net: DirectedNetwork, params: ModelParams) -> float:
    return float(utilities(x, net, params)[i])


def welfare(x: ContractLike, net: DirectedNetwork, params: ModelParams) -> float:
    """효용의 합 (utility()를 0번부터 차례로 더한 값과 같음)"""
    return float(sum(utilities(x, net, params).tolist()))


# ============================================================
# 최선 계약과 Katz-Bonacich 중심성
# ============================================================

def auto_alpha(net: DirectedNetwork, factor: Optional[float] = None) -> float:
    """α = factor / λ. 간선이 없으면 모든 α가 유효하므로 0을 씁니다."""
    factor = factor if factor is not None else settings.AUTO_ALPHA_FACTOR
    if not 0 < factor < 1:
        raise ValueError(f"Auto-alpha factor must lie in (0, 1), got {factor}")
    lam = spectral_radius(symmetrized(net))
    return factor / lam if lam > 0 else 0.0


def first_best(net: DirectedNetwork, params: ModelParams) -> Contract:
    """x* = (I - α(G + G^T))^{-1} a1"""
    sym = symmetrized(net).astype(float)
    lam = spectral_radius(sym)
    if params.alpha * lam >= 1:
        raise SpectralConditionViolated(lam, params.alpha)

    logger.debug(f"[Solver] first-best: n={net.n}, λ={lam:.6g}, α={params.alpha:.6g}")
    system = np.eye(net.n) - params.alpha * sym
    rhs = np.full(net.n, params.a)
    return Contract(solve_checked(system, rhs))


def katz_bonacich(matrix: np.ndarray, delta: float) -> np.ndarray:
    """β = (I - δM)^{-1} 1"""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {m.shape}")
    if (m < 0).any():
        raise ValueError("Katz-Bonacich centrality requires a nonnegative matrix")

    if np.array_equal(m, m.T):
        rho = spectral_radius(m)
    else:
        rho = float(np.max(np.abs(np.linalg.eigvals(m)))) if m.size else 0.0
    if delta * rho >= 1:
        raise SpectralConditionViolated(rho, delta)

    n = m.shape[0]
    return solve_checked(np.eye(n) - delta * m, np.ones(n))


# ============================================================
# 등식 제약 최적화
# ============================================================

def constrained_first_best(
    net: DirectedNetwork,
    params: ModelParams,
    classes: EqualityClasses,
) -> Contract:
    """클래스 내부 값이 같다는 제약 아래 후생을 최대화합니다.

    클래스별로 일계조건을 합산한 축약 시스템 P^T (I - αS) P y = a P^T 1 을 풀고
    y를 다시 에이전트 공간으로 펼칩니다. 축약 행렬이 양의 정부호가 아니면 오류입니다.
    """
    if classes.n != net.n:
        raise DimensionMismatch(net.n, classes.n)

    indicator = classes.indicator()
    sym = symmetrized(net).astype(float)
    reduced = indicator.T @ (np.eye(net.n) - params.alpha * sym) @ indicator

    min_eigenvalue = float(np.linalg.eigvalsh(reduced)[0])
    if min_eigenvalue <= 0:
        raise ReducedSystemNotConcave(min_eigenvalue)

    rhs = params.a * indicator.T @ np.ones(net.n)
    values = solve_checked(reduced, rhs)
    logger.debug(f"[Solver] constrained: {len(classes.classes)}개 클래스, 최소 고유값 {min_eigenvalue:.6g}")
    return Contract(indicator @ values)


def uniform_optimum(net: DirectedNetwork, params: ModelParams) -> float:
    """모두 같은 값을 받을 때의 최적 값 na / (n - 2αm)"""
    n, m = net.n, net.edge_count
    denominator = n - 2 * params.alpha * m
    if denominator <= 0:
        raise ReducedSystemNotConcave(denominator)
    return n * params.a / denominator


def class_patterns(net: DirectedNetwork) -> EqualityClasses:
    """구조 계열에 맞는 등식 제약 클래스를 만듭니다.

    - 단일 루트 계층 (M >= 3): 루트와 세 번째 이하 계층을 한 클래스로, 두 번째 계층은 각자
    - 중첩 이웃 계층 (루트 2명 이상): 모든 에이전트를 한 클래스로
    """
    family = classify(net)

    if FamilyLabel.SINGLE_ROOT_UNIVERSAL in family and family.tiers.M >= 3:
        pooled = (family.root, *[agent for tier in family.tiers.tiers[2:] for agent in tier])
        singles = tuple((agent,) for agent in family.tiers.tiers[1])
        return EqualityClasses((pooled, *singles), net.n)

    if FamilyLabel.NESTED_NEIGHBORHOODS in family and len(family.tiers.roots) >= 2:
        return EqualityClasses.single(net.n)

    raise ContractError(
        "No equality-class pattern applies: expected a single-root-universal hierarchy "
        "with at least 3 tiers or nested neighborhoods with at least 2 roots"
    )


# ===== 내부 헬퍼 =====

def solve_checked(system: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """조밀 직접 분해로 풀고 무한노름 잔차를 확인합니다."""
    try:
        solution = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as e:
        raise SingularSystem(f"Linear system is singular: {e}") from e

    residual = float(np.max(np.abs(system @ solution - rhs))) if rhs.size else 0.0
    if not np.isfinite(residual) or residual >= settings.RESIDUAL_TOLERANCE:
        raise SingularSystem(f"Residual {residual:.3e} exceeds tolerance {settings.RESIDUAL_TOLERANCE:.1e}")
    return solution
