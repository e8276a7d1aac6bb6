from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from app.core.errors import InvalidDeviation, NotUndirectedError
from app.core.network.network import DirectedNetwork, ModelParams, symmetrized
from app.core.solver.contract_solver import ContractLike, as_vector, utilities


@dataclass(frozen=True)
class Deviation:
    """연합 S와 위치 순열 ρ_S

    coalition[k] 번째 구성원은 rho[k] 의 위치를 보고합니다.
    """
    coalition: Tuple[int, ...]
    rho: Tuple[int, ...]

    def __post_init__(self):
        coalition = tuple(int(i) for i in self.coalition)
        rho = tuple(int(i) for i in self.rho)
        if len(coalition) < 2:
            raise InvalidDeviation(f"A coalition needs at least 2 members, got {len(coalition)}")
        if len(set(coalition)) != len(coalition):
            raise InvalidDeviation(f"Coalition members must be distinct: {coalition}")
        if len(rho) != len(coalition) or sorted(rho) != sorted(coalition):
            raise InvalidDeviation(f"rho must be a permutation of the coalition {coalition}, got {rho}")
        if rho == coalition:
            raise InvalidDeviation("The identity permutation is not a deviation")
        object.__setattr__(self, "coalition", coalition)
        object.__setattr__(self, "rho", rho)

    @classmethod
    def swap(cls, i: int, j: int) -> "Deviation":
        return cls((i, j), (j, i))

    def check_bounds(self, n: int) -> None:
        if min(self.coalition) < 0 or max(self.coalition) >= n:
            raise InvalidDeviation(f"Coalition {self.coalition} is out of range for n={n}")

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """비구성원은 진실 보고 값을 유지한 편차 후 프로필"""
        permuted = np.array(vector, dtype=float, copy=True)
        permuted[list(self.coalition)] = vector[list(self.rho)]
        return permuted


# ============================================================
# 이득 계산
# ============================================================

def batch_member_gains(
    vector: np.ndarray,
    matrix: np.ndarray,
    params: ModelParams,
    members: Sequence[int],
    images: np.ndarray,
    base_utilities: np.ndarray,
) -> np.ndarray:
    """여러 순열에 대한 구성원별 효용 변화를 한 번에 계산합니다.

    Args:
        vector: 진실 보고 시 수량 벡터
        matrix: G (실수형)
        members: 연합 구성원 (정렬됨)
        images: (P, k) 배열, 각 행은 구성원이 보고하는 위치
        base_utilities: 진실 보고 시 모든 에이전트의 효용

    Returns:
        (P, k) 이득 배열
    """
    members = list(members)
    profiles = np.tile(vector, (images.shape[0], 1))
    member_values = vector[images]
    profiles[:, members] = member_values

    externality = profiles @ matrix[members].T
    after = params.a * member_values - 0.5 * member_values**2 + params.alpha * member_values * externality
    return after - base_utilities[members]


def deviation_gains(
    x: ContractLike,
    net: DirectedNetwork,
    params: ModelParams,
    dev: Deviation,
) -> np.ndarray:
    """편차 후 효용에서 진실 보고 효용을 뺀 구성원별 이득 (coalition 순서)"""
    vector = as_vector(x, net.n)
    dev.check_bounds(net.n)
    gains = batch_member_gains(
        vector,
        net.matrix,
        params,
        dev.coalition,
        np.array([dev.rho]),
        utilities(vector, net, params),
    )
    return gains[0]


def has_uniform_internal_weights(sym: np.ndarray, members: Sequence[int]) -> bool:
    """연합 내부 모든 쌍의 대칭 가중치가 같은지 검사합니다."""
    block = sym[np.ix_(members, members)]
    upper = block[np.triu_indices(len(members), k=1)]
    return bool(upper.size == 0 or (upper == upper[0]).all())


def total_gain_fast(
    x: ContractLike,
    net: DirectedNetwork,
    params: ModelParams,
    dev: Deviation,
) -> float:
    """내부 외부효과가 상쇄되는 연합에서의 총 이득

    α Σ_{i∈S} Σ_{j∉S} g_ij (x_ρ(i) - x_i) x_j
    """
    members = list(dev.coalition)
    if not has_uniform_internal_weights(symmetrized(net), members):
        raise InvalidDeviation(
            f"Coalition {tuple(i + 1 for i in members)} has mixed internal weights; "
            "the external-only total gain does not apply"
        )
    vector = as_vector(x, net.n)
    outside = np.ones(net.n, dtype=bool)
    outside[members] = False
    external = net.matrix[members][:, outside] @ vector[outside]
    return float(params.alpha * (vector[list(dev.rho)] - vector[members]) @ external)


# ============================================================
# 쌍별 지표
# ============================================================

def pairwise_swap_margin(x: ContractLike, net: DirectedNetwork, i: int, j: int) -> float:
    """무방향 네트워크에서 (i, j) 교환의 부호 지표

    (x_j - x_i) (Σ_{k≠j} g_ik x_k - Σ_{k≠i} g_jk x_k)
    서로의 항을 합에서 빼므로 α를 곱하면 교환의 총 이득과 같습니다.
    """
    if not net.is_symmetric:
        raise NotUndirectedError("pairwise_swap_margin requires an undirected network")
    if i == j:
        raise InvalidDeviation("pairwise_swap_margin requires two distinct agents")
    vector = as_vector(x, net.n)
    matrix = net.matrix
    neighbor_sums = matrix @ vector
    sum_i = neighbor_sums[i] - matrix[i, j] * vector[j]
    sum_j = neighbor_sums[j] - matrix[j, i] * vector[i]
    return float((vector[j] - vector[i]) * (sum_i - sum_j))


def marginal_transfer_welfare(
    x: ContractLike,
    net: DirectedNetwork,
    params: ModelParams,
    i: int,
    j: int,
) -> float:
    """x_i 에서 x_j 로 수량을 옮길 때 후생의 일계 방향미분"""
    if i == j:
        raise InvalidDeviation("marginal_transfer_welfare requires two distinct agents")
    vector = as_vector(x, net.n)
    weighted = symmetrized(net).astype(float) @ vector
    return float((vector[i] - vector[j]) - params.alpha * weighted[i] + params.alpha * weighted[j])
