from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


@dataclass(frozen=True, eq=False)
class DirectedNetwork:
    """영향 네트워크

    adjacency[i, j] = g_ij = 1 이면 에이전트 i가 j로부터 외부효과를 받습니다.
    내부 인덱스는 0부터 시작하며, 입출력 계층에서만 1부터 시작하는 번호를 사용합니다.
    """
    adjacency: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.adjacency)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1] or raw.shape[0] < 1:
            raise ValueError(f"Adjacency must be a non-empty square matrix, got shape {raw.shape}")
        if not np.isin(raw, (0, 1)).all():
            raise ValueError("Adjacency entries must be exactly 0 or 1")

        adj = raw.astype(bool, copy=True)
        if adj.diagonal().any():
            loops = [int(i) + 1 for i in np.flatnonzero(adj.diagonal())]
            raise ValueError(f"Self-loops are not allowed (agents {loops})")

        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "DirectedNetwork":
        """0부터 시작하는 (i, j) 쌍 목록으로 네트워크를 만듭니다. (g_ij = 1)"""
        adj = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            adj[i, j] = True
        return cls(adj)

    @classmethod
    def empty(cls, n: int) -> "DirectedNetwork":
        return cls(np.zeros((n, n), dtype=bool))

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[0])

    @property
    def matrix(self) -> np.ndarray:
        """실수형 G 행렬"""
        return self.adjacency.astype(float)

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum())

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.adjacency, self.adjacency.T))

    def edges(self) -> list[Tuple[int, int]]:
        """(i, j) 쌍을 사전식 순서로 반환합니다."""
        return [(int(i), int(j)) for i, j in np.argwhere(self.adjacency)]

    def in_neighbors(self, i: int) -> Tuple[int, ...]:
        """i에게 영향을 주는 에이전트 {j : g_ij = 1}"""
        return tuple(int(j) for j in np.flatnonzero(self.adjacency[i]))

    def out_neighbors(self, i: int) -> Tuple[int, ...]:
        """i가 영향을 주는 에이전트 {k : g_ki = 1}"""
        return tuple(int(k) for k in np.flatnonzero(self.adjacency[:, i]))

    def relabeled(self, perm: Sequence[int]) -> "DirectedNetwork":
        """g'_ij = g_{perm(i) perm(j)} 인 네트워크를 반환합니다."""
        idx = np.asarray(perm, dtype=int)
        return DirectedNetwork(self.adjacency[np.ix_(idx, idx)])

    def encoding(self) -> bytes:
        return self.adjacency.astype(np.uint8).tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedNetwork):
            return NotImplemented
        return bool(np.array_equal(self.adjacency, other.adjacency))

    def __hash__(self) -> int:
        return hash((self.n, self.encoding()))

    def __repr__(self) -> str:
        return f"DirectedNetwork(n={self.n}, edges={self.edge_count})"


class ModelParams(BaseModel):
    """선형-이차 네트워크 게임 파라미터"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    a: float = Field(1.0, gt=0, description="독립 한계효용")
    alpha: float = Field(..., ge=0, description="외부효과 강도")
    c: Optional[float] = Field(None, ge=0, description="가격 관점의 한계비용")

    @model_validator(mode="after")
    def _check_cost(self) -> "ModelParams":
        if self.c is not None and self.c >= self.a:
            raise ValueError(f"Marginal cost c={self.c} must be smaller than a={self.a}")
        return self


@dataclass(frozen=True)
class TierPartition:
    """계층 A_1, ..., A_M (A_1이 루트 계층)"""
    tiers: Tuple[Tuple[int, ...], ...]
    _tier_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tier_of = {}
        for m, tier in enumerate(self.tiers):
            for agent in tier:
                if agent in tier_of:
                    raise ValueError(f"Agent {agent + 1} appears in more than one tier")
                tier_of[agent] = m
        object.__setattr__(self, "_tier_of", tier_of)

    @property
    def M(self) -> int:
        return len(self.tiers)

    @property
    def roots(self) -> Tuple[int, ...]:
        return self.tiers[0]

    def tier_of(self, agent: int) -> int:
        """0부터 시작하는 계층 번호"""
        return self._tier_of[agent]

    def validate(self, net: DirectedNetwork) -> bool:
        """분할의 두 불변식을 네트워크에 대해 다시 검사합니다."""
        if sorted(self._tier_of) != list(range(net.n)):
            return False

        for i, j in net.edges():
            if self.tier_of(i) <= self.tier_of(j):
                return False

        for m, tier in enumerate(self.tiers[1:], start=1):
            for agent in tier:
                if not any(self.tier_of(j) < m for j in net.in_neighbors(agent)):
                    return False
        return True

    def to_one_indexed(self) -> list[list[int]]:
        return [[agent + 1 for agent in tier] for tier in self.tiers]


def symmetrized(net: DirectedNetwork) -> np.ndarray:
    """G + G^T (원소는 0, 1, 2)"""
    g = net.adjacency.astype(np.int64)
    return g + g.T
