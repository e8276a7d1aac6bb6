from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from app.core.network.network import DirectedNetwork


class GraphSpec(BaseModel):
    """그래프 JSON (에이전트 번호는 1부터, [i, j] 는 g_ij = 1)"""
    n: int = Field(..., ge=1, description="에이전트 수")
    edges: List[List[int]] = Field(default_factory=list, description="[i, j] 쌍 목록 (i가 j에게 영향을 받음)")
    undirected: Optional[bool] = Field(None, description="true 이면 각 쌍을 양방향으로 확장")

    @model_validator(mode="after")
    def _check_edges(self) -> "GraphSpec":
        seen = set()
        for edge in self.edges:
            if len(edge) != 2:
                raise ValueError(f"Each edge must be a pair [i, j], got {edge}")
            i, j = edge
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"Edge {edge} is out of range 1..{self.n}")
            if i == j:
                raise ValueError(f"Self-loop {edge} is not allowed")
            key = (min(i, j), max(i, j)) if self.undirected else (i, j)
            if key in seen:
                raise ValueError(f"Duplicate edge {edge}")
            seen.add(key)
        return self

    def to_network(self) -> DirectedNetwork:
        pairs = [(i - 1, j - 1) for i, j in self.edges]
        if self.undirected:
            pairs += [(j, i) for i, j in pairs]
        return DirectedNetwork.from_edges(self.n, pairs)

    @classmethod
    def from_network(cls, net: DirectedNetwork) -> "GraphSpec":
        return cls(n=net.n, edges=[[i + 1, j + 1] for i, j in net.edges()])


class ContractPayload(BaseModel):
    """계약 JSON"""
    x: List[float] = Field(..., min_length=1, description="위치별 수량")
