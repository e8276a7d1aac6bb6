from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

import networkx as nx

from app.core.network.network import DirectedNetwork, TierPartition


class FamilyLabel(str, Enum):
    """네트워크 구조 계열"""
    UNDIRECTED = "undirected"
    HIERARCHICAL = "hierarchical"
    SINGLE_ROOT_UNIVERSAL = "single-root-universal"
    NESTED_NEIGHBORHOODS = "nested-neighborhoods"
    REGULAR_ORIENTED_TREE = "regular-oriented-tree"

    @classmethod
    def values(cls) -> List[str]:
        """모든 라벨 이름을 리스트로 반환"""
        return [label.value for label in cls]


@dataclass(frozen=True)
class NetworkFamily:
    """classify 결과 (라벨은 서로 배타적이지 않음)"""
    labels: FrozenSet[FamilyLabel]
    tiers: Optional[TierPartition] = None
    branching: Optional[Tuple[int, ...]] = None
    root: Optional[int] = None

    def __contains__(self, label: FamilyLabel) -> bool:
        return label in self.labels

    def to_dict(self) -> dict:
        return {
            "labels": [label.value for label in FamilyLabel if label in self.labels],
            "tiers": self.tiers.to_one_indexed() if self.tiers else None,
            "branching": list(self.branching) if self.branching is not None else None,
            "root": self.root + 1 if self.root is not None else None,
        }


def influence_digraph(net: DirectedNetwork) -> nx.DiGraph:
    """g_ij = 1 마다 i → j 간선을 갖는 방향 그래프"""
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(net.n))
    digraph.add_edges_from(net.edges())
    return digraph


def tier_partition(net: DirectedNetwork) -> Optional[TierPartition]:
    """최장 경로 계층화로 계층을 계산합니다. 순환이 있으면 None"""
    digraph = influence_digraph(net)
    if not nx.is_directed_acyclic_graph(digraph):
        return None

    # 루트(영향을 받지 않는 에이전트)부터 거꾸로 채움
    level = {}
    for agent in reversed(list(nx.topological_sort(digraph))):
        influencers = net.in_neighbors(agent)
        level[agent] = 1 + max((level[j] for j in influencers), default=-1)

    depth = max(level.values()) + 1
    tiers = tuple(
        tuple(sorted(agent for agent, m in level.items() if m == tier))
        for tier in range(depth)
    )
    return TierPartition(tiers)


def classify(net: DirectedNetwork) -> NetworkFamily:
    """네트워크가 속하는 구조 계열들을 판별합니다."""
    labels = set()
    if net.is_symmetric:
        labels.add(FamilyLabel.UNDIRECTED)

    tiers = tier_partition(net)
    if tiers is None or tiers.M < 2:
        return NetworkFamily(labels=frozenset(labels))

    labels.add(FamilyLabel.HIERARCHICAL)
    roots = set(tiers.roots)

    root = None
    if len(roots) == 1:
        candidate = tiers.roots[0]
        if all(net.adjacency[i, candidate] for i in range(net.n) if i != candidate):
            labels.add(FamilyLabel.SINGLE_ROOT_UNIVERSAL)
            root = candidate

    if _has_nested_neighborhoods(net, roots):
        labels.add(FamilyLabel.NESTED_NEIGHBORHOODS)

    branching = _regular_tree_branching(net, tiers)
    if branching is not None:
        labels.add(FamilyLabel.REGULAR_ORIENTED_TREE)

    return NetworkFamily(labels=frozenset(labels), tiers=tiers, branching=branching, root=root)


def _has_nested_neighborhoods(net: DirectedNetwork, roots: set) -> bool:
    for i, j in net.edges():
        if j in roots:
            continue
        if not set(net.in_neighbors(j)) <= set(net.in_neighbors(i)):
            return False
    return True


def _regular_tree_branching(net: DirectedNetwork, tiers: TierPartition) -> Optional[Tuple[int, ...]]:
    roots = set(tiers.roots)
    for agent in range(net.n):
        if agent not in roots and len(net.in_neighbors(agent)) != 1:
            return None

    branching = []
    for tier in tiers.tiers:
        counts = {len(net.out_neighbors(agent)) for agent in tier}
        if len(counts) != 1:
            return None
        branching.append(counts.pop())
    return tuple(branching)
