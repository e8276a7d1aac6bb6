from enum import Enum
from typing import Callable, Dict, Iterator, List, Sequence

import numpy as np
from loguru import logger

from app.core.network.network import DirectedNetwork


# ============================================================
# 구조 계열별 무작위 생성기
# ============================================================

def random_digraph(rng: np.random.Generator, n: int, p: float = 0.5) -> DirectedNetwork:
    """각 순서쌍 (i, j), i != j 에 독립적으로 g_ij = 1 (확률 p)"""
    adj = rng.random((n, n)) < p
    np.fill_diagonal(adj, False)
    return DirectedNetwork(adj)


def random_undirected(rng: np.random.Generator, n: int, p: float = 0.4) -> DirectedNetwork:
    """각 무순서쌍에 양방향 간선 (확률 p)"""
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return DirectedNetwork(upper | upper.T)


def random_hierarchy(
    rng: np.random.Generator,
    n: int,
    min_tiers: int = 2,
    max_tiers: int = 4,
    p: float = 0.4,
) -> DirectedNetwork:
    """2~4개 계층의 무작위 계층 네트워크

    계층 m >= 2 의 에이전트는 바로 위 계층에서 최소 한 명에게 영향을 받고,
    더 위 계층의 나머지 에이전트에게는 확률 p로 영향을 받습니다.
    """
    if n < min_tiers:
        raise ValueError(f"Need at least {min_tiers} agents for {min_tiers} tiers, got n={n}")
    tier_count = int(rng.integers(min_tiers, min(max_tiers, n) + 1))
    tiers = _split_into_tiers(rng, n, tier_count)

    adj = np.zeros((n, n), dtype=bool)
    for m in range(1, tier_count):
        upper = [agent for tier in tiers[:m] for agent in tier]
        for agent in tiers[m]:
            adj[agent, rng.choice(tiers[m - 1])] = True
            for other in upper:
                if rng.random() < p:
                    adj[agent, other] = True
    return DirectedNetwork(adj)


def single_root_universal(rng: np.random.Generator, n: int, p: float = 0.4) -> DirectedNetwork:
    """루트 하나가 모든 에이전트에게 영향을 주는 M >= 3 계층 네트워크 (|A_3| >= 2)"""
    if n < 4:
        raise ValueError(f"Single-root-universal hierarchies with M >= 3 need n >= 4, got n={n}")

    rest = n - 1
    tier2 = int(rng.integers(1, rest - 1))
    lower = rest - tier2
    tier_count = 3 if lower < 4 else int(rng.integers(3, 5))
    # 세 번째 계층에 최소 2명
    lower_sizes = _composition(rng, lower - 1, tier_count - 2)
    lower_sizes[0] += 1

    sizes = [1, tier2] + lower_sizes
    tiers = _tiers_from_sizes(sizes)

    adj = np.zeros((n, n), dtype=bool)
    root = tiers[0][0]
    for m in range(1, len(tiers)):
        middle = [agent for tier in tiers[1:m] for agent in tier]
        for agent in tiers[m]:
            adj[agent, root] = True
            if m >= 2:
                adj[agent, rng.choice(tiers[m - 1])] = True
                for other in middle:
                    if rng.random() < p:
                        adj[agent, other] = True
    return DirectedNetwork(adj)


def nested_neighborhoods(rng: np.random.Generator, n: int) -> DirectedNetwork:
    """모든 상위 계층에게 영향을 받는 계층 네트워크 (중첩 이웃)

    계층 크기는 감소하지 않고, 루트 계층은 2명 이상, 마지막 계층은 첫 계층보다 큽니다.
    n은 상한으로만 쓰입니다.
    """
    if n < 5:
        raise ValueError(f"Nested-neighborhood instances need n >= 5, got n={n}")

    while True:
        tier_count = int(rng.integers(2, 5))
        sizes = [int(rng.integers(2, 4))]
        for _ in range(tier_count - 1):
            sizes.append(sizes[-1] + int(rng.integers(0, 2)))
        if sizes[-1] == sizes[0]:
            sizes[-1] += 1
        if sum(sizes) <= n:
            break

    tiers = _tiers_from_sizes(sizes)
    total = sum(sizes)
    adj = np.zeros((total, total), dtype=bool)
    for m in range(1, len(tiers)):
        for agent in tiers[m]:
            for tier in tiers[:m]:
                adj[agent, list(tier)] = True
    return DirectedNetwork(adj)


DECREASING_PROFILES: List[Sequence[int]] = [
    (2,), (3,), (2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3),
    (5, 2), (3, 2, 1), (4, 2, 1), (4, 3, 1),
]


def regular_oriented_tree(rng: np.random.Generator, n: int) -> DirectedNetwork:
    """분기 수가 엄격히 감소하는 루트 방향 정규 트리"""
    fitting = [profile for profile in DECREASING_PROFILES if _tree_size(profile) <= n]
    if not fitting:
        raise ValueError(f"No strictly decreasing branching profile fits in n={n}")
    profile = fitting[int(rng.integers(len(fitting)))]
    return tree_from_profile(profile)


def tree_from_profile(profile: Sequence[int]) -> DirectedNetwork:
    """분기 프로필 (b_1, ..., b_L) 로 트리를 만듭니다. 자식 i는 부모 j에게 영향을 받습니다 (g_ij = 1)."""
    edges = []
    frontier = [0]
    next_id = 1
    for branching in profile:
        children = []
        for parent in frontier:
            for _ in range(branching):
                edges.append((next_id, parent))
                children.append(next_id)
                next_id += 1
        frontier = children
    return DirectedNetwork.from_edges(next_id, edges)


def line(n: int) -> DirectedNetwork:
    """g_{i,i+1} = 1 인 방향 경로 (루트는 마지막 에이전트)"""
    return DirectedNetwork.from_edges(n, [(i, i + 1) for i in range(n - 1)])


# ============================================================
# 계열 레지스트리
# ============================================================

class FamilyName(str, Enum):
    """search 명령에서 쓰는 계열 이름"""
    DIGRAPH = "digraph"
    UNDIRECTED = "undirected"
    HIERARCHY = "hierarchy"
    SINGLE_ROOT = "single-root"
    NESTED = "nested"
    TREE = "tree"

    @classmethod
    def values(cls) -> List[str]:
        return [family.value for family in cls]


GENERATORS: Dict[FamilyName, Callable[[np.random.Generator, int], DirectedNetwork]] = {
    FamilyName.DIGRAPH: random_digraph,
    FamilyName.UNDIRECTED: random_undirected,
    FamilyName.HIERARCHY: random_hierarchy,
    FamilyName.SINGLE_ROOT: single_root_universal,
    FamilyName.NESTED: nested_neighborhoods,
    FamilyName.TREE: regular_oriented_tree,
}

# 생성기가 받아들이는 최소 에이전트 수
MIN_AGENTS: Dict[FamilyName, int] = {
    FamilyName.DIGRAPH: 1,
    FamilyName.UNDIRECTED: 1,
    FamilyName.HIERARCHY: 2,
    FamilyName.SINGLE_ROOT: 4,
    FamilyName.NESTED: 5,
    FamilyName.TREE: 3,
}


def sample_family(
    family: FamilyName,
    count: int,
    seed: int,
    n_min: int,
    n_max: int,
) -> Iterator[DirectedNetwork]:
    """시드가 같으면 같은 인스턴스 열을 생성합니다.

    n_min 은 계열의 최소 크기로 올려 잡습니다.
    """
    family = FamilyName(family)
    floor = MIN_AGENTS[family]
    if n_min < floor:
        logger.debug(f"[Families] {family.value}: n_min {n_min} -> {floor}")
        n_min = floor
    if n_min > n_max:
        raise ValueError(f"n_min={n_min} exceeds n_max={n_max} for family '{family.value}'")
    rng = np.random.default_rng(seed)
    generator = GENERATORS[family]
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        yield generator(rng, n)


# ===== 내부 헬퍼 =====

def _composition(rng: np.random.Generator, total: int, parts: int) -> List[int]:
    """total을 양의 정수 parts개로 나눕니다."""
    cuts = sorted(rng.choice(np.arange(1, total), size=parts - 1, replace=False)) if parts > 1 else []
    bounds = [0, *[int(c) for c in cuts], total]
    return [bounds[k + 1] - bounds[k] for k in range(parts)]


def _split_into_tiers(rng: np.random.Generator, n: int, tier_count: int) -> List[List[int]]:
    return _tiers_from_sizes(_composition(rng, n, tier_count))


def _tiers_from_sizes(sizes: Sequence[int]) -> List[List[int]]:
    tiers, start = [], 0
    for size in sizes:
        tiers.append(list(range(start, start + size)))
        start += size
    return tiers


def _tree_size(profile: Sequence[int]) -> int:
    size, width = 1, 1
    for branching in profile:
        width *= branching
        size += width
    return size
