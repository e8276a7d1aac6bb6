from itertools import combinations
from typing import Iterator, Sequence, Tuple

import networkx as nx

from app.core.network.classifier import influence_digraph
from app.core.network.network import DirectedNetwork, symmetrized


Coalition = Tuple[int, ...]


def adjacent_coalitions(
    net: DirectedNetwork,
    min_size: int,
    max_size: int,
    any_coalition: bool = False,
) -> Iterator[Coalition]:
    """크기 범위 안의 연합을 크기 우선, 사전식 순서로 하나씩 생성합니다.

    인접 연합은 대칭화 그래프의 클리크입니다 (모든 내부 쌍에서 g_ij + g_ji >= 1).
    극대가 아닌 클리크도 모두 필요하므로 networkx 의 enumerate_all_cliques 를 씁니다.
    any_coalition=True 이면 범위 안의 모든 부분집합을 생성합니다.
    """
    if not 2 <= min_size <= max_size <= net.n:
        raise ValueError(
            f"Coalition sizes must satisfy 2 <= min_size <= max_size <= n "
            f"(got min_size={min_size}, max_size={max_size}, n={net.n})"
        )

    if any_coalition:
        for size in range(min_size, max_size + 1):
            yield from combinations(range(net.n), size)
        return

    yield from sorted(_cliques_in_range(net, min_size, max_size), key=lambda c: (len(c), c))


def is_adjacent_coalition(net: DirectedNetwork, coalition: Sequence[int]) -> bool:
    sym = symmetrized(net)
    return all(sym[i, j] >= 1 for i, j in combinations(coalition, 2))


def _cliques_in_range(net: DirectedNetwork, min_size: int, max_size: int) -> Iterator[Coalition]:
    # enumerate_all_cliques 는 크기가 줄지 않는 순서로 생성
    graph = influence_digraph(net).to_undirected()
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) > max_size:
            return
        if len(clique) >= min_size:
            yield tuple(sorted(clique))
