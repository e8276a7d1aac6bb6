from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from math import factorial
from typing import FrozenSet, Iterator, List, Sequence, Tuple

import numpy as np
from loguru import logger

from app.config.setting import settings
from app.core.errors import EnumerationTooLarge
from app.core.network.network import DirectedNetwork


# ============================================================
# 도메인 타입
# ============================================================

@dataclass(frozen=True)
class Labeling:
    """에이전트 → 위치 배정 ℓ (locations[i] = ℓ(i))"""
    locations: Tuple[int, ...]

    def __post_init__(self):
        locations = tuple(int(v) for v in self.locations)
        if sorted(locations) != list(range(len(locations))):
            raise ValueError(f"A labeling must be a bijection onto 0..{len(locations) - 1}, got {locations}")
        object.__setattr__(self, "locations", locations)

    @classmethod
    def identity(cls, n: int) -> "Labeling":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.locations)

    def __getitem__(self, agent: int) -> int:
        return self.locations[agent]

    def inverse(self) -> Tuple[int, ...]:
        """위치 → 에이전트"""
        inverse = [0] * self.n
        for agent, location in enumerate(self.locations):
            inverse[location] = agent
        return tuple(inverse)


class KnowledgeLevel(str, Enum):
    """에이전트가 아는 정보의 수준"""
    LOCATION = "location-only"
    NEIGHBORS = "location-plus-in-neighbors"


@dataclass(frozen=True)
class Architecture:
    """익명화된 구조: 정규 대표 R과 자기동형 사상 수"""
    representative: DirectedNetwork
    automorphisms: int

    @property
    def class_size(self) -> int:
        return factorial(self.representative.n) // self.automorphisms


@dataclass(frozen=True)
class EquivalenceClass:
    members: FrozenSet[bytes]
    size: int

    def __contains__(self, net: DirectedNetwork) -> bool:
        return net.encoding() in self.members


@dataclass(frozen=True)
class InformationCell:
    """에이전트가 구별할 수 없는 라벨 그래프들의 집합 E_i(g)"""
    agent: int
    level: KnowledgeLevel
    members: FrozenSet[bytes]

    def __contains__(self, net: DirectedNetwork) -> bool:
        return net.encoding() in self.members

    def __len__(self) -> int:
        return len(self.members)


# ============================================================
# 재라벨링 열거
# ============================================================

def _check_size(n: int) -> None:
    if n > settings.MAX_ENUMERATION_AGENTS:
        raise EnumerationTooLarge(n, settings.MAX_ENUMERATION_AGENTS)


def _relabeling_chunks(n: int) -> Iterator[np.ndarray]:
    """첫 원소별로 나눈 순열 묶음을 사전식 순서로 생성합니다."""
    if n == 1:
        yield np.zeros((1, 1), dtype=int)
        return
    for first in range(n):
        rest = [v for v in range(n) if v != first]
        tails = np.array(list(permutations(rest)), dtype=int).reshape(-1, n - 1)
        yield np.hstack([np.full((tails.shape[0], 1), first, dtype=int), tails])


def _encodings(adjacency: np.ndarray, perms: np.ndarray) -> np.ndarray:
    """각 순열 π에 대해 g_{π(i)π(j)} 를 펼친 (m, n²) uint8 배열"""
    relabeled = adjacency[perms[:, :, None], perms[:, None, :]]
    return relabeled.reshape(perms.shape[0], -1).astype(np.uint8)


def _lexmin_row(rows: np.ndarray) -> int:
    return int(np.lexsort(rows.T[::-1])[0])


def canonical_form(net: DirectedNetwork) -> Architecture:
    """사전식 최소 인접 인코딩을 구조의 대표로 삼습니다."""
    _check_size(net.n)
    original = net.adjacency.astype(np.uint8).ravel()

    best = None
    automorphisms = 0
    for perms in _relabeling_chunks(net.n):
        encodings = _encodings(net.adjacency, perms)
        automorphisms += int((encodings == original).all(axis=1).sum())
        candidate = encodings[_lexmin_row(encodings)]
        if best is None or _lexmin_row(np.vstack([best, candidate])) == 1:
            best = candidate

    representative = DirectedNetwork(best.reshape(net.n, net.n).astype(bool))
    logger.debug(f"[Anonymity] n={net.n}, |Aut|={automorphisms}")
    return Architecture(representative=representative, automorphisms=automorphisms)


def true_labelings(net: DirectedNetwork, representative: DirectedNetwork) -> List[Labeling]:
    """g_ij = R_{ℓ(i)ℓ(j)} 를 만족하는 모든 ℓ"""
    _check_size(net.n)
    original = net.adjacency.astype(np.uint8).ravel()
    found = []
    for perms in _relabeling_chunks(net.n):
        matches = (_encodings(representative.adjacency, perms) == original).all(axis=1)
        found.extend(Labeling(tuple(row)) for row in perms[matches])
    return found


# ============================================================
# 동치류와 정보 셀
# ============================================================

def equivalence_class(net: DirectedNetwork) -> EquivalenceClass:
    """모든 재라벨링 g'_ij = g_{π(i)π(j)} 의 집합"""
    _check_size(net.n)
    members = set()
    for perms in _relabeling_chunks(net.n):
        unique = np.unique(_encodings(net.adjacency, perms), axis=0)
        members.update(row.tobytes() for row in unique)
    return EquivalenceClass(members=frozenset(members), size=len(members))


def information_cell(net: DirectedNetwork, agent: int, level: KnowledgeLevel) -> InformationCell:
    """에이전트의 지식과 양립하는 라벨 그래프들을 모읍니다.

    위치만 아는 경우: 자신의 실제 위치에 자신을 두는 모든 동치류 원소
    진입 이웃도 아는 경우: 위 조건에 더해 자신의 진입 이웃 집합이 같은 원소
    """
    level = KnowledgeLevel(level)
    architecture = canonical_form(net)
    representative = architecture.representative
    locations = {labeling[agent] for labeling in true_labelings(net, representative)}
    own_row = net.adjacency[agent].astype(np.uint8)

    members = set()
    for perms in _relabeling_chunks(net.n):
        selected = perms[np.isin(perms[:, agent], list(locations))]
        if selected.shape[0] == 0:
            continue
        encodings = _encodings(representative.adjacency, selected)
        if level == KnowledgeLevel.NEIGHBORS:
            rows = encodings.reshape(-1, net.n, net.n)[:, agent, :]
            encodings = encodings[(rows == own_row).all(axis=1)]
        members.update(row.tobytes() for row in np.unique(encodings, axis=0))

    return InformationCell(agent=agent, level=level, members=frozenset(members))


def labeled_graph(representative: DirectedNetwork, labeling: Labeling) -> DirectedNetwork:
    """R과 배정 ℓ 로부터 g_ij = R_{ℓ(i)ℓ(j)} 를 만듭니다."""
    return representative.relabeled(labeling.locations)


def is_automorphism(net: DirectedNetwork, perm: Sequence[int]) -> bool:
    return net.relabeled(perm) == net
