from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from app.config.setting import settings
from app.core.mechanism.anonymity import Labeling, canonical_form, true_labelings
from app.core.network.network import DirectedNetwork, ModelParams
from app.core.solver.contract_solver import ContractLike, as_vector, first_best, utilities
from app.core.verifier.ic_verifier import get_verifier
from app.dto.report_dto import (
    DeviationInfo,
    ExaminedCounts,
    MenuAuditReport,
    NeighborAuditReport,
    VerificationMode,
    VerificationReport,
)


# ============================================================
# 메뉴 게임 (충돌 시 전원 처벌)
# ============================================================

def menu_game(
    menu: ContractLike,
    announcements: Sequence[int],
    net: DirectedNetwork,
    params: ModelParams,
) -> np.ndarray:
    """위치 보고에 따른 보수를 계산합니다.

    보고가 전단사이면 에이전트 i는 menu[보고 위치] 를 받고, 아니면 모두 0을 받습니다.
    """
    values = as_vector(menu, net.n)
    chosen = [int(v) for v in announcements]
    if len(chosen) != net.n:
        raise ValueError(f"Expected {net.n} announcements, got {len(chosen)}")
    out_of_range = [v + 1 for v in chosen if not 0 <= v < net.n]
    if out_of_range:
        raise ValueError(f"Announced locations {out_of_range} are out of range 1..{net.n}")

    if len(set(chosen)) != net.n:
        return np.zeros(net.n)
    return utilities(values[chosen], net, params)


def _unilateral_misreports(
    menu: np.ndarray,
    net: DirectedNetwork,
    params: ModelParams,
    labeling: Labeling,
    excluded: FrozenSet[int] = frozenset(),
) -> Tuple[np.ndarray, List[Tuple[int, int, float]], int]:
    truthful = list(labeling.locations)
    truthful_payoffs = menu_game(menu, truthful, net, params)

    profitable = []
    examined = 0
    for agent in range(net.n):
        if agent in excluded:
            continue
        for location in range(net.n):
            if location == truthful[agent]:
                continue
            announced = list(truthful)
            announced[agent] = location
            gain = float(menu_game(menu, announced, net, params)[agent] - truthful_payoffs[agent])
            examined += 1
            if gain > settings.GAIN_TOLERANCE:
                profitable.append((agent, location, gain))
    return truthful_payoffs, profitable, examined


def verify_individual_ic(
    x: ContractLike,
    net: DirectedNetwork,
    params: ModelParams,
    excluded: Iterable[int] = (),
) -> VerificationReport:
    """단독 허위 보고는 항상 충돌하므로 진실 보수가 음수인 에이전트만 위반입니다."""
    vector = as_vector(x, net.n)
    _, profitable, examined = _unilateral_misreports(
        vector, net, params, Labeling.identity(net.n), frozenset(excluded)
    )
    violations = [
        DeviationInfo(coalition=[agent + 1], permutation=[location + 1], gains=[gain], total=gain)
        for agent, location, gain in profitable
    ]
    return VerificationReport(
        verdict="fail" if violations else "pass",
        mode=VerificationMode.IC,
        adjacency=False,
        max_size=1,
        alpha=params.alpha,
        violations=violations,
        examined=ExaminedCounts(coalitions=net.n - len(set(excluded)), permutations=examined),
    )


def menu_game_audit(
    menu: ContractLike,
    net: DirectedNetwork,
    params: ModelParams,
    labeling: Optional[Labeling] = None,
) -> MenuAuditReport:
    """모든 단독 허위 보고를 검사합니다."""
    labeling = labeling or Labeling.identity(net.n)
    values = as_vector(menu, net.n)
    payoffs, profitable, examined = _unilateral_misreports(values, net, params, labeling)
    return MenuAuditReport(
        verdict="fail" if profitable else "pass",
        truthful_payoffs=[float(p) for p in payoffs],
        misreports=examined,
        profitable=[
            DeviationInfo(coalition=[agent + 1], permutation=[location + 1], gains=[gain], total=gain)
            for agent, location, gain in profitable
        ],
    )


# ============================================================
# 이웃 신원 보고 메커니즘
# ============================================================

@dataclass(frozen=True)
class NeighborAnnouncement:
    """보고 위치와 진입 이웃 신원 집합"""
    location: int
    neighbors: FrozenSet[int]


class NeighborReportMode(str, Enum):
    """편차 구성원이 이웃 신원을 보고하는 방식"""
    TRUTHFUL = "truthful-neighbors"
    ROLE_CONSISTENT = "role-consistent"


def neighbor_announcements_consistent(
    profile: Sequence[NeighborAnnouncement],
    architecture: DirectedNetwork,
) -> bool:
    """보고 위치가 전단사이고, 각 에이전트가 보고한 이웃들의 보고 위치가
    대표 R에서 그 에이전트 보고 위치의 진입 이웃과 정확히 일치하는지 검사합니다."""
    locations = [announcement.location for announcement in profile]
    if len(profile) != architecture.n or sorted(locations) != list(range(architecture.n)):
        return False

    for announcement in profile:
        mapped = {locations[j] for j in announcement.neighbors if 0 <= j < len(locations)}
        if len(mapped) != len(announcement.neighbors):
            return False
        if mapped != set(architecture.in_neighbors(announcement.location)):
            return False
    return True


def _announced_profile(
    net: DirectedNetwork,
    representative: DirectedNetwork,
    announced: Sequence[int],
    members: FrozenSet[int],
    report_mode: NeighborReportMode,
) -> List[NeighborAnnouncement]:
    holder = {location: agent for agent, location in enumerate(announced)}
    profile = []
    for agent in range(net.n):
        if agent in members and report_mode == NeighborReportMode.ROLE_CONSISTENT:
            neighbors = frozenset(
                holder[k] for k in representative.in_neighbors(announced[agent]) if k in holder
            )
        else:
            neighbors = frozenset(net.in_neighbors(agent))
        profile.append(NeighborAnnouncement(location=announced[agent], neighbors=neighbors))
    return profile


def neighbor_mechanism_audit(
    net: DirectedNetwork,
    params: ModelParams,
    report_mode: NeighborReportMode = NeighborReportMode.TRUTHFUL,
) -> NeighborAuditReport:
    """모든 연합 × 위치 순열에 대해 보고 일관성과 연합 총 이득을 검사합니다.

    메뉴는 정규 대표 R의 최선 계약이며, 외부자는 항상 진실하게 보고합니다.
    """
    report_mode = NeighborReportMode(report_mode)
    architecture = canonical_form(net)
    representative = architecture.representative
    labeling = true_labelings(net, representative)[0]
    menu = first_best(representative, params).x

    truthful = list(labeling.locations)
    truthful_quantities = menu[truthful]
    base = utilities(truthful_quantities, net, params)
    tolerance = settings.GAIN_TOLERANCE

    profiles = consistent = unflagged = 0
    max_gain: Optional[float] = None
    profitable: List[DeviationInfo] = []

    for size in range(2, net.n + 1):
        for coalition in combinations(range(net.n), size):
            members = frozenset(coalition)
            own = [truthful[i] for i in coalition]
            for images in list(permutations(own))[1:]:
                announced = list(truthful)
                for agent, location in zip(coalition, images):
                    announced[agent] = location
                profiles += 1

                profile = _announced_profile(net, representative, announced, members, report_mode)
                quantities = menu[announced]
                changed = bool(np.max(np.abs(quantities - truthful_quantities)) > tolerance)
                if not neighbor_announcements_consistent(profile, representative):
                    continue

                consistent += 1
                if changed and report_mode == NeighborReportMode.TRUTHFUL:
                    unflagged += 1

                after = utilities(quantities, net, params)
                gains = [float(after[i] - base[i]) for i in coalition]
                total = float(sum(gains))
                max_gain = total if max_gain is None else max(max_gain, total)
                if total > tolerance:
                    profitable.append(DeviationInfo(
                        coalition=[i + 1 for i in coalition],
                        permutation=[labeling.inverse()[loc] + 1 for loc in images],
                        gains=gains,
                        total=total,
                    ))

    logger.info(
        f"[Mechanism] {report_mode.value}: 프로필 {profiles}개, 일관 {consistent}개, 이득 {len(profitable)}건"
    )
    return NeighborAuditReport(
        verdict="fail" if profitable or unflagged else "pass",
        report_mode=report_mode.value,
        profiles=profiles,
        consistent=consistent,
        max_consistent_gain=max_gain,
        unflagged_changes=unflagged,
        profitable=profitable,
    )


# ============================================================
# 일부 신원이 알려진 경우
# ============================================================

def verify_with_known_identities(
    x: ContractLike,
    net: DirectedNetwork,
    params: ModelParams,
    known: Iterable[int],
    mode: VerificationMode,
    max_size: Optional[int] = None,
    adjacency_required: bool = True,
    workers: Optional[int] = None,
) -> VerificationReport:
    """알려진 에이전트를 포함하지 않는 연합만 검사합니다."""
    known = frozenset(known)
    outside = [agent + 1 for agent in known if not 0 <= agent < net.n]
    if outside:
        raise ValueError(f"Known agents {outside} are out of range 1..{net.n}")

    mode = VerificationMode(mode)
    if mode == VerificationMode.IC:
        return verify_individual_ic(x, net, params, excluded=known)
    return get_verifier().verify(
        x, net, params, mode, max_size, adjacency_required, excluded=known, workers=workers
    )
