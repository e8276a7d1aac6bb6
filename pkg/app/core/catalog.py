from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Tuple

import numpy as np
from loguru import logger

from app.config.setting import settings
from app.core.errors import CatalogEntryNotFound
from app.core.mechanism.anonymity import KnowledgeLevel, equivalence_class, information_cell
from app.core.mechanism.menu_game import verify_with_known_identities
from app.core.network.classifier import FamilyLabel, classify
from app.core.network.families import line
from app.core.network.network import DirectedNetwork, ModelParams
from app.core.solver.contract_solver import (
    auto_alpha,
    class_patterns,
    constrained_first_best,
    first_best,
    katz_bonacich,
)
from app.core.verifier.deviation import Deviation, deviation_gains
from app.core.verifier.ic_verifier import verify_group_ic_transfers
from app.dto.report_dto import CatalogCheckResult, CatalogReport, VerificationMode


def network_from_one_indexed(n: int, edges: Iterable[Tuple[int, int]]) -> DirectedNetwork:
    """1부터 시작하는 (i, j) 쌍 (g_ij = 1) 으로 네트워크를 만듭니다."""
    return DirectedNetwork.from_edges(n, [(i - 1, j - 1) for i, j in edges])


def undirected_from_one_indexed(n: int, pairs: Iterable[Tuple[int, int]]) -> DirectedNetwork:
    both = [edge for i, j in pairs for edge in ((i, j), (j, i))]
    return network_from_one_indexed(n, both)


def path_labeling(left: int, middle: int, right: int) -> DirectedNetwork:
    """오른쪽 → 가운데 → 왼쪽 으로 영향이 흐르는 세 에이전트 경로"""
    return network_from_one_indexed(3, [(middle, right), (left, middle)])


# 세 에이전트 경로의 여섯 라벨 그래프 (왼쪽, 가운데, 오른쪽)
PATH_LABELINGS: Dict[str, Tuple[int, int, int]] = {
    "g1": (2, 1, 3),
    "g2": (1, 2, 3),
    "g3": (1, 3, 2),
    "g4": (2, 3, 1),
    "g5": (3, 1, 2),
    "g6": (3, 2, 1),
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    network: DirectedNetwork


def _build_entries() -> Dict[str, CatalogEntry]:
    entries = [
        CatalogEntry(
            "anonymity-path",
            "3-agent directed path; the true labeled graph g1",
            path_labeling(*PATH_LABELINGS["g1"]),
        ),
        CatalogEntry(
            "three-roots-follower",
            "3 roots and one follower influenced by all of them",
            network_from_one_indexed(4, [(4, 1), (4, 2), (4, 3)]),
        ),
        CatalogEntry(
            "nested-three-tiers",
            "9-agent hierarchy with nested neighborhoods and three tiers",
            network_from_one_indexed(9, [
                (4, 1), (4, 2), (5, 2), (5, 3), (6, 2), (6, 3),
                (7, 1), (7, 2), (7, 3), (7, 4), (7, 5),
                (8, 2), (8, 3), (8, 5), (9, 2), (9, 3), (9, 6),
            ]),
        ),
        CatalogEntry(
            "oriented-tree-7",
            "regular tree oriented towards the root, branching 3 then 1",
            network_from_one_indexed(7, [(2, 1), (3, 1), (4, 1), (5, 2), (6, 3), (7, 4)]),
        ),
        CatalogEntry(
            "line-5",
            "5-agent directed line rooted at agent 5",
            line(5),
        ),
        CatalogEntry(
            "intra-tier-5",
            "two-tier hierarchy with reciprocal links inside the lower tier",
            network_from_one_indexed(5, [
                (2, 1), (3, 1), (3, 2), (3, 4), (3, 5), (4, 1), (4, 2), (4, 3), (4, 5),
                (5, 1), (5, 2), (5, 3), (5, 4),
            ]),
        ),
        CatalogEntry(
            "two-stars",
            "two disjoint undirected 3-stars with hubs 1 and 3",
            undirected_from_one_indexed(8, [(1, 4), (2, 1), (5, 1), (3, 6), (7, 3), (8, 3)]),
        ),
        CatalogEntry(
            "known-root-7",
            "single-root-universal hierarchy whose root identity is known",
            network_from_one_indexed(7, [
                (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1),
                (4, 2), (5, 2), (6, 3), (7, 3),
            ]),
        ),
    ]
    return {entry.name: entry for entry in entries}


@dataclass(frozen=True)
class CatalogCheck:
    name: str
    anchor: str
    run: Callable[["ExampleCatalog"], Tuple[bool, dict]]


class ExampleCatalog:
    """이름 붙은 예제 그래프와 그에 대한 단언 모음"""

    def __init__(self):
        self._entries = _build_entries()

    def names(self) -> List[str]:
        return list(self._entries)

    def get(self, name: str) -> CatalogEntry:
        if name not in self._entries:
            raise CatalogEntryNotFound(name, self.names())
        return self._entries[name]

    def network(self, name: str) -> DirectedNetwork:
        return self.get(name).network

    def run_checks(self) -> CatalogReport:
        results = []
        for check in CHECKS:
            passed, detail = check.run(self)
            logger.info(f"[Catalog] {check.name}: {'pass' if passed else 'FAIL'}")
            results.append(CatalogCheckResult(
                name=check.name, anchor=check.anchor, passed=bool(passed), detail=detail
            ))
        return CatalogReport(passed=all(r.passed for r in results), checks=results)


@lru_cache(maxsize=1)
def get_catalog() -> ExampleCatalog:
    """ExampleCatalog 싱글톤 인스턴스를 반환합니다."""
    return ExampleCatalog()


# ============================================================
# 단언
# ============================================================

def _close(values: Iterable[float], expected: Iterable[float], tol: float = 1e-9) -> bool:
    return bool(np.allclose(list(values), list(expected), rtol=0, atol=tol))


def _auto_params(net: DirectedNetwork) -> ModelParams:
    return ModelParams(a=1.0, alpha=auto_alpha(net))


def _check_path_class(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    net = catalog.network("anonymity-path")
    klass = equivalence_class(net)
    labeled = {name: path_labeling(*positions) for name, positions in PATH_LABELINGS.items()}
    contains_all = all(graph in klass for graph in labeled.values())
    return klass.size == 6 and contains_all, {"class_size": klass.size}


def _cell_names(cell, labeled: Dict[str, DirectedNetwork]) -> List[str]:
    return sorted(name for name, graph in labeled.items() if graph in cell)


def _check_path_cells(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    net = catalog.network("anonymity-path")
    labeled = {name: path_labeling(*positions) for name, positions in PATH_LABELINGS.items()}
    cells = {agent: information_cell(net, agent, KnowledgeLevel.LOCATION) for agent in range(3)}
    names = {agent + 1: _cell_names(cell, labeled) for agent, cell in cells.items()}
    expected = {1: ["g1", "g5"], 2: ["g1", "g4"], 3: ["g1", "g2"]}

    pooled = all(
        cells[i].members & cells[j].members == {net.encoding()}
        for i in range(3) for j in range(i + 1, 3)
    )
    return names == expected and pooled, {"cells": {str(k): v for k, v in names.items()}, "pooling": pooled}


def _check_path_neighbor_cell(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    net = catalog.network("anonymity-path")
    labeled = {name: path_labeling(*positions) for name, positions in PATH_LABELINGS.items()}
    cell = information_cell(net, 0, KnowledgeLevel.NEIGHBORS)
    names = _cell_names(cell, labeled)
    return names == ["g1"], {"cell": names}


def _check_three_roots(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    net = catalog.network("three-roots-follower")
    a, alpha = 1.0, 0.2
    x = first_best(net, ModelParams(a=a, alpha=alpha)).tolist()
    root = a * (1 + alpha) / (1 - 3 * alpha**2)
    follower = a * (1 + 3 * alpha) / (1 - 3 * alpha**2)
    return _close(x, [root, root, root, follower]), {"x": x}


def _check_nested_classification(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    family = classify(catalog.network("nested-three-tiers"))
    expected = {FamilyLabel.HIERARCHICAL, FamilyLabel.NESTED_NEIGHBORHOODS}
    return set(family.labels) == expected and family.tiers.M == 3, family.to_dict()


def _check_tree_classification(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    family = classify(catalog.network("oriented-tree-7"))
    expected = {FamilyLabel.HIERARCHICAL, FamilyLabel.REGULAR_ORIENTED_TREE}
    return set(family.labels) == expected and family.branching == (3, 1, 0), family.to_dict()


def _check_line_failure(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    net = catalog.network("line-5")
    params = _auto_params(net)
    report = verify_group_ic_transfers(first_best(net, params), net, params)
    pairs = [v.coalition for v in report.violations]
    return report.verdict == "fail" and [3, 4] in pairs, {"violating_coalitions": pairs}


def _check_intra_tier(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    net = catalog.network("intra-tier-5")
    a, alpha = 1.0, 0.15
    params = ModelParams(a=a, alpha=alpha)
    contract = first_best(net, params)
    denominator = 1 - 5 * alpha - 2 * alpha**2
    low, high = a * (1 - alpha) / denominator, a * (1 + alpha) / denominator
    closed_form = _close(contract.tolist(), [low, low, high, high, high])
    report = verify_group_ic_transfers(contract, net, params, max_size=net.n)
    return closed_form and report.passed, {"x": contract.tolist(), "transfers_verdict": report.verdict}


def _check_two_stars(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    net = catalog.network("two-stars")
    params = _auto_params(net)
    adjacent = verify_group_ic_transfers(first_best(net, params), net, params)

    # 허브 1, 잎 2, 허브 3 중 2와 3이 수량을 교환
    deviation = Deviation((0, 1, 2), (0, 2, 1))
    totals = {}
    for alpha in (0.30, 0.40):
        katz_params = ModelParams(a=1.0, alpha=alpha)
        contract = katz_bonacich(net.matrix, alpha)
        totals[alpha] = float(deviation_gains(contract, net, katz_params, deviation).sum())
    tol = settings.GAIN_TOLERANCE
    passed = adjacent.passed and totals[0.30] <= tol and totals[0.40] > tol
    return passed, {"adjacent_verdict": adjacent.verdict, "three_agent_totals": {str(k): v for k, v in totals.items()}}


def _check_tree_nonadjacent_pair(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    net = catalog.network("oriented-tree-7")
    params = _auto_params(net)
    contract = first_best(net, params)
    total = float(deviation_gains(contract, net, params, Deviation.swap(0, 4)).sum())
    expected = params.alpha * (contract[0] - contract[4]) * contract[1]
    adjacent = verify_group_ic_transfers(contract, net, params)
    passed = total > settings.GAIN_TOLERANCE and abs(total - expected) < 1e-9 and adjacent.passed
    return passed, {"pair_total": total, "adjacent_verdict": adjacent.verdict}


def _check_known_root(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    net = catalog.network("known-root-7")
    params = _auto_params(net)
    contract = first_best(net, params)
    unrestricted = verify_group_ic_transfers(contract, net, params)
    restricted = verify_with_known_identities(
        contract, net, params, known={0}, mode=VerificationMode.GROUP_TRANSFERS
    )
    return (not unrestricted.passed) and restricted.passed, {
        "unrestricted_verdict": unrestricted.verdict,
        "known_root_verdict": restricted.verdict,
    }


def _check_root_pooling(catalog: ExampleCatalog) -> Tuple[bool, dict]:
    net = catalog.network("known-root-7")
    params = _auto_params(net)
    classes = class_patterns(net)
    contract = constrained_first_best(net, params, classes)
    worst = max(
        float(deviation_gains(contract, net, params, Deviation.swap(0, j)).sum())
        for j in range(1, net.n)
    )
    return worst <= settings.GAIN_TOLERANCE, {"classes": classes.to_one_indexed(), "worst_root_swap": worst}


CHECKS: List[CatalogCheck] = [
    CatalogCheck("path-equivalence-class", "anonymized 3-path has six labeled graphs", _check_path_class),
    CatalogCheck("path-information-cells", "location-only cells and pooling identify g1", _check_path_cells),
    CatalogCheck("path-neighbor-cell", "knowing in-neighbors pins agent 1 to g1", _check_path_neighbor_cell),
    CatalogCheck("three-roots-closed-form", "follower receives more than the roots", _check_three_roots),
    CatalogCheck("nested-classification", "nine-agent nested hierarchy", _check_nested_classification),
    CatalogCheck("tree-classification", "seven-agent regular oriented tree", _check_tree_classification),
    CatalogCheck("line-pair-deviation", "adjacent pair (3,4) deviates on the 5-line", _check_line_failure),
    CatalogCheck("intra-tier-closed-form", "intra-tier hierarchy first best is immune with transfers", _check_intra_tier),
    CatalogCheck("two-stars-threshold", "non-adjacent triple deviates only above alpha = 1/3", _check_two_stars),
    CatalogCheck("tree-non-adjacent-pair", "non-adjacent pair (1,5) deviates in the oriented tree", _check_tree_nonadjacent_pair),
    CatalogCheck("known-root-immunity", "knowing the root removes every profitable coalition", _check_known_root),
    CatalogCheck("root-pooling-constraint", "pooling root with lower tiers blocks root swaps", _check_root_pooling),
]
