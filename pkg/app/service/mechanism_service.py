from enum import Enum
from typing import List

from app.core.mechanism.anonymity import canonical_form, true_labelings
from app.core.mechanism.menu_game import NeighborReportMode, menu_game_audit, neighbor_mechanism_audit
from app.core.solver.contract_solver import first_best
from app.dto.scenario_dto import Scenario
from app.dto.solve_dto import MechanismResponse
from app.service.scenario_loader import load_network, resolve_params


class AuditKind(str, Enum):
    """mechanism 명령에서 실행할 감사 종류"""
    MENU = "menu"
    NEIGHBORS = "neighbors"
    ALL = "all"

    @classmethod
    def values(cls) -> List[str]:
        return [kind.value for kind in cls]


class MechanismService:
    """익명 구현 메커니즘 감사 서비스"""

    def audit(
        self,
        scenario: Scenario,
        kind: AuditKind = AuditKind.ALL,
        report_mode: NeighborReportMode = NeighborReportMode.TRUTHFUL,
    ) -> MechanismResponse:
        """정규 대표의 최선 계약을 메뉴로 삼아 감사합니다."""
        kind = AuditKind(kind)
        net = load_network(scenario)
        params = resolve_params(scenario, net)
        architecture = canonical_form(net)

        menu_report = None
        if kind in (AuditKind.MENU, AuditKind.ALL):
            representative = architecture.representative
            menu = first_best(representative, params)
            labeling = true_labelings(net, representative)[0]
            menu_report = menu_game_audit(menu, net, params, labeling)

        neighbor_report = None
        if kind in (AuditKind.NEIGHBORS, AuditKind.ALL):
            neighbor_report = neighbor_mechanism_audit(net, params, report_mode)

        return MechanismResponse(
            alpha=params.alpha,
            class_size=architecture.class_size,
            automorphisms=architecture.automorphisms,
            menu=menu_report,
            neighbors=neighbor_report,
        )

    @staticmethod
    def passed(response: MechanismResponse) -> bool:
        reports = [r for r in (response.menu, response.neighbors) if r is not None]
        return all(report.verdict == "pass" for report in reports)
