from typing import Optional

from app.core.mechanism.menu_game import verify_individual_ic, verify_with_known_identities
from app.core.solver.contract_solver import first_best
from app.core.verifier.ic_verifier import get_verifier
from app.dto.report_dto import VerificationMode, VerificationReport
from app.dto.scenario_dto import Scenario
from app.service.scenario_loader import load_contract, load_network, resolve_params


class VerifyService:
    """계약의 유인 양립성 검증 서비스"""

    def verify(
        self,
        scenario: Scenario,
        contract_path: Optional[str] = None,
        workers: Optional[int] = None,
    ) -> VerificationReport:
        """계약 파일이 없으면 최선 계약을 검증합니다."""
        net = load_network(scenario)
        params = resolve_params(scenario, net)
        contract = load_contract(contract_path, net.n)
        if contract is None:
            contract = first_best(net, params)
        known = [agent - 1 for agent in scenario.known]

        if known:
            return verify_with_known_identities(
                contract, net, params, known, scenario.mode,
                scenario.max_size, scenario.adjacency_required, workers,
            )
        if scenario.mode == VerificationMode.IC:
            return verify_individual_ic(contract, net, params)
        return get_verifier().verify(
            contract, net, params, scenario.mode,
            max_size=scenario.max_size,
            adjacency_required=scenario.adjacency_required,
            workers=workers,
        )
