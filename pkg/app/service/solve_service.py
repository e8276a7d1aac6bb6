from loguru import logger

from app.core.errors import ContractError
from app.core.network.classifier import classify
from app.core.network.network import DirectedNetwork, symmetrized
from app.core.network.spectral import spectral_radius
from app.core.solver.contract_solver import (
    EqualityClasses,
    class_patterns,
    constrained_first_best,
    first_best,
    welfare,
)
from app.core.solver.pricing import price_schedule, taxes_for_target
from app.core.verifier.ic_verifier import verify_group_ic_transfers
from app.dto.scenario_dto import Scenario
from app.dto.solve_dto import ClassifyResponse, ConstrainedResponse, SolveResponse
from app.service.scenario_loader import load_network, resolve_params


class SolveService:
    """최선 계약/구조 분류/등식 제약 최적화 서비스"""

    def solve(self, scenario: Scenario) -> SolveResponse:
        """최선 계약과 이를 구현하는 세금, (c 가 있으면) 가격을 계산합니다."""
        net = load_network(scenario)
        params = resolve_params(scenario, net)
        contract = first_best(net, params)
        plan = taxes_for_target(contract, net, params)

        prices, profit = None, None
        if params.c is not None:
            schedule = price_schedule(contract, net, params)
            prices, profit = schedule.prices.tolist(), schedule.profit

        return SolveResponse(
            n=net.n,
            a=params.a,
            alpha=params.alpha,
            spectral_radius=spectral_radius(symmetrized(net)),
            x=contract.tolist(),
            welfare=welfare(contract, net, params),
            taxes=plan.taxes.tolist(),
            prices=prices,
            profit=profit,
        )

    def classify(self, scenario: Scenario) -> ClassifyResponse:
        net = load_network(scenario)
        return ClassifyResponse(n=net.n, **classify(net).to_dict())

    def constrained(self, scenario: Scenario, auto_family: bool = False) -> ConstrainedResponse:
        """등식 제약 최적 계약과 후생 손실, 이전 지불 검증 결과를 함께 반환합니다."""
        net = load_network(scenario)
        params = resolve_params(scenario, net)
        classes = self._classes(scenario, net, auto_family)

        contract = constrained_first_best(net, params, classes)
        best = first_best(net, params)
        constrained_welfare = welfare(contract, net, params)
        best_welfare = welfare(best, net, params)
        logger.info(f"[Solve - Constrained] 후생 손실 {best_welfare - constrained_welfare:.6g}")

        report = verify_group_ic_transfers(
            contract, net, params, scenario.max_size, scenario.adjacency_required
        )
        return ConstrainedResponse(
            alpha=params.alpha,
            classes=classes.to_one_indexed(),
            x=contract.tolist(),
            welfare=constrained_welfare,
            first_best_welfare=best_welfare,
            welfare_loss=best_welfare - constrained_welfare,
            transfers=report,
        )

    @staticmethod
    def _classes(scenario: Scenario, net: DirectedNetwork, auto_family: bool) -> EqualityClasses:
        if scenario.classes is not None:
            return EqualityClasses.from_one_indexed(scenario.classes, net.n)
        if auto_family:
            return class_patterns(net)
        raise ContractError("constrained requires --classes or --auto-family")

