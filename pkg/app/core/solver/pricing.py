from dataclasses import dataclass

import numpy as np

from app.config.setting import settings
from app.core.errors import MissingMarginalCost
from app.core.network.network import DirectedNetwork, ModelParams
from app.core.solver.contract_solver import ContractLike, as_vector, utilities, solve_checked


@dataclass(frozen=True)
class PriceSchedule:
    """잉여를 전부 흡수하는 독점 가격"""
    prices: np.ndarray
    profit: float
    consumer_surplus: float


@dataclass(frozen=True)
class TargetingPlan:
    """독립 한계효용에 대한 세금/보조금 개입"""
    taxes: np.ndarray
    intercepts: np.ndarray
    residual: float


def price_schedule(x: ContractLike, net: DirectedNetwork, params: ModelParams) -> PriceSchedule:
    """수량 x_i 에서 U_i - p_i x_i = 0 이 되는 가격을 계산합니다.

    p_i = a - x_i / 2 + α Σ_j g_ij x_j,  π = Σ_i (p_i - c) x_i
    """
    if params.c is None:
        raise MissingMarginalCost("price_schedule requires the marginal cost c")

    vector = as_vector(x, net.n)
    prices = params.a - 0.5 * vector + params.alpha * (net.matrix @ vector)
    profit = float(sum(((prices - params.c) * vector).tolist()))
    surplus = float(np.sum(utilities(vector, net, params) - prices * vector))
    return PriceSchedule(prices=prices, profit=profit, consumer_surplus=surplus)


def taxes_for_target(x: ContractLike, net: DirectedNetwork, params: ModelParams) -> TargetingPlan:
    """x를 개별 최적반응 x_i = â_i + α Σ_j g_ij x_j 의 균형으로 만드는 t_i 를 계산합니다."""
    vector = as_vector(x, net.n)
    peer_effect = params.alpha * (net.matrix @ vector)
    taxes = vector - params.a - peer_effect
    # 부동소수점 잡음은 0으로
    taxes = np.where(np.abs(taxes) <= settings.RESIDUAL_TOLERANCE, 0.0, taxes)
    intercepts = params.a + taxes
    residual = float(np.max(np.abs(vector - intercepts - peer_effect)))
    return TargetingPlan(taxes=taxes, intercepts=intercepts, residual=residual)


def best_response_equilibrium(
    net: DirectedNetwork,
    params: ModelParams,
    intercepts: np.ndarray,
) -> np.ndarray:
    """(I - αG) x = â 의 해 (개입 후 내쉬 균형)"""
    system = np.eye(net.n) - params.alpha * net.matrix
    return solve_checked(system, np.asarray(intercepts, dtype=float))
