import json
from pathlib import Path
from typing import Optional

from app.core.catalog import get_catalog
from app.core.errors import DimensionMismatch
from app.core.network.network import DirectedNetwork, ModelParams
from app.core.solver.contract_solver import Contract, auto_alpha
from app.dto.graph_dto import ContractPayload, GraphSpec
from app.dto.scenario_dto import Scenario


def load_graph_file(path: str) -> DirectedNetwork:
    """그래프 JSON 파일을 읽어 네트워크로 변환합니다."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return GraphSpec.model_validate(payload).to_network()


def load_network(scenario: Scenario) -> DirectedNetwork:
    if scenario.example is not None:
        return get_catalog().network(scenario.example)
    return load_graph_file(scenario.graph_path)


def resolve_params(scenario: Scenario, net: DirectedNetwork) -> ModelParams:
    """α 가 없으면 factor / λ 로 정합니다."""
    alpha = scenario.alpha if scenario.alpha is not None else auto_alpha(net, scenario.alpha_factor)
    return ModelParams(a=scenario.a, alpha=alpha, c=scenario.c)


def load_contract(path: Optional[str], n: int) -> Optional[Contract]:
    if path is None:
        return None
    payload = ContractPayload.model_validate(json.loads(Path(path).read_text(encoding="utf-8")))
    contract = Contract(payload.x)
    if len(contract) != n:
        raise DimensionMismatch(n, len(contract))
    return contract
