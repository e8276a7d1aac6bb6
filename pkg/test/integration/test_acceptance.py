from itertools import product

import numpy as np
import pytest

from app.config.setting import settings
from app.core.network.classifier import FamilyLabel, classify
from app.core.network.families import (
    line,
    nested_neighborhoods,
    random_digraph,
    random_hierarchy,
    random_undirected,
    regular_oriented_tree,
    single_root_universal,
)
from app.core.network.network import DirectedNetwork, ModelParams
from app.core.solver.contract_solver import (
    EqualityClasses,
    auto_alpha,
    class_patterns,
    constrained_first_best,
    first_best,
    katz_bonacich,
    uniform_optimum,
)
from app.core.mechanism.menu_game import neighbor_mechanism_audit
from app.core.verifier.deviation import Deviation, deviation_gains, marginal_transfer_welfare
from app.core.verifier.ic_verifier import verify_group_ic, verify_group_ic_transfers


pytestmark = pytest.mark.integration

TOL = settings.GAIN_TOLERANCE


def _first_best(net):
    params = ModelParams(alpha=auto_alpha(net))
    return first_best(net, params), params


def _scalar_oracle(n, m, a, alpha):
    """격자 탐색 후 구간을 좁혀 가며 균등 계약의 최적 값을 찾습니다."""
    def uniform_welfare(v):
        return n * (a * v - v**2 / 2) + alpha * m * v**2

    low, high = 0.0, 10.0 * a
    for _ in range(6):
        grid = np.linspace(low, high, 1001)
        best = grid[int(np.argmax(uniform_welfare(grid)))]
        step = (high - low) / 1000
        low, high = max(best - step, 0.0), best + step
    return float((low + high) / 2)


# ============================================================
# 그룹 유인 양립성 (조정 없음)
# ============================================================

class TestSmallGroups:

    @pytest.mark.slow
    def test_every_four_node_digraph(self):
        pairs = [(i, j) for i in range(4) for j in range(4) if i != j]
        for bits in product((0, 1), repeat=len(pairs)):
            if not any(bits):
                continue
            net = DirectedNetwork.from_edges(4, [pair for pair, bit in zip(pairs, bits) if bit])
            x, params = _first_best(net)
            assert verify_group_ic(x, net, params, max_size=4).passed, net.edges()

    @pytest.mark.slow
    def test_random_digraphs_up_to_size_four(self, rng):
        for _ in range(500):
            net = random_digraph(rng, int(rng.integers(5, 8)))
            x, params = _first_best(net)
            assert verify_group_ic(x, net, params, max_size=4).passed, net.edges()

    def test_random_digraphs_sample(self, rng):
        for _ in range(40):
            net = random_digraph(rng, int(rng.integers(3, 7)))
            x, params = _first_best(net)
            assert verify_group_ic(x, net, params, max_size=4).passed, net.edges()


class TestHierarchies:

    @pytest.mark.parametrize("count", [pytest.param(200, marks=pytest.mark.slow), 25])
    def test_group_ic_holds(self, rng, count):
        for _ in range(count):
            net = random_hierarchy(rng, int(rng.integers(2, 11)))
            x, params = _first_best(net)
            assert verify_group_ic(x, net, params, max_size=5).passed, net.edges()


# ============================================================
# 이전 지불이 있는 경우
# ============================================================

class TestUndirected:

    @pytest.mark.parametrize("count", [pytest.param(200, marks=pytest.mark.slow), 25])
    def test_transfers_hold_for_adjacent_coalitions(self, rng, count):
        for _ in range(count):
            net = random_undirected(rng, int(rng.integers(2, 11)), p=0.4)
            x, params = _first_best(net)
            assert verify_group_ic_transfers(x, net, params, max_size=5).passed, net.edges()


class TestSingleRoot:

    def test_root_and_lower_tier_pair_deviates(self, rng):
        for _ in range(50):
            net = single_root_universal(rng, int(rng.integers(4, 10)))
            family = classify(net)
            root = family.root
            x, params = _first_best(net)
            report = verify_group_ic_transfers(x, net, params)

            assert report.verdict == "fail"
            pairs = [v.coalition for v in report.violations if len(v.coalition) == 2]
            assert any(
                root + 1 in pair and family.tiers.tier_of(next(k for k in pair if k != root + 1) - 1) >= 2
                for pair in pairs
            ), pairs

    def test_pooling_removes_root_swaps(self, rng):
        for _ in range(50):
            net = single_root_universal(rng, int(rng.integers(4, 10)))
            params = ModelParams(alpha=auto_alpha(net))
            classes = class_patterns(net)
            x = constrained_first_best(net, params, classes)
            root = classify(net).root
            pooled = next(group for group in classes.classes if root in group)
            for other in pooled:
                if other == root:
                    continue
                gains = deviation_gains(x, net, params, Deviation.swap(min(root, other), max(root, other)))
                assert float(gains.sum()) == pytest.approx(0.0, abs=TOL)

    def test_raising_an_underpaid_root_increases_welfare(self, rng):
        for _ in range(50):
            net = single_root_universal(rng, int(rng.integers(4, 10)))
            family = classify(net)
            root = family.root
            lower = [agent for agent in range(net.n) if family.tiers.tier_of(agent) >= 2]
            x, params = _first_best(net)

            # 루트를 세 번째 이하 계층의 최솟값보다 낮춤
            contract = x.x.copy()
            contract[root] = min(contract[lower]) - 0.1
            for agent in lower:
                assert contract[root] < contract[agent]
                assert marginal_transfer_welfare(contract, net, params, agent, root) > TOL


class TestNested:

    def test_first_best_fails_and_uniform_optimum_matches(self, rng):
        for _ in range(50):
            net = nested_neighborhoods(rng, int(rng.integers(5, 11)))
            x, params = _first_best(net)
            assert not verify_group_ic_transfers(x, net, params).passed

            expected = uniform_optimum(net, params)
            single = constrained_first_best(net, params, EqualityClasses.single(net.n))
            assert single.tolist() == pytest.approx([expected] * net.n, abs=1e-9)
            oracle = _scalar_oracle(net.n, net.edge_count, params.a, params.alpha)
            assert oracle == pytest.approx(expected, abs=1e-6)


class TestOrientedTrees:

    def test_decreasing_branching(self, rng):
        for _ in range(50):
            net = regular_oriented_tree(rng, 30)
            family = classify(net)
            roots = set(family.tiers.roots)
            x, params = _first_best(net)
            for i, j in net.edges():
                if j not in roots:
                    assert x[i] < x[j]
            assert verify_group_ic_transfers(x, net, params).passed

    def test_line_control(self):
        net = line(5)
        x, params = _first_best(net)
        report = verify_group_ic_transfers(x, net, params)
        assert [v.coalition for v in report.violations] == [[3, 4]]


# ============================================================
# 인접하지 않은 연합
# ============================================================

class TestNonAdjacent:

    @staticmethod
    def _three_agent_total(net, contract, alpha):
        deviation = Deviation((0, 1, 2), (0, 2, 1))
        return float(deviation_gains(contract, net, ModelParams(alpha=alpha), deviation).sum())

    def test_katz_contract_threshold(self, catalog):
        net = catalog.network("two-stars")
        for alpha in np.round(np.arange(0.30, 0.561, 0.02), 2):
            total = self._three_agent_total(net, katz_bonacich(net.matrix, alpha), alpha)
            assert (total > TOL) == (alpha > 1 / 3), alpha

    def test_first_best_threshold(self, catalog):
        net = catalog.network("two-stars")
        for alpha in np.round(np.arange(0.10, 0.281, 0.02), 2):
            total = self._three_agent_total(net, first_best(net, ModelParams(alpha=alpha)), alpha)
            assert (total > TOL) == (alpha > 1 / 6), alpha

    def test_closed_form_total(self, catalog):
        net = catalog.network("two-stars")
        alpha = 0.4
        beta = katz_bonacich(net.matrix, alpha)
        hub, leaf = beta[0], beta[1]
        expected = alpha * (hub - leaf) * (2 * hub - 3 * leaf)
        assert self._three_agent_total(net, beta, alpha) == pytest.approx(expected, abs=1e-12)

    def test_adjacent_verifier_passes_on_stars(self, catalog):
        net = catalog.network("two-stars")
        x, params = _first_best(net)
        assert verify_group_ic_transfers(x, net, params).passed
        assert not verify_group_ic_transfers(x, net, params, adjacency_required=False, max_size=3).passed

    def test_oriented_tree_pair(self, catalog):
        net = catalog.network("oriented-tree-7")
        x, params = _first_best(net)
        total = float(deviation_gains(x, net, params, Deviation.swap(0, 4)).sum())
        assert total > TOL
        assert total == pytest.approx(params.alpha * (x[0] - x[4]) * x[1], abs=1e-12)
        assert verify_group_ic_transfers(x, net, params).passed


# ============================================================
# 이웃 신원 보고 메커니즘
# ============================================================

class TestNeighborMechanism:

    def test_consistent_reports_never_pay(self, rng):
        for _ in range(50):
            net = random_digraph(rng, int(rng.integers(2, 6)))
            params = ModelParams(alpha=auto_alpha(net))
            report = neighbor_mechanism_audit(net, params)
            assert report.verdict == "pass"
            assert report.unflagged_changes == 0
            assert report.max_consistent_gain is None or report.max_consistent_gain <= TOL
