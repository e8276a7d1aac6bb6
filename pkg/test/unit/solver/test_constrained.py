import numpy as np
import pytest

from app.core.errors import ContractError, DimensionMismatch, ReducedSystemNotConcave
from app.core.network.families import line, random_digraph
from app.core.network.network import DirectedNetwork, ModelParams
from app.core.solver.contract_solver import (
    EqualityClasses,
    auto_alpha,
    class_patterns,
    constrained_first_best,
    first_best,
    uniform_optimum,
    welfare,
)


pytestmark = pytest.mark.unit


class TestEqualityClasses:

    def test_normalizes_order(self):
        classes = EqualityClasses(((2, 0), (1,)), 3)
        assert classes.classes == ((0, 2), (1,))
        assert classes.to_one_indexed() == [[1, 3], [2]]

    @pytest.mark.parametrize("groups", [((0,), (0, 1)), ((0,),), ((0, 1), ())])
    def test_rejects_non_partition(self, groups):
        with pytest.raises(ValueError):
            EqualityClasses(groups, 2)

    def test_indicator(self):
        indicator = EqualityClasses.from_one_indexed([[1, 3], [2]], 3).indicator()
        assert indicator.tolist() == [[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]]


class TestConstrainedFirstBest:

    def test_singletons_equal_first_best(self, rng):
        for _ in range(10):
            net = random_digraph(rng, int(rng.integers(2, 8)))
            params = ModelParams(alpha=auto_alpha(net))
            constrained = constrained_first_best(net, params, EqualityClasses.singletons(net.n))
            assert constrained.tolist() == pytest.approx(first_best(net, params).tolist(), abs=1e-9)

    def test_single_class_matches_uniform_formula(self, rng):
        net = random_digraph(rng, 6)
        params = ModelParams(a=1.4, alpha=auto_alpha(net))
        expected = net.n * params.a / (net.n - 2 * params.alpha * net.edge_count)
        constrained = constrained_first_best(net, params, EqualityClasses.single(net.n))
        assert uniform_optimum(net, params) == pytest.approx(expected, abs=1e-12)
        assert constrained.tolist() == pytest.approx([expected] * net.n, abs=1e-9)

    def test_refinement_never_lowers_welfare(self, rng):
        net = random_digraph(rng, 6)
        params = ModelParams(alpha=auto_alpha(net))
        chain = [
            EqualityClasses.single(6),
            EqualityClasses(((0, 1, 2), (3, 4, 5)), 6),
            EqualityClasses(((0, 1), (2,), (3, 4), (5,)), 6),
            EqualityClasses.singletons(6),
        ]
        values = [welfare(constrained_first_best(net, params, c), net, params) for c in chain]
        assert all(later >= earlier - 1e-12 for earlier, later in zip(values, values[1:]))

    def test_not_concave(self):
        net = DirectedNetwork.from_edges(2, [(0, 1), (1, 0)])
        params = ModelParams(alpha=0.6)
        with pytest.raises(ReducedSystemNotConcave):
            constrained_first_best(net, params, EqualityClasses.single(2))
        with pytest.raises(ReducedSystemNotConcave):
            uniform_optimum(net, params)

    def test_dimension_mismatch(self, path3):
        with pytest.raises(DimensionMismatch):
            constrained_first_best(path3, ModelParams(alpha=0.1), EqualityClasses.single(2))


class TestClassPatterns:

    def test_single_root_pools_root_with_lower_tiers(self, catalog):
        classes = class_patterns(catalog.network("known-root-7"))
        assert classes.to_one_indexed() == [[1, 4, 5, 6, 7], [2], [3]]

    def test_nested_with_several_roots_is_one_class(self, catalog):
        classes = class_patterns(catalog.network("three-roots-follower"))
        assert classes.to_one_indexed() == [[1, 2, 3, 4]]

    def test_no_pattern(self):
        with pytest.raises(ContractError, match="No equality-class pattern"):
            class_patterns(line(5))

    def test_pooled_contract_is_constant_on_classes(self, catalog):
        net = catalog.network("known-root-7")
        params = ModelParams(alpha=auto_alpha(net))
        x = constrained_first_best(net, params, class_patterns(net)).x
        assert np.ptp(x[[0, 3, 4, 5, 6]]) < 1e-12
