import numpy as np
import pytest
from pydantic import ValidationError

from app.core.network.network import DirectedNetwork, ModelParams, TierPartition, symmetrized


pytestmark = pytest.mark.unit


class TestDirectedNetwork:

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError, match="Self-loops"):
            DirectedNetwork(np.array([[1, 0], [0, 0]]))

    @pytest.mark.parametrize("raw", [np.zeros((2, 3)), np.zeros((0, 0)), np.zeros(4)])
    def test_rejects_non_square(self, raw):
        with pytest.raises(ValueError, match="square"):
            DirectedNetwork(raw)

    def test_rejects_non_binary_entries(self):
        with pytest.raises(ValueError, match="0 or 1"):
            DirectedNetwork(np.array([[0, 2], [0, 0]]))

    def test_adjacency_is_read_only(self, path3):
        with pytest.raises(ValueError):
            path3.adjacency[0, 2] = True

    def test_neighbors_follow_influence_direction(self, path3):
        assert path3.in_neighbors(0) == (1,)
        assert path3.in_neighbors(2) == ()
        assert path3.out_neighbors(1) == (0,)
        assert path3.out_neighbors(0) == ()

    def test_edges_are_lexicographic(self):
        net = DirectedNetwork.from_edges(3, [(2, 0), (0, 2), (0, 1)])
        assert net.edges() == [(0, 1), (0, 2), (2, 0)]
        assert net.edge_count == 3

    def test_relabeled_reindexes_both_axes(self, path3):
        perm = [2, 0, 1]
        relabeled = path3.relabeled(perm)
        for i in range(3):
            for j in range(3):
                assert relabeled.adjacency[i, j] == path3.adjacency[perm[i], perm[j]]

    def test_equality_and_hash_use_structure(self, path3):
        twin = DirectedNetwork.from_edges(3, [(1, 2), (0, 1)])
        assert twin == path3
        assert hash(twin) == hash(path3)
        assert twin != DirectedNetwork.empty(3)

    def test_symmetrized_counts_reciprocal_links_twice(self):
        net = DirectedNetwork.from_edges(3, [(0, 1), (1, 0), (1, 2)])
        sym = symmetrized(net)
        assert sym[0, 1] == 2
        assert sym[1, 2] == sym[2, 1] == 1
        assert sym[0, 2] == 0
        assert not net.is_symmetric


class TestModelParams:

    def test_defaults(self):
        params = ModelParams(alpha=0.1)
        assert params.a == 1.0
        assert params.c is None

    @pytest.mark.parametrize("kwargs", [
        {"alpha": -0.1},
        {"a": 0.0, "alpha": 0.1},
        {"alpha": float("inf")},
        {"a": 1.0, "alpha": 0.1, "c": 1.0},
    ])
    def test_rejects_invalid_values(self, kwargs):
        with pytest.raises(ValidationError):
            ModelParams(**kwargs)

    def test_is_frozen(self):
        params = ModelParams(alpha=0.1)
        with pytest.raises(ValidationError):
            params.alpha = 0.2


class TestTierPartition:

    def test_rejects_duplicate_agents(self):
        with pytest.raises(ValueError, match="more than one tier"):
            TierPartition(((0,), (0, 1)))

    def test_validate_detects_upward_edge(self, path3):
        good = TierPartition(((2,), (1,), (0,)))
        bad = TierPartition(((1,), (2,), (0,)))
        assert good.validate(path3)
        assert not bad.validate(path3)

    def test_one_indexed_output(self):
        assert TierPartition(((2,), (0, 1))).to_one_indexed() == [[3], [1, 2]]
