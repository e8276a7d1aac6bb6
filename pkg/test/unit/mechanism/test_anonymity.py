from math import factorial

import pytest
from networkx.algorithms.isomorphism import DiGraphMatcher

from app.core.catalog import PATH_LABELINGS, path_labeling
from app.core.errors import EnumerationTooLarge
from app.core.mechanism.anonymity import (
    KnowledgeLevel,
    Labeling,
    canonical_form,
    equivalence_class,
    information_cell,
    is_automorphism,
    labeled_graph,
    true_labelings,
)
from app.core.network.classifier import influence_digraph
from app.core.network.families import random_digraph
from app.core.network.network import DirectedNetwork


pytestmark = pytest.mark.unit


def _automorphism_count(net: DirectedNetwork) -> int:
    digraph = influence_digraph(net)
    return sum(1 for _ in DiGraphMatcher(digraph, digraph).isomorphisms_iter())


class TestLabeling:

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError, match="bijection"):
            Labeling((0, 0, 1))

    def test_inverse(self):
        labeling = Labeling((2, 0, 1))
        assert labeling.inverse() == (1, 2, 0)
        assert labeling[0] == 2
        assert Labeling.identity(3).locations == (0, 1, 2)


class TestCanonicalForm:

    def test_invariant_under_relabeling(self, rng):
        for _ in range(15):
            n = int(rng.integers(2, 6))
            net = random_digraph(rng, n)
            perm = rng.permutation(n).tolist()
            assert canonical_form(net).representative == canonical_form(net.relabeled(perm)).representative

    def test_automorphisms_match_networkx(self, rng):
        for _ in range(15):
            net = random_digraph(rng, int(rng.integers(2, 6)), p=0.4)
            architecture = canonical_form(net)
            assert architecture.automorphisms == _automorphism_count(net)
            assert architecture.class_size == equivalence_class(net).size
            assert architecture.class_size == factorial(net.n) // architecture.automorphisms

    def test_triangle_and_path(self, triangle, path3):
        assert canonical_form(triangle).class_size == 1
        assert canonical_form(triangle).automorphisms == 6
        assert canonical_form(path3).class_size == 6

    def test_single_agent(self):
        architecture = canonical_form(DirectedNetwork.empty(1))
        assert architecture.automorphisms == 1
        assert architecture.representative == DirectedNetwork.empty(1)

    def test_enumeration_limit(self):
        with pytest.raises(EnumerationTooLarge):
            canonical_form(DirectedNetwork.empty(10))


class TestTrueLabelings:

    def test_labelings_rebuild_the_network(self, rng):
        for _ in range(10):
            net = random_digraph(rng, int(rng.integers(2, 6)))
            architecture = canonical_form(net)
            labelings = true_labelings(net, architecture.representative)
            assert len(labelings) == architecture.automorphisms
            for labeling in labelings:
                assert labeled_graph(architecture.representative, labeling) == net

    def test_is_automorphism(self, triangle, path3):
        assert is_automorphism(triangle, [1, 2, 0])
        assert not is_automorphism(path3, [2, 1, 0])
        assert is_automorphism(path3, [0, 1, 2])


class TestInformationCells:

    @pytest.fixture
    def labeled(self):
        return {name: path_labeling(*positions) for name, positions in PATH_LABELINGS.items()}

    def test_path_equivalence_class(self, labeled):
        klass = equivalence_class(labeled["g1"])
        assert klass.size == 6
        assert all(graph in klass for graph in labeled.values())

    @pytest.mark.parametrize("agent,expected", [(0, {"g1", "g5"}), (1, {"g1", "g4"}), (2, {"g1", "g2"})])
    def test_location_only_cells(self, labeled, agent, expected):
        cell = information_cell(labeled["g1"], agent, KnowledgeLevel.LOCATION)
        assert {name for name, graph in labeled.items() if graph in cell} == expected
        assert len(cell) == 2

    def test_pooling_two_agents_reveals_the_network(self, labeled):
        truth = labeled["g1"]
        cells = [information_cell(truth, agent, KnowledgeLevel.LOCATION) for agent in range(3)]
        for i in range(3):
            for j in range(i + 1, 3):
                assert cells[i].members & cells[j].members == {truth.encoding()}

    def test_knowing_neighbors_gives_singleton(self, labeled):
        cell = information_cell(labeled["g1"], 0, KnowledgeLevel.NEIGHBORS)
        assert labeled["g1"] in cell
        assert len(cell) == 1

    def test_cells_contain_the_truth(self, rng):
        net = random_digraph(rng, 5)
        for agent in range(5):
            for level in KnowledgeLevel:
                assert net in information_cell(net, agent, level)

    def test_neighbor_cell_is_a_subset(self, rng):
        net = random_digraph(rng, 5)
        for agent in range(5):
            coarse = information_cell(net, agent, KnowledgeLevel.LOCATION)
            fine = information_cell(net, agent, KnowledgeLevel.NEIGHBORS)
            assert fine.members <= coarse.members
            assert len(fine) >= 1
