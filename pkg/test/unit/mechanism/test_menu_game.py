import numpy as np
import pytest

from app.core.catalog import PATH_LABELINGS, path_labeling
from app.core.mechanism.anonymity import Labeling, canonical_form, true_labelings
from app.core.mechanism.menu_game import (
    NeighborAnnouncement,
    NeighborReportMode,
    menu_game,
    menu_game_audit,
    neighbor_announcements_consistent,
    neighbor_mechanism_audit,
    verify_individual_ic,
    verify_with_known_identities,
)
from app.core.network.network import DirectedNetwork, ModelParams
from app.core.solver.contract_solver import auto_alpha, first_best, utilities
from app.dto.report_dto import VerificationMode


pytestmark = pytest.mark.unit


@pytest.fixture
def path_truth():
    return path_labeling(*PATH_LABELINGS["g1"])


class TestMenuGame:

    def test_bijective_reports_receive_menu_items(self, path3):
        params = ModelParams(alpha=0.1)
        menu = [1.0, 2.0, 3.0]
        payoffs = menu_game(menu, [2, 0, 1], path3, params)
        assert payoffs == pytest.approx(utilities([3.0, 1.0, 2.0], path3, params))

    def test_collision_punishes_everyone(self, path3):
        assert menu_game([1.0, 2.0, 3.0], [0, 0, 2], path3, ModelParams(alpha=0.1)).tolist() == [0.0, 0.0, 0.0]

    def test_invalid_reports(self, path3):
        params = ModelParams(alpha=0.1)
        with pytest.raises(ValueError, match="Expected 3"):
            menu_game([1.0, 2.0, 3.0], [0, 1], path3, params)
        with pytest.raises(ValueError, match="out of range"):
            menu_game([1.0, 2.0, 3.0], [0, 1, 3], path3, params)


class TestIndividualIC:

    def test_positive_payoffs_pass(self, path_truth):
        params = ModelParams(alpha=0.1)
        report = verify_individual_ic(first_best(path_truth, params), path_truth, params)
        assert report.passed
        assert report.mode == VerificationMode.IC
        assert report.examined.permutations == 6

    def test_negative_payoff_agent_misreports(self, path_truth):
        # 오른쪽 에이전트(3)는 자신이 영향을 주는 가운데 에이전트 때문에 보수가 음수
        params = ModelParams(alpha=auto_alpha(path_truth))
        report = verify_individual_ic(first_best(path_truth, params), path_truth, params)
        assert report.verdict == "fail"
        assert {tuple(v.coalition) for v in report.violations} == {(3,)}
        assert len(report.violations) == 2

    def test_roots_of_follower_star(self, catalog):
        net = catalog.network("three-roots-follower")
        params = ModelParams(alpha=auto_alpha(net))
        report = verify_individual_ic(first_best(net, params), net, params)
        assert {v.coalition[0] for v in report.violations} == {1, 2, 3}

    def test_excluded_agents(self, path_truth):
        params = ModelParams(alpha=auto_alpha(path_truth))
        report = verify_individual_ic(first_best(path_truth, params), path_truth, params, excluded={2})
        assert report.passed
        assert report.examined.coalitions == 2


class TestMenuAudit:

    def test_audit_uses_representative_menu(self, path_truth):
        params = ModelParams(alpha=0.1)
        representative = canonical_form(path_truth).representative
        labeling = true_labelings(path_truth, representative)[0]
        report = menu_game_audit(first_best(representative, params), path_truth, params, labeling)
        assert report.verdict == "pass"
        assert report.misreports == 6
        assert report.truthful_payoffs == pytest.approx(
            utilities(first_best(path_truth, params), path_truth, params).tolist()
        )

    def test_identity_labeling_default(self, path3):
        params = ModelParams(alpha=0.1)
        report = menu_game_audit(first_best(path3, params), path3, params)
        assert min(report.truthful_payoffs) > 0
        assert report.profitable == []


class TestNeighborMechanism:

    def test_truthful_profile_is_consistent(self, path_truth):
        representative = canonical_form(path_truth).representative
        labeling = true_labelings(path_truth, representative)[0]
        profile = [
            NeighborAnnouncement(location=labeling[i], neighbors=frozenset(path_truth.in_neighbors(i)))
            for i in range(3)
        ]
        assert neighbor_announcements_consistent(profile, representative)

    def test_swap_with_true_neighbors_is_inconsistent(self, path_truth):
        representative = canonical_form(path_truth).representative
        labeling = true_labelings(path_truth, representative)[0]
        announced = list(labeling.locations)
        announced[0], announced[1] = announced[1], announced[0]
        profile = [
            NeighborAnnouncement(location=announced[i], neighbors=frozenset(path_truth.in_neighbors(i)))
            for i in range(3)
        ]
        assert not neighbor_announcements_consistent(profile, representative)

    def test_duplicate_locations_are_inconsistent(self, path_truth):
        profile = [NeighborAnnouncement(location=0, neighbors=frozenset()) for _ in range(3)]
        assert not neighbor_announcements_consistent(profile, path_truth)

    def test_path_has_no_consistent_misreport(self, path_truth):
        params = ModelParams(alpha=auto_alpha(path_truth))
        report = neighbor_mechanism_audit(path_truth, params)
        assert report.verdict == "pass"
        assert report.profiles == 3 * 1 + 5
        assert report.consistent == 0
        assert report.max_consistent_gain is None

    def test_symmetric_graph_allows_harmless_relabelings(self, triangle):
        params = ModelParams(alpha=auto_alpha(triangle))
        report = neighbor_mechanism_audit(triangle, params)
        assert report.verdict == "pass"
        assert report.consistent == report.profiles
        assert report.max_consistent_gain == pytest.approx(0.0, abs=1e-9)
        assert report.unflagged_changes == 0

    def test_role_consistent_reports(self, path_truth):
        params = ModelParams(alpha=auto_alpha(path_truth))
        report = neighbor_mechanism_audit(path_truth, params, NeighborReportMode.ROLE_CONSISTENT)
        assert report.verdict == "pass"
        assert report.consistent >= 5
        assert report.max_consistent_gain <= 1e-9


class TestKnownIdentities:

    def test_known_root(self, catalog):
        net = catalog.network("known-root-7")
        params = ModelParams(alpha=auto_alpha(net))
        x = first_best(net, params)
        report = verify_with_known_identities(x, net, params, {0}, VerificationMode.GROUP_TRANSFERS)
        assert report.passed
        assert report.examined.coalitions > 0

    def test_ic_mode(self, path_truth):
        params = ModelParams(alpha=auto_alpha(path_truth))
        x = first_best(path_truth, params)
        report = verify_with_known_identities(x, path_truth, params, {2}, VerificationMode.IC)
        assert report.passed

    def test_out_of_range(self, path3):
        with pytest.raises(ValueError, match="out of range"):
            verify_with_known_identities(
                np.ones(3), path3, ModelParams(alpha=0.1), {5}, VerificationMode.GROUP
            )
