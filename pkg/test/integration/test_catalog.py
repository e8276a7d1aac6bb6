import pytest

from app.core.catalog import CHECKS
from app.core.errors import CatalogEntryNotFound


pytestmark = pytest.mark.integration


class TestExampleCatalog:

    def test_names(self, catalog):
        assert catalog.names() == [
            "anonymity-path",
            "three-roots-follower",
            "nested-three-tiers",
            "oriented-tree-7",
            "line-5",
            "intra-tier-5",
            "two-stars",
            "known-root-7",
        ]

    def test_unknown_entry(self, catalog):
        with pytest.raises(CatalogEntryNotFound, match="Available examples"):
            catalog.get("no-such-example")

    @pytest.mark.parametrize("check", CHECKS, ids=[check.name for check in CHECKS])
    def test_check_passes(self, catalog, check):
        passed, detail = check.run(catalog)
        assert passed, detail

    def test_run_checks(self, catalog):
        report = catalog.run_checks()
        assert report.passed
        assert len(report.checks) == len(CHECKS)
