from typing import List

from app.core.catalog import get_catalog
from app.dto.report_dto import CatalogReport


class CatalogService:
    """예제 카탈로그 실행 서비스"""

    def __init__(self):
        self.catalog = get_catalog()

    def names(self) -> List[str]:
        return self.catalog.names()

    def run(self) -> CatalogReport:
        return self.catalog.run_checks()
