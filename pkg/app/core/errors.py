class ContractError(ValueError):
    """도메인 오류의 공통 부모"""


class SpectralConditionViolated(ContractError):
    """1 > αλ 조건 위반"""

    def __init__(self, spectral_radius: float, alpha: float):
        self.spectral_radius = spectral_radius
        self.alpha = alpha
        super().__init__(
            f"Spectral condition violated: alpha * lambda = {alpha * spectral_radius:.6g} >= 1 "
            f"(alpha={alpha:.6g}, lambda={spectral_radius:.6g})"
        )


class SingularSystem(ContractError):
    """선형 시스템 풀이 실패 또는 잔차 초과"""


class ReducedSystemNotConcave(ContractError):
    """제약된 문제의 축약 헤시안이 음의 정부호가 아님"""

    def __init__(self, min_eigenvalue: float):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"Reduced system is not concave: smallest eigenvalue of the reduced matrix is {min_eigenvalue:.6g}"
        )


class DimensionMismatch(ContractError):
    """계약 벡터 길이와 네트워크 크기 불일치"""

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Dimension mismatch: expected length {expected}, got {actual}")


class NotUndirectedError(ContractError):
    """무방향 네트워크가 필요한 연산에 방향 네트워크가 전달됨"""


class EnumerationTooLarge(ContractError):
    """팩토리얼 열거 한도 초과"""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"Enumeration over {n}! relabelings exceeds the limit of n <= {limit}")


class InvalidDeviation(ContractError):
    """잘못된 연합 또는 순열"""


class CatalogEntryNotFound(ContractError):
    """알 수 없는 예제 이름"""

    def __init__(self, name: str, available: list[str]):
        super().__init__(
            f"Example '{name}' not found. Available examples: {', '.join(available)}"
        )


class MissingMarginalCost(ContractError):
    """가격 관점 계산에 한계비용 c가 없음"""
