from enum import Enum
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class VerificationMode(str, Enum):
    """검증 모드"""
    IC = "ic"
    GROUP = "group"
    GROUP_TRANSFERS = "group-transfers"

    @classmethod
    def values(cls) -> List[str]:
        return [mode.value for mode in cls]


class DeviationInfo(BaseModel):
    """위반 편차 (에이전트 번호는 1부터)"""
    coalition: List[int] = Field(..., description="연합 구성원")
    permutation: List[int] = Field(..., description="coalition[k] 가 보고한 위치")
    gains: List[float] = Field(..., description="구성원별 효용 변화")
    total: float = Field(..., description="효용 변화의 합")


class ExaminedCounts(BaseModel):
    """열거 규모"""
    coalitions: int = Field(0, ge=0, description="검사한 연합 수")
    permutations: int = Field(0, ge=0, description="검사한 비항등 순열 수")


class VerificationReport(BaseModel):
    """검증 결과 리포트"""
    verdict: Literal["pass", "fail"] = Field(..., description="판정")
    mode: VerificationMode = Field(..., description="검증 모드")
    adjacency: bool = Field(..., description="인접 연합만 검사했는지 여부")
    max_size: int = Field(..., ge=0, description="연합 크기 상한")
    alpha: float = Field(..., description="외부효과 강도")
    violations: List[DeviationInfo] = Field(default_factory=list, description="위반 목록")
    examined: ExaminedCounts = Field(default_factory=ExaminedCounts, description="검사 규모")

    @model_validator(mode="after")
    def _check_verdict(self) -> "VerificationReport":
        if (self.verdict == "fail") != bool(self.violations):
            raise ValueError("verdict must be 'fail' exactly when violations are present")
        return self

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


class SearchFinding(BaseModel):
    """반례 탐색에서 발견된 최소 크기 위반"""
    instance: int = Field(..., description="인스턴스 번호 (0부터)")
    n: int = Field(..., description="에이전트 수")
    edges: List[List[int]] = Field(..., description="1부터 시작하는 간선 목록")
    alpha_factor: float = Field(..., description="α · λ")
    alpha: float = Field(..., description="외부효과 강도")
    mode: VerificationMode = Field(..., description="검증 모드")
    adjacency: bool = Field(..., description="인접 연합만 검사했는지 여부")
    violations: List[DeviationInfo] = Field(default_factory=list, description="최소 크기 위반 목록")


class SearchReport(BaseModel):
    """반례 탐색 리포트"""
    family: Optional[str] = Field(None, description="생성기 계열 이름")
    seed: Optional[int] = Field(None, description="난수 시드")
    instances: int = Field(0, description="생성한 인스턴스 수")
    runs: int = Field(0, description="수행한 검증 횟수")
    findings: List[SearchFinding] = Field(default_factory=list, description="발견된 위반")


class MenuAuditReport(BaseModel):
    """메뉴 게임 충돌 규칙 감사"""
    verdict: Literal["pass", "fail"]
    truthful_payoffs: List[float] = Field(..., description="진실 보고 시 보수")
    misreports: int = Field(0, description="검사한 단독 허위 보고 수")
    profitable: List[DeviationInfo] = Field(default_factory=list, description="이득이 나는 허위 보고")


class NeighborAuditReport(BaseModel):
    """이웃 신원 보고 메커니즘 감사"""
    verdict: Literal["pass", "fail"]
    report_mode: str = Field(..., description="이웃 보고 방식")
    profiles: int = Field(0, description="검사한 보고 프로필 수")
    consistent: int = Field(0, description="일관된 프로필 수")
    max_consistent_gain: Optional[float] = Field(None, description="일관된 프로필 중 최대 연합 총 이득")
    unflagged_changes: int = Field(0, description="배분을 바꾸지만 불일치로 잡히지 않은 프로필 수")
    profitable: List[DeviationInfo] = Field(default_factory=list, description="이득이 나는 일관된 프로필")


class CatalogCheckResult(BaseModel):
    """예제 카탈로그 단언 하나의 결과"""
    name: str = Field(..., description="단언 이름")
    anchor: str = Field(..., description="검사하는 주장")
    passed: bool = Field(..., description="통과 여부")
    detail: dict = Field(default_factory=dict, description="계산된 값")


class CatalogReport(BaseModel):
    """예제 카탈로그 실행 결과"""
    passed: bool
    checks: List[CatalogCheckResult] = Field(default_factory=list)
