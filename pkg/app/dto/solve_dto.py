from typing import List, Optional

from pydantic import BaseModel, Field

from app.dto.report_dto import MenuAuditReport, NeighborAuditReport, VerificationReport


class SolveResponse(BaseModel):
    """최선 계약 응답 DTO"""
    n: int = Field(..., description="에이전트 수")
    a: float = Field(..., description="독립 한계효용")
    alpha: float = Field(..., description="외부효과 강도")
    spectral_radius: float = Field(..., description="G + G^T 의 최대 고유값")
    x: List[float] = Field(..., description="최선 계약")
    welfare: float = Field(..., description="후생")
    taxes: List[float] = Field(..., description="최선 계약을 균형으로 만드는 세금/보조금")
    prices: Optional[List[float]] = Field(None, description="잉여 흡수 가격 (c 지정 시)")
    profit: Optional[float] = Field(None, description="독점 이윤 (c 지정 시)")


class ClassifyResponse(BaseModel):
    """구조 분류 응답 DTO"""
    n: int = Field(..., description="에이전트 수")
    labels: List[str] = Field(default_factory=list, description="해당 계열 라벨")
    tiers: Optional[List[List[int]]] = Field(None, description="계층 분할 (1부터)")
    branching: Optional[List[int]] = Field(None, description="계층별 선행자 수")
    root: Optional[int] = Field(None, description="단일 루트")


class ConstrainedResponse(BaseModel):
    """등식 제약 최적화 응답 DTO"""
    alpha: float = Field(..., description="외부효과 강도")
    classes: List[List[int]] = Field(..., description="등식 제약 클래스 (1부터)")
    x: List[float] = Field(..., description="제약 최적 계약")
    welfare: float = Field(..., description="제약 최적 후생")
    first_best_welfare: float = Field(..., description="최선 후생")
    welfare_loss: float = Field(..., description="후생 손실")
    transfers: VerificationReport = Field(..., description="제약 최적 계약의 이전 지불 검증")


class MechanismResponse(BaseModel):
    """메커니즘 감사 응답 DTO"""
    alpha: float = Field(..., description="외부효과 강도")
    class_size: int = Field(..., description="구조 동치류 크기")
    automorphisms: int = Field(..., description="자기동형 사상 수")
    menu: Optional[MenuAuditReport] = Field(None, description="메뉴 게임 감사")
    neighbors: Optional[NeighborAuditReport] = Field(None, description="이웃 보고 메커니즘 감사")
