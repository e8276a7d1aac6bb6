from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from app.dto.report_dto import VerificationMode


class Scenario(BaseModel):
    """한 번의 CLI 실행 입력"""
    graph_path: Optional[str] = Field(None, description="그래프 JSON 경로")
    example: Optional[str] = Field(None, description="카탈로그 예제 이름")
    a: float = Field(1.0, gt=0, description="독립 한계효용")
    alpha: Optional[float] = Field(None, ge=0, description="외부효과 강도")
    alpha_factor: Optional[float] = Field(None, gt=0, lt=1, description="α = factor / λ")
    c: Optional[float] = Field(None, ge=0, description="한계비용")

    mode: VerificationMode = Field(VerificationMode.GROUP_TRANSFERS, description="검증 모드")
    max_size: Optional[int] = Field(None, ge=1, description="연합 크기 상한")
    adjacency_required: bool = Field(True, description="인접 연합만 검사")
    known: List[int] = Field(default_factory=list, description="신원이 알려진 에이전트 (1부터)")
    classes: Optional[List[List[int]]] = Field(None, description="등식 제약 클래스 (1부터)")

    @model_validator(mode="after")
    def _check_sources(self) -> "Scenario":
        if (self.graph_path is None) == (self.example is None):
            raise ValueError("Exactly one graph source is required: --graph or --example")
        if self.alpha is not None and self.alpha_factor is not None:
            raise ValueError("Give either --alpha or --alpha-factor, not both")
        return self
