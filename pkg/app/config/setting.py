from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field


class Settings(BaseSettings):
    """애플리케이션 설정"""

    # 검증 엔진
    VERIFY_WORKERS: int = Field(1, ge=1, description="연합 열거 병렬 워커 수")
    GAIN_TOLERANCE: float = Field(1e-9, gt=0, description="이득의 엄격성 허용오차 ε")
    DEFAULT_MAX_SIZE: int = Field(6, ge=2, description="연합 크기 상한 기본값 (n으로 잘림)")

    # 수치 해법
    RESIDUAL_TOLERANCE: float = Field(1e-9, gt=0, description="선형 시스템 잔차 무한노름 상한")
    SPECTRAL_TOLERANCE: float = Field(1e-10, gt=0, description="거듭제곱법 목표 정확도")
    POWER_ITERATION_MAX_STEPS: int = Field(200000, ge=1, description="거듭제곱법 최대 반복 횟수")
    POWER_ITERATION_SEED: int = Field(12345, description="거듭제곱법 대체 시작 벡터 시드")
    AUTO_ALPHA_FACTOR: float = Field(0.8, gt=0, lt=1, description="α 생략 시 α = factor/λ")

    # 익명성 메커니즘
    MAX_ENUMERATION_AGENTS: int = Field(9, ge=1, description="팩토리얼 열거 허용 최대 에이전트 수")

    # 출력
    OUTPUT_SIGNIFICANT_DIGITS: int = Field(12, ge=1, le=17, description="JSON 실수 유효숫자")
    LOG_LEVEL: str = Field("WARNING", description="loguru stderr 싱크 레벨")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True
    )


settings = Settings()
