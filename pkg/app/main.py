import sys
from typing import Optional, Sequence, TextIO

from loguru import logger
from pydantic import ValidationError

from app.api.cli import execute, parse_args
from app.config.setting import settings
from app.core.errors import ContractError


EXIT_INVALID_INPUT = 2


def configure_logging(level: Optional[str] = None) -> None:
    """loguru 기본 싱크를 stderr 한 개로 교체합니다."""
    logger.remove()
    logger.add(
        sys.stderr,
        level=(level or settings.LOG_LEVEL).upper(),
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {message}",
    )


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    """CLI 진입점. 종료 코드: 0 통과, 1 위반 발견, 2 잘못된 입력"""
    out = out or sys.stdout
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID_INPUT if e.code else 0

    configure_logging(args.log_level)
    try:
        return execute(args, out)
    except (ContractError, ValidationError, ValueError, OSError) as e:
        logger.error(f"[CLI] {type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
