import json
import math
from typing import Any, List, Optional

from pydantic import BaseModel

from app.config.setting import settings


# ============================================================
# 유틸리티 함수
# ============================================================

def round_significant(value: Any, digits: Optional[int] = None) -> Any:
    """중첩된 payload 의 실수를 유효숫자 digits 자리로 반올림"""
    digits = digits or settings.OUTPUT_SIGNIFICANT_DIGITS
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return value
        rounded = float(f"{value:.{digits}g}")
        return 0.0 if rounded == 0.0 else rounded
    if isinstance(value, dict):
        return {k: round_significant(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_significant(v, digits) for v in value]
    return value


def to_json(model: BaseModel, digits: Optional[int] = None) -> str:
    """리포트를 결정적인 JSON 한 줄로 직렬화"""
    payload = round_significant(model.model_dump(mode="json"), digits)
    return json.dumps(payload, ensure_ascii=False)


def _format_separator(title: str, char: str = "=", width: int = 72) -> str:
    return f"{char * width}\n  {title}\n{char * width}"


def _format_sub_separator(title: str, char: str = "-", width: int = 60) -> str:
    return f"  {char * width}\n  {title}\n  {char * width}"


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


# ============================================================
# 사람이 읽는 출력
# ============================================================

def _format_deviations(violations: List[dict], limit: int = 20) -> List[str]:
    lines = []
    for info in violations[:limit]:
        lines.append(
            f"    coalition={_fmt(info['coalition'])}  rho={_fmt(info['permutation'])}"
            f"  gains={_fmt(info['gains'])}  total={_fmt(info['total'])}"
        )
    if len(violations) > limit:
        lines.append(f"    ... (총 {len(violations)}건)")
    return lines


def _format_mapping(payload: dict, indent: str = "    ") -> List[str]:
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_format_mapping(value, indent + "  "))
        elif key in ("violations", "profitable") and isinstance(value, list):
            lines.append(f"{indent}{key}: {len(value)}")
            lines.extend(_format_deviations(value))
        elif key == "findings" and isinstance(value, list):
            lines.append(f"{indent}{key}: {len(value)}")
            for finding in value:
                lines.append(
                    f"{indent}  instance={finding['instance']} n={finding['n']}"
                    f" factor={_fmt(finding['alpha_factor'])} mode={finding['mode']}"
                    f" adjacency={finding['adjacency']}"
                )
                lines.extend(_format_deviations(finding["violations"], limit=3))
        elif key == "checks" and isinstance(value, list):
            for check in value:
                mark = "ok  " if check["passed"] else "FAIL"
                lines.append(f"{indent}[{mark}] {check['name']}  ({check['anchor']})")
        else:
            lines.append(f"{indent}{key:<20}: {_fmt(value)}")
    return lines


def format_pretty(model: BaseModel, title: str) -> str:
    """리포트를 표 형태의 텍스트로 변환"""
    payload = round_significant(model.model_dump(mode="json"))
    lines = [_format_separator(title)]
    nested = {k: v for k, v in payload.items() if isinstance(v, dict) and k not in ("examined",)}
    flat = {k: v for k, v in payload.items() if k not in nested}
    lines.extend(_format_mapping(flat))
    for key, value in nested.items():
        lines.append(_format_sub_separator(key))
        lines.extend(_format_mapping(value))
    return "\n".join(lines)


def render(model: BaseModel, title: str, pretty: bool = False) -> str:
    return format_pretty(model, title) if pretty else to_json(model)
