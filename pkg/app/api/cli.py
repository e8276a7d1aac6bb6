import argparse
import json
from typing import List, Optional, Sequence

from app.core.mechanism.menu_game import NeighborReportMode
from app.core.network.families import FamilyName
from app.dto.report_dto import VerificationMode
from app.dto.scenario_dto import Scenario
from app.service.catalog_service import CatalogService
from app.service.mechanism_service import AuditKind, MechanismService
from app.service.search_service import SearchService
from app.service.solve_service import SolveService
from app.service.verify_service import VerifyService
from app.util.report_printer import render


EXIT_OK = 0
EXIT_VIOLATIONS = 1


# ============================================================
# 인자 파서
# ============================================================

def _float_list(raw: str) -> List[float]:
    try:
        return [float(part) for part in raw.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Expected comma-separated numbers, got '{raw}'") from e


def _int_list(raw: str) -> List[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got '{raw}'") from e


def _mode_list(raw: str) -> List[VerificationMode]:
    try:
        return [VerificationMode(part.strip()) for part in raw.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(
            f"Unknown mode in '{raw}'. Available modes: {', '.join(VerificationMode.values())}"
        ) from e


def _add_scenario_options(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", help="그래프 JSON 경로")
    source.add_argument("--example", help="카탈로그 예제 이름")
    parser.add_argument("--a", type=float, default=1.0, help="독립 한계효용 (기본 1)")
    strength = parser.add_mutually_exclusive_group()
    strength.add_argument("--alpha", type=float, help="외부효과 강도")
    strength.add_argument("--alpha-factor", type=float, help="α = factor / λ (기본 0.8)")
    parser.add_argument("--c", type=float, help="한계비용 (가격 계산 시)")
    parser.add_argument("--pretty", action="store_true", help="사람이 읽는 표 형태로 출력")


def _add_verification_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-size", type=int, help="연합 크기 상한")
    parser.add_argument(
        "--any-coalition", action="store_true", help="인접하지 않은 연합도 검사"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netcontracts",
        description="네트워크 외부효과 계약의 최선 해와 유인 양립성 검증",
    )
    parser.add_argument("--log-level", help="로그 레벨 (기본: 설정값)")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="최선 계약, 세금, 가격")
    _add_scenario_options(solve)

    classify = commands.add_parser("classify", help="구조 계열 분류")
    _add_scenario_options(classify)

    verify = commands.add_parser("verify", help="계약의 유인 양립성 검증")
    _add_scenario_options(verify)
    _add_verification_options(verify)
    verify.add_argument("--mode", choices=VerificationMode.values(), default=VerificationMode.GROUP_TRANSFERS.value)
    verify.add_argument("--contract", help="계약 JSON 경로 (없으면 최선 계약)")
    verify.add_argument("--known", type=_int_list, default=[], help="신원이 알려진 에이전트 (예: 1,3)")
    verify.add_argument("--workers", type=int, help="병렬 워커 수")

    constrained = commands.add_parser("constrained", help="등식 제약 최적 계약")
    _add_scenario_options(constrained)
    _add_verification_options(constrained)
    classes = constrained.add_mutually_exclusive_group(required=True)
    classes.add_argument("--classes", help='클래스 JSON (예: "[[1,3],[2]]")')
    classes.add_argument("--auto-family", action="store_true", help="구조 계열에 맞는 클래스 사용")

    search = commands.add_parser("search", help="계열 생성기 기반 반례 탐색")
    search.add_argument("--family", choices=FamilyName.values(), required=True)
    search.add_argument("--count", type=int, default=20)
    search.add_argument("--n-min", type=int, default=3)
    search.add_argument("--n-max", type=int, default=6)
    search.add_argument("--alpha-factors", type=_float_list, default=[0.3, 0.6, 0.9])
    search.add_argument("--modes", type=_mode_list, default=[VerificationMode.GROUP, VerificationMode.GROUP_TRANSFERS])
    search.add_argument("--max-size", type=int)
    search.add_argument("--seed", type=int, default=0)
    search.add_argument("--a", type=float, default=1.0)
    search.add_argument("--pretty", action="store_true")

    mechanism = commands.add_parser("mechanism", help="익명 구현 메커니즘 감사")
    _add_scenario_options(mechanism)
    mechanism.add_argument("--audit", choices=AuditKind.values(), default=AuditKind.ALL.value)
    mechanism.add_argument(
        "--report-mode", choices=[m.value for m in NeighborReportMode], default=NeighborReportMode.TRUTHFUL.value
    )

    examples = commands.add_parser("examples", help="예제 카탈로그 단언 실행")
    examples.add_argument("--list", action="store_true", help="예제 이름만 출력")
    examples.add_argument("--pretty", action="store_true")

    return parser


def _scenario(args: argparse.Namespace, **extra) -> Scenario:
    return Scenario(
        graph_path=args.graph,
        example=args.example,
        a=args.a,
        alpha=args.alpha,
        alpha_factor=args.alpha_factor,
        c=args.c,
        **extra,
    )


# ============================================================
# 명령 실행
# ============================================================

def execute(args: argparse.Namespace, out) -> int:
    """명령을 실행하고 종료 코드를 반환합니다 (0 통과, 1 위반)."""
    command = args.command

    if command == "solve":
        print(render(SolveService().solve(_scenario(args)), "first-best contract", args.pretty), file=out)
        return EXIT_OK

    if command == "classify":
        print(render(SolveService().classify(_scenario(args)), "classification", args.pretty), file=out)
        return EXIT_OK

    if command == "verify":
        scenario = _scenario(
            args,
            mode=args.mode,
            max_size=args.max_size,
            adjacency_required=not args.any_coalition,
            known=args.known,
        )
        report = VerifyService().verify(scenario, args.contract, args.workers)
        print(render(report, f"verification ({report.mode.value})", args.pretty), file=out)
        return EXIT_OK if report.passed else EXIT_VIOLATIONS

    if command == "constrained":
        scenario = _scenario(
            args,
            max_size=args.max_size,
            adjacency_required=not args.any_coalition,
            classes=json.loads(args.classes) if args.classes else None,
        )
        response = SolveService().constrained(scenario, auto_family=args.auto_family)
        print(render(response, "constrained optimum", args.pretty), file=out)
        return EXIT_OK if response.transfers.passed else EXIT_VIOLATIONS

    if command == "search":
        report = SearchService().search(
            family=args.family,
            count=args.count,
            n_min=args.n_min,
            n_max=args.n_max,
            alpha_factors=args.alpha_factors,
            modes=args.modes,
            max_size=args.max_size,
            seed=args.seed,
            a=args.a,
        )
        print(render(report, f"counterexample search ({args.family})", args.pretty), file=out)
        return EXIT_VIOLATIONS if report.findings else EXIT_OK

    if command == "mechanism":
        service = MechanismService()
        response = service.audit(_scenario(args), args.audit, args.report_mode)
        print(render(response, "mechanism audit", args.pretty), file=out)
        return EXIT_OK if service.passed(response) else EXIT_VIOLATIONS

    if command == "examples":
        service = CatalogService()
        if args.list:
            for name in service.names():
                print(name, file=out)
            return EXIT_OK
        report = service.run()
        print(render(report, "example catalog", args.pretty), file=out)
        return EXIT_OK if report.passed else EXIT_VIOLATIONS

    raise ValueError(f"Unknown command '{command}'")


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
