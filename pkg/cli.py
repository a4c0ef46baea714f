# cli.py
"""
커맨드라인 진입점 (stdout: JSON/CSV 리포트, stderr: 로그)

    python cli.py psq search --x 5
    python cli.py ppw count --g 2 --x 13 --from 0 --len 30030 --bins 8 --format csv
    python cli.py charsum rf --x 3 --f 3 --from 0 --len 24

종료 코드: 0 성공, 1 항등식 실패, 2 사용법/전제조건 오류, 3 예산/탐색 한도 초과
"""
import sys
import math
import time
import logging
import argparse
from dataclasses import dataclass, asdict
from typing import Callable, Dict, List, Optional, Tuple

from utils import config
from utils.arith_core import prime_basis, sieve_primes
from utils.charsum import (
    BoundParams, RVariant, char_sum, choose_r, gr_bound, gr_preconditions, main_term,
    pv_bounds, quadsum_decomposition, r_f, rf_regime, s_an,
)
from utils.errors import BudgetExceeded, IdentityViolation, PreconditionError, SearchExhausted
from utils.pseudopower import (
    PowerVariant, count_pseudopowers, exact_count_period, p_an_decomposition,
    p_an_identity, power_profile, pseudopower_growth, pseudopower_pair, verify_period_count as ppw_period_check,
    weighted_sum_sg,
)
from utils.pseudosquare import (
    count_pseudosquares, least_pseudosquare, pigeonhole_pseudosquare, pseudosquare_growth,
    verify_period_count as psq_period_check,
)
from utils.reports import IdentityCheck, Report
from utils.windows import Budget, Window, random_windows

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IDENTITY = 1
EXIT_USAGE = 2
EXIT_EXHAUSTED = 3

COMMANDS = {
    "psq": ("search", "pigeonhole", "count", "verify-identity", "table"),
    "ppw": ("profile", "search", "count", "verify-identity", "weighted-sum", "table"),
    "charsum": ("rf", "sum", "bounds", "choose-r"),
}

# 명령별 필수 입력
REQUIRED = {
    ("psq", "search"): ("x",),
    ("psq", "pigeonhole"): ("x",),
    ("psq", "count"): ("x", "window"),
    ("psq", "verify-identity"): ("x",),
    ("psq", "table"): ("x",),
    ("ppw", "profile"): ("g", "x"),
    ("ppw", "search"): ("g", "x"),
    ("ppw", "count"): ("g", "x", "window"),
    ("ppw", "verify-identity"): ("g", "x"),
    ("ppw", "weighted-sum"): ("g", "x"),
    ("ppw", "table"): ("g", "x"),
    ("charsum", "rf"): ("x", "f", "window"),
    ("charsum", "sum"): ("window",),
    ("charsum", "bounds"): ("x", "f", "window"),
    ("charsum", "choose-r"): ("x",),
}

VARIANTS = {
    "psq": {"coprime"},
    "ppw": {v.value for v in PowerVariant},
    "charsum": {v.value for v in RVariant},
}

# verify-identity 의 기본 외곽 구간 (0, 10^6]
DEFAULT_OUTER = Window(0, 10**6)


@dataclass(frozen=True)
class RunConfig:
    group: str
    command: str
    x: Optional[int] = None
    g: Optional[int] = None
    window: Optional[Window] = None
    bins: int = 1
    f: Optional[int] = None
    q: Optional[int] = None
    r: Optional[int] = None
    variant: Optional[str] = None
    format: str = "json"
    budget: Optional[int] = None
    seed: int = 0
    scan_limit: Optional[int] = None
    samples: int = 10
    workers: Optional[int] = None
    exploratory: bool = False

    @property
    def name(self) -> str:
        return f"{self.group} {self.command}"

    def validate(self) -> "RunConfig":
        """명령별 필수 입력과 범위를 dispatch 전에 확인"""
        if self.command not in COMMANDS.get(self.group, ()):
            raise PreconditionError("known command", f"알 수 없는 명령: {self.name}")
        for key in REQUIRED[(self.group, self.command)]:
            if getattr(self, key) is None:
                flag = "--from/--len" if key == "window" else f"--{key}"
                raise PreconditionError(f"{flag} required", f"'{self.name}' 에는 {flag} 가 필요합니다")
        if self.group == "charsum" and self.command == "sum" and self.x is None and self.q is None:
            raise PreconditionError("--x or --q required", "'charsum sum' 에는 --x 또는 --q 가 필요합니다")
        if self.bins < 1:
            raise PreconditionError("bins >= 1")
        if self.samples < 0:
            raise PreconditionError("samples >= 0")
        if self.budget is not None and self.budget < 0:
            raise PreconditionError("budget >= 0")
        if self.variant is not None:
            allowed = VARIANTS[self.group]
            if self.variant not in allowed:
                raise PreconditionError("variant", f"'{self.name}' 에서 쓸 수 없는 --variant: {self.variant}")
        return self

    def inputs(self) -> dict:
        # workers 는 echo 하지 않음 - payload 는 스레드 수와 무관
        skipped = ("group", "command", "window", "workers")
        echoed = {k: v for k, v in asdict(self).items() if v is not None and k not in skipped}
        if self.window is not None:
            echoed["window"] = self.window.to_dict()
        return echoed


# =============================================================================
# 명령 구현 - (outputs, identity_checks, table) 반환
# =============================================================================

Outcome = Tuple[dict, List[IdentityCheck], Optional[object]]


def _sample_windows(c: RunConfig) -> List[Window]:
    outer = c.window or DEFAULT_OUTER
    return random_windows(outer, c.samples, c.seed)


def _psq_search(c: RunConfig, budget: Budget) -> Outcome:
    record = least_pseudosquare(c.x, workers=c.workers, budget=budget)
    return record.to_dict(), [], None


def _psq_pigeonhole(c: RunConfig, budget: Budget) -> Outcome:
    result = pigeonhole_pseudosquare(
        c.x, scan_limit=c.scan_limit, coprime=c.variant == "coprime", budget=budget,
    )
    check = IdentityCheck(
        name="within_bound_consistent", lhs=result.factors[1], rhs=result.bound,
        passed=result.within_bound == (result.factors[1] <= result.bound),
    )
    return result.to_dict(), [check], None


def _psq_count(c: RunConfig, budget: Budget) -> Outcome:
    report = count_pseudosquares(c.x, c.window, bins=c.bins, budget=budget, workers=c.workers)
    return report.to_dict(), report.identity_checks, report.histogram_frame()


def _psq_verify(c: RunConfig, budget: Budget) -> Outcome:
    checks = [psq_period_check(c.x, budget)]
    for window in _sample_windows(c):
        decomposition = quadsum_decomposition(c.x, window, budget)
        checks.append(decomposition.check(f"_x{c.x}_{window}"))
        result = s_an(c.x, window, budget, workers=c.workers)
        checks.append(IdentityCheck.exact(
            f"squarecount_x{c.x}_{window}", result.sum.value,
            2 ** (prime_basis(c.x).pi_x - 1) * result.count_sbar,
        ))
        for f, value in decomposition.contributions.items():
            checks.append(IdentityCheck.at_most(f"pv_f{f}_{window}", abs(value), pv_bounds(c.x, f).rf_bound))
    outputs = {"x": c.x, "windows": c.samples, "checks": len(checks)}
    return outputs, checks, None


def _psq_table(c: RunConfig, budget: Budget) -> Outcome:
    xs = [p for p in sieve_primes(c.x) if p >= 3]
    frame = pseudosquare_growth(xs, budget=budget)
    return {"rows": frame.to_dict(orient="records")}, [], frame


def _ppw_profile(c: RunConfig, budget: Budget) -> Outcome:
    profile = power_profile(c.g, c.x)
    check = IdentityCheck.exact("I_times_L_equals_phi_M_g", profile.i_product * profile.l_product, profile.phi_m_g)
    return profile.to_dict(), [check], profile.to_frame()


def _ppw_search(c: RunConfig, budget: Budget) -> Outcome:
    variant = PowerVariant(c.variant or PowerVariant.Q_G)
    # 두 변형을 모두 구해 q_g(x) <= |g|·p_g(x) 를 함께 검사
    pair = pseudopower_pair(c.g, c.x, budget)
    outputs = {
        **pair._asdict(),
        "variant": variant.value,
        "g": c.g,
        "x": c.x,
        "trivial_bound": 2 * prime_basis(c.x).m_x + 1,
    }
    return outputs, [pair.check(c.g)], None


def _ppw_count(c: RunConfig, budget: Budget) -> Outcome:
    report = count_pseudopowers(c.g, c.x, c.window, bins=c.bins, budget=budget, workers=c.workers)
    return report.to_dict(), report.identity_checks, report.histogram_frame()


def _ppw_verify(c: RunConfig, budget: Budget) -> Outcome:
    pair = pseudopower_pair(c.g, c.x, budget)
    checks = [pair.check(c.g)]
    outputs: Dict[str, object] = {"g": c.g, "x": c.x, "q_g": pair.q_g, "p_g": pair.p_g}
    if c.x < abs(c.g):
        logger.info(f"x={c.x} < |g|={abs(c.g)}: 주기 공식과 P_(A,N) 검사는 건너뜀")
        return outputs, checks, None

    period = exact_count_period(c.g, c.x)
    outputs["count_pbar_period"] = period.count_pbar
    outputs["pseudopower_count_period"] = period.pseudopower_count
    checks.append(ppw_period_check(c.g, c.x, budget))

    full = Window(0, prime_basis(c.x).m_x)
    p_an_full = p_an_identity(c.g, c.x, full, budget)
    checks.append(p_an_full.check())
    for window in random_windows(full, c.samples, c.seed):
        checks.append(p_an_identity(c.g, c.x, window, budget).check())
    decomposition = p_an_decomposition(c.g, c.x, full, budget)
    checks.append(IdentityCheck.close(
        "conductor_expansion_total", decomposition.total.real, p_an_full.p_an.real, 1e-9 * max(p_an_full.terms, 1),
    ))
    return outputs, checks, None


def _ppw_weighted_sum(c: RunConfig, budget: Budget) -> Outcome:
    result = weighted_sum_sg(c.g, c.x, budget)
    return result.to_dict(), [result.check()], None


def _ppw_table(c: RunConfig, budget: Budget) -> Outcome:
    frame = pseudopower_growth(c.g, sieve_primes(c.x), budget)
    return {"rows": frame.to_dict(orient="records")}, [], frame


def _charsum_rf(c: RunConfig, budget: Budget) -> Outcome:
    record = r_f(c.x, c.f, c.window, budget)
    check = IdentityCheck.at_most(f"pv_f{c.f}", abs(record.value), pv_bounds(c.x, c.f).rf_bound)
    return record.to_dict(), [check], None


def _charsum_sum(c: RunConfig, budget: Budget) -> Outcome:
    if c.q is not None:
        record = char_sum(c.q, c.window, budget)
        bound = math.sqrt(c.q) * math.log(c.q)
        return record.to_dict(), [IdentityCheck.at_most(f"sqrt_q_log_q_q{c.q}", abs(record.value), bound)], None

    result = s_an(c.x, c.window, budget, workers=c.workers)
    main = main_term(c.x, c.window, budget)
    outputs = {
        **result.sum.to_dict(),
        "count_sbar": result.count_sbar,
        "main_term": main.count,
        "sieve_model": main.sieve_model,
    }
    check = IdentityCheck.exact(
        "squarecount", result.sum.value, 2 ** (prime_basis(c.x).pi_x - 1) * result.count_sbar,
    )
    return outputs, [check], None


def _charsum_bounds(c: RunConfig, budget: Budget) -> Outcome:
    n_len = c.window.n_len
    r = c.r if c.r is not None else choose_r(c.x, c.variant or RVariant.THEOREM1).r
    params = BoundParams(q=c.q or c.f, n_len=n_len, r=r)
    failures = gr_preconditions(params)
    outputs: Dict[str, object] = {
        "pv": pv_bounds(c.x, c.f)._asdict(),
        "r": r,
        "gr_failed_preconditions": failures,
        "gr": gr_bound(params)._asdict() if not failures else None,
    }
    if n_len >= 2:
        outputs["regime"] = rf_regime(c.x, c.f, n_len, r).to_dict()
    return outputs, [], None


def _charsum_choose_r(c: RunConfig, budget: Budget) -> Outcome:
    result = choose_r(c.x, c.variant or RVariant.THEOREM1)
    return result._asdict(), [], None


HANDLERS: Dict[Tuple[str, str], Callable[[RunConfig, Budget], Outcome]] = {
    ("psq", "search"): _psq_search,
    ("psq", "pigeonhole"): _psq_pigeonhole,
    ("psq", "count"): _psq_count,
    ("psq", "verify-identity"): _psq_verify,
    ("psq", "table"): _psq_table,
    ("ppw", "profile"): _ppw_profile,
    ("ppw", "search"): _ppw_search,
    ("ppw", "count"): _ppw_count,
    ("ppw", "verify-identity"): _ppw_verify,
    ("ppw", "weighted-sum"): _ppw_weighted_sum,
    ("ppw", "table"): _ppw_table,
    ("charsum", "rf"): _charsum_rf,
    ("charsum", "sum"): _charsum_sum,
    ("charsum", "bounds"): _charsum_bounds,
    ("charsum", "choose-r"): _charsum_choose_r,
}


def dispatch(run_config: RunConfig) -> Tuple[Report, int]:
    """검증된 RunConfig 를 실행해 (Report, 종료 코드) 반환 - 도메인 예외는 호출자에게 전달"""
    run_config = run_config.validate()
    budget = Budget(run_config.budget)
    started = time.perf_counter()
    outputs, checks, table = HANDLERS[(run_config.group, run_config.command)](run_config, budget)
    report = Report(
        command=run_config.name,
        inputs=run_config.inputs(),
        outputs=outputs,
        identity_checks=list(checks),
        timing_ms=(time.perf_counter() - started) * 1000,
        exploratory=run_config.exploratory,
        table=table,
    )
    if report.all_passed or run_config.exploratory:
        return report, EXIT_OK
    failed = [c.name for c in report.identity_checks if not c.passed]
    logger.error(f"❌ 항등식 실패: {', '.join(failed)}")
    return report, EXIT_IDENTITY


# =============================================================================
# 인자 파싱
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--x", type=int, help="기준값 x")
    common.add_argument("--g", type=int, help="pseudopower 밑 g (|g| >= 2)")
    common.add_argument("--from", dest="a", type=int, help="구간 시작 A (열린 끝)")
    common.add_argument("--len", dest="n_len", type=int, help="구간 길이 N")
    common.add_argument("--bins", type=int, default=1)
    common.add_argument("--f", type=int, help="M_2(x) 또는 M_g(x) 의 약수")
    common.add_argument("--q", type=int, help="홀수 무제곱 모듈러스")
    common.add_argument("--r", type=int, help="Graham–Ringrose 매개변수")
    common.add_argument("--variant", choices=["theorem1", "theorem3", "q_g", "p_g", "coprime"])
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--budget", type=int, help="기호/잉여 평가 횟수 상한")
    common.add_argument("--seed", type=int, default=0, help="임의 구간 선택 시드")
    common.add_argument("--scan-limit", dest="scan_limit", type=int)
    common.add_argument("--samples", type=int, default=10, help="verify-identity 임의 구간 개수")
    common.add_argument("--workers", type=int, help="구간 분할 스레드 수")
    common.add_argument("--exploratory", action="store_true", help="항등식 실패를 종료 코드에 반영하지 않음")
    common.add_argument("--log-level", dest="log_level", default=None)

    parser = argparse.ArgumentParser(prog="cli.py", description="x-pseudosquare / x-pseudopower 계산과 지표합 검증")
    groups = parser.add_subparsers(dest="group", required=True)
    for group, commands in COMMANDS.items():
        group_parser = groups.add_parser(group)
        sub = group_parser.add_subparsers(dest="command", required=True)
        for command in commands:
            sub.add_parser(command, parents=[common])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.a is None and args.n_len is None:
        window = None
    elif args.n_len is None:
        raise PreconditionError("--len required", "--from 에는 --len 이 함께 필요합니다")
    else:
        window = Window(args.a or 0, args.n_len)
    return RunConfig(
        group=args.group,
        command=args.command,
        x=args.x,
        g=args.g,
        window=window,
        bins=args.bins,
        f=args.f,
        q=args.q,
        r=args.r,
        variant=args.variant,
        format=args.format,
        budget=args.budget,
        seed=args.seed,
        scan_limit=args.scan_limit,
        samples=args.samples,
        workers=args.workers,
        exploratory=args.exploratory,
    )


def run(argv: Optional[List[str]] = None) -> Tuple[Optional[Report], int]:
    """파싱부터 실행까지 - 예외를 종료 코드로 변환"""
    args = build_parser().parse_args(argv)
    config.setup_logging(args.log_level)
    try:
        return dispatch(config_from_args(args))
    except PreconditionError as e:
        logger.error(f"❌ 사용법/전제조건 오류: {e}")
        return None, EXIT_USAGE
    except (BudgetExceeded, SearchExhausted) as e:
        logger.error(f"❌ 한도 초과: {e}")
        return None, EXIT_EXHAUSTED
    except IdentityViolation as e:
        logger.error(f"❌ 항등식 위반: {e}")
        return None, EXIT_IDENTITY


def main(argv: Optional[List[str]] = None) -> int:
    report, code = run(argv)
    if report is not None:
        fmt = report.inputs.get("format", "json")
        sys.stdout.write(report.to_csv() if fmt == "csv" else report.to_json() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
