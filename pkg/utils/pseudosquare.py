# utils/pseudosquare.py
"""
x-pseudosquare 판정, 탐색, 구성, 개수 세기
- x-pseudosquare: n ≡ 1 (mod 8), 모든 홀수 소수 p <= x 에 대해 (n/p) = +1, 제곱수가 아님
- S̄_x: 위 조건에서 제곱수 제외 조건만 뺀 집합 (charsum 항등식은 S̄_x 기준)
"""
import math
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import islice
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from utils import config
from utils.arith_core import (
    iter_primes, is_perfect_square, jacobi, prime_basis, quadratic_table,
)
from utils.errors import BudgetExceeded, IdentityViolation, PreconditionError, SearchExhausted
from utils.reports import CountReport, IdentityCheck, build_histogram
from utils.windows import Budget, Progression, Window, ensure_budget, run_partitioned

logger = logging.getLogger(__name__)


class Provenance(str, Enum):
    SIEVE_SEARCH = "sieve_search"
    PIGEONHOLE = "pigeonhole"
    ENUMERATION = "enumeration"


def _require_threshold(x: int) -> None:
    if x < 3:
        raise PreconditionError("x >= 3", f"pseudosquare 기준값은 3 이상이어야 합니다: x={x}")


@dataclass(frozen=True)
class SymbolVector:
    """홀수 소수 기저에 대한 Legendre 기호 벡터 + mod 8 잉여"""
    n: int
    basis: Tuple[int, ...]
    symbols: Tuple[int, ...]
    residue_mod8: int

    @property
    def key(self) -> Tuple[Tuple[int, ...], int]:
        return self.symbols, self.residue_mod8


def symbol_vector(n: int, x: int) -> SymbolVector:
    _require_threshold(x)
    basis = prime_basis(x).odd_primes
    return SymbolVector(
        n=n,
        basis=basis,
        symbols=tuple(jacobi(n, p) for p in basis),
        residue_mod8=n % 8,
    )


def is_pseudosquare(n: int, x: int) -> bool:
    _require_threshold(x)
    if n < 1 or n % 8 != 1:
        return False
    if any(jacobi(n, p) != 1 for p in prime_basis(x).odd_primes):
        return False
    return not is_perfect_square(n)


@dataclass(frozen=True)
class PseudosquareRecord:
    n: int
    x: int
    provenance: Provenance

    def __post_init__(self):
        if not is_pseudosquare(self.n, self.x):
            raise IdentityViolation(f"{self.n} 은 {self.x}-pseudosquare 가 아닙니다 ({self.provenance.value})")

    def to_dict(self) -> dict:
        return {"n": self.n, "x": self.x, "provenance": self.provenance.value}


@dataclass(frozen=True)
class DensityModel:
    """S_x 의 점근 밀도 1 / (2^{π(x)+1} e^γ log x)"""
    x: int
    euler_gamma: float
    predicted_density: float

    @classmethod
    def for_threshold(cls, x: int) -> "DensityModel":
        _require_threshold(x)
        pi_x = prime_basis(x).pi_x
        density = math.ldexp(1.0, -(pi_x + 1)) / (math.exp(np.euler_gamma) * math.log(x))
        return cls(x=x, euler_gamma=float(np.euler_gamma), predicted_density=density)


def _closure_mask(progression: Progression, j: np.ndarray, odd_primes: Sequence[int]) -> np.ndarray:
    """n ≡ 1 (mod 8) 수열에서 모든 (n/p) = +1 인 항 (S̄_x 멤버)"""
    mask = np.ones(len(j), dtype=bool)
    for p in odd_primes:
        mask &= quadratic_table(p)[progression.residues(j, p)] == 1
    return mask


# =============================================================================
# 최소 pseudosquare 탐색
# =============================================================================

def least_pseudosquare(
    x: int,
    search_bound: Optional[int] = None,
    segment_size: Optional[int] = None,
    workers: Optional[int] = None,
    budget: Optional[Budget] = None,
) -> PseudosquareRecord:
    """N_x: n ≡ 1 (mod 8) 세그먼트 스캔 + 소수별 잉여 필터, 제곱수 판정은 마지막"""
    _require_threshold(x)
    odd = prime_basis(x).odd_primes
    bound = search_bound or config.SEARCH_BOUND
    size = segment_size or config.SEGMENT_SIZE
    workers = workers or config.WORKERS
    progression = Progression.within(Window(0, bound), modulus=8, residue=1)
    budget = ensure_budget(budget)

    def _scan(j0: int) -> Optional[int]:
        j = np.arange(j0, min(j0 + size, progression.terms), dtype=np.int64)
        mask = _closure_mask(progression, j, odd)
        for n in progression.values(j[mask]):
            if not is_perfect_square(n):
                return n
        return None

    starts = iter(range(0, progression.terms, size))
    with ThreadPoolExecutor(max_workers=max(workers, 1)) as executor:
        while True:
            batch = list(islice(starts, max(workers, 1)))
            if not batch:
                break
            # 세그먼트 순서대로 차감 - 거부 시점이 workers 와 무관
            affordable, refusal = [], None
            for j0 in batch:
                try:
                    budget.charge(min(size, progression.terms - j0) * max(len(odd), 1), f"least_pseudosquare(x={x})")
                except BudgetExceeded as e:
                    refusal = e
                    break
                affordable.append(j0)
            # 배치 안에서는 세그먼트 순서를 유지하므로 첫 발견이 최소값
            for found in executor.map(_scan, affordable):
                if found is not None:
                    logger.info(f"✅ N_{x} = {found}")
                    return PseudosquareRecord(n=found, x=x, provenance=Provenance.SIEVE_SEARCH)
            if refusal is not None:
                raise refusal
            logger.debug(f"N_{x} 탐색 진행: n <= {progression.first + 8 * (batch[-1] + size)}")

    raise SearchExhausted(f"{bound} 이하에서 {x}-pseudosquare 를 찾지 못했습니다")


# =============================================================================
# 비둘기집 구성
# =============================================================================

@dataclass(frozen=True)
class PigeonholeResult:
    record: PseudosquareRecord
    factors: Tuple[int, int]
    within_bound: bool
    bound: int  # X = 2^{π(x)} x
    scanned: int

    def to_dict(self) -> dict:
        return {
            **self.record.to_dict(),
            "factors": list(self.factors),
            "within_bound": self.within_bound,
            "bound_X": self.bound,
            "scanned": self.scanned,
        }


def _coprime_candidates(x: int, limit: int) -> Iterable[int]:
    m_x = prime_basis(x).m_x
    return (l for l in range(x + 1, limit + 1) if math.gcd(l, m_x) == 1)


def pigeonhole_pseudosquare(
    x: int,
    scan_limit: Optional[int] = None,
    coprime: bool = False,
    budget: Optional[Budget] = None,
) -> PigeonholeResult:
    """(기호 벡터, mod 8) 가 같은 두 ℓ1 < ℓ2 를 찾아 n = ℓ1·ℓ2 를 만든다"""
    _require_threshold(x)
    basis = prime_basis(x)
    odd = basis.odd_primes
    bound = 2 ** basis.pi_x * x
    limit = scan_limit or config.SCAN_LIMIT
    candidates = _coprime_candidates(x, limit) if coprime else iter_primes(x, limit)
    budget = ensure_budget(budget)

    seen: Dict[Tuple[Tuple[int, ...], int], List[int]] = {}
    scanned = 0
    for l in candidates:
        scanned += 1
        budget.charge(len(odd) + 1, "pigeonhole_pseudosquare")
        key = (tuple(int(quadratic_table(p)[l % p]) for p in odd), l % 8)
        for prev in seen.get(key, []):
            n = prev * l
            if coprime and is_perfect_square(n):
                continue  # 서로소 변형에서는 곱이 제곱수일 수 있음
            record = PseudosquareRecord(n=n, x=x, provenance=Provenance.PIGEONHOLE)
            if l > bound:
                logger.info(f"ℓ2={l} 가 X={bound} 를 넘음 (데스크 규모에서는 정상)")
            return PigeonholeResult(
                record=record, factors=(prev, l), within_bound=l <= bound, bound=bound, scanned=scanned,
            )
        seen.setdefault(key, []).append(l)

    raise SearchExhausted(f"{limit} 까지 스캔했지만 충돌이 없습니다 (x={x})")


# =============================================================================
# 구간 개수
# =============================================================================

def theorem_regime(x: int, n_len: int) -> dict:
    """N >= exp(3x / log log x) 여부 - 로그 스케일로만 비교"""
    log_threshold = 3 * x / math.log(math.log(x))
    return {
        "log_threshold": log_threshold,
        "in_regime": n_len >= 1 and math.log(n_len) >= log_threshold,
    }


def count_pseudosquares(
    x: int,
    window: Window,
    bins: int = 1,
    budget: Optional[Budget] = None,
    workers: Optional[int] = None,
    segment_size: Optional[int] = None,
) -> CountReport:
    """구간 안의 S_x, S̄_x 정확한 개수와 bin 히스토그램, 밀도 모델 예측"""
    _require_threshold(x)
    if bins < 1:
        raise PreconditionError("bins >= 1")
    odd = prime_basis(x).odd_primes
    progression = Progression.within(window, modulus=8, residue=1)
    ensure_budget(budget).charge(progression.terms * max(len(odd), 1), "count_pseudosquares")

    def _count(j: np.ndarray):
        members = j[_closure_mask(progression, j, odd)]
        squares = np.array([is_perfect_square(n) for n in progression.values(members)], dtype=bool)
        pseudo = members[~squares] if len(members) else members
        hist = np.zeros(bins, dtype=np.int64)
        if len(pseudo):
            hist += np.bincount(progression.bin_index(pseudo, bins), minlength=bins)
        return len(members), len(pseudo), hist

    closure, count, hist = 0, 0, np.zeros(bins, dtype=np.int64)
    for c, s, h in run_partitioned(_count, progression, segment_size, workers):
        closure += c
        count += s
        hist += h

    model = DensityModel.for_threshold(x)
    report = CountReport(
        kind="pseudosquare",
        x=x,
        window=window,
        count=count,
        count_closure=closure,
        model_density=model.predicted_density,
        bins=build_histogram(window, hist, model.predicted_density) if not window.is_empty else [],
        notes={"theorem_window": theorem_regime(x, window.n_len)},
    )
    report.identity_checks.append(IdentityCheck.exact("bins_sum_to_count", int(hist.sum()), count))
    return report


def period_count_sbar(x: int) -> int:
    """(0, 8·M_2(x)] 안의 S̄_x 개수 = ∏_{홀수 p <= x} (p-1)/2 (CRT)"""
    _require_threshold(x)
    return math.prod((p - 1) // 2 for p in prime_basis(x).odd_primes)


def verify_period_count(x: int, budget: Optional[Budget] = None) -> IdentityCheck:
    period = Window(0, 8 * prime_basis(x).m2_x)
    enumerated = count_pseudosquares(x, period, budget=budget).count_closure
    return IdentityCheck.exact(f"period_count_x{x}", enumerated, period_count_sbar(x))


def pseudosquare_growth(
    x_values: Iterable[int],
    search_bound: Optional[int] = None,
    budget: Optional[Budget] = None,
) -> pd.DataFrame:
    """N_x 를 2^{π(x)}, 4^{π(x)}, exp(x/4) 크기와 비교하는 표"""
    rows = []
    for x in x_values:
        basis = prime_basis(x)
        n_x = least_pseudosquare(x, search_bound=search_bound, budget=budget).n
        log_n = math.log(n_x)
        rows.append({
            "x": x,
            "pi_x": basis.pi_x,
            "n_x": n_x,
            "log_n_x": log_n,
            "ratio_vs_2pi": log_n / (basis.pi_x * math.log(2)),
            "ratio_vs_4pi": log_n / (basis.pi_x * math.log(4)),
            "ratio_vs_exp_x_over_4": log_n / (x / 4),
        })
    return pd.DataFrame(rows)
