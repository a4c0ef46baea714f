# utils/charsum.py
"""
실수 지표합의 정확한 계산과 한계식
- S_{A,N} = Σ_{A<8n+1<=A+N, (8n+1, M_2(x))=1} ∏_{p|M_2(x)} (1 + ((8n+1)/p))
- R_f    = Σ_{d|M_2(x)/f} μ(d) Σ_{A<8n+1<=A+N, d|8n+1} ((8n+1)/f)
- main term (f = 1), Jacobi 지표합, Pólya–Vinogradov / Graham–Ringrose 한계, r 선택
"""
import math
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, List, NamedTuple, Optional, Sequence, Union

import numpy as np

from utils.arith_core import FactoredInteger, mult_functions, prime_basis, quadratic_table
from utils.errors import IdentityViolation, PreconditionError
from utils.reports import IdentityCheck
from utils.windows import Budget, Progression, Window, ensure_budget, run_partitioned

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SumRecord:
    value: int
    terms: int
    modulus_f: int
    max_term: int = 1  # 한 항의 최대 절댓값 (S_{A,N} 은 2^{π(x)-1})

    def __post_init__(self):
        if abs(self.value) > self.max_term * self.terms:
            raise IdentityViolation(f"|{self.value}| > {self.max_term}·{self.terms}")

    def to_dict(self) -> dict:
        return {"value": self.value, "terms": self.terms, "modulus_f": self.modulus_f}


@dataclass(frozen=True)
class BoundParams:
    q: int
    n_len: int
    r: int


class SAnResult(NamedTuple):
    sum: SumRecord
    count_sbar: int


class MainTerm(NamedTuple):
    count: int
    sieve_model: float


class PVBounds(NamedTuple):
    rf_bound: float
    generic_bound: float


class GRBound(NamedTuple):
    value: float
    vacuous: bool  # 한계값 >= N 이면 자명한 한계보다 약함


class RVariant(str, Enum):
    THEOREM1 = "theorem1"
    THEOREM3 = "theorem3"


class ChooseR(NamedTuple):
    r: int
    degenerate: bool


def _odd_primes_of(x: int) -> Sequence[int]:
    return prime_basis(x).odd_primes


def _symbols(progression: Progression, j: np.ndarray, p: int) -> np.ndarray:
    return quadratic_table(p)[progression.residues(j, p)]


# =============================================================================
# S_{A,N} / main term / R_f
# =============================================================================

def s_an(
    x: int,
    window: Window,
    budget: Optional[Budget] = None,
    workers: Optional[int] = None,
    segment_size: Optional[int] = None,
) -> SAnResult:
    """S_{A,N} 을 곱 ∏(1 + χ_p) 그대로 더하고, S̄_x 개수는 따로 센다"""
    odd = _odd_primes_of(x)
    progression = Progression.within(window, modulus=8, residue=1)
    ensure_budget(budget).charge(progression.terms * max(len(odd), 1), "s_an")
    # 2^{π(x)-1} × 세그먼트 길이가 int64 에 들어가는 동안만 고정폭 정수
    dtype = np.int64 if len(odd) < 40 else object

    def _sum(j: np.ndarray):
        coprime = np.ones(len(j), dtype=bool)
        all_plus = np.ones(len(j), dtype=bool)
        product = np.ones(len(j), dtype=dtype)
        for p in odd:
            s = _symbols(progression, j, p)
            coprime &= s != 0
            all_plus &= s == 1
            product = product * (1 + s.astype(dtype))
        return int(product[coprime].sum()), int(coprime.sum()), int(all_plus.sum())

    value = terms = count_sbar = 0
    for v, t, c in run_partitioned(_sum, progression, segment_size, workers):
        value += v
        terms += t
        count_sbar += c

    record = SumRecord(value=value, terms=terms, modulus_f=prime_basis(x).m2_x, max_term=2 ** len(odd))
    return SAnResult(sum=record, count_sbar=count_sbar)


def squarecount_check(x: int, window: Window, budget: Optional[Budget] = None) -> IdentityCheck:
    """S_{A,N} = 2^{π(x)-1} #(S̄_x ∩ (A, A+N])"""
    result = s_an(x, window, budget)
    return IdentityCheck.exact(
        f"squarecount_x{x}_{window}", result.sum.value, 2 ** (prime_basis(x).pi_x - 1) * result.count_sbar,
    )


def main_term(x: int, window: Window, budget: Optional[Budget] = None) -> MainTerm:
    """f = 1 항: n ≡ 1 (mod 8), (n, M_2(x)) = 1 인 개수와 체 모델 N / (4 e^γ log x)"""
    odd = _odd_primes_of(x)
    progression = Progression.within(window, modulus=8, residue=1)
    ensure_budget(budget).charge(progression.terms * max(len(odd), 1), "main_term")

    def _count(j: np.ndarray) -> int:
        coprime = np.ones(len(j), dtype=bool)
        for p in odd:
            coprime &= progression.residues(j, p) != 0
        return int(coprime.sum())

    count = sum(run_partitioned(_count, progression))
    model = window.n_len / (4 * math.exp(np.euler_gamma) * math.log(x))
    return MainTerm(count=count, sieve_model=model)


def r_f(x: int, f: int, window: Window, budget: Optional[Budget] = None) -> SumRecord:
    """R_f 을 Möbius 전개 그대로 계산 (d | M_2(x)/f 각각에 대한 부분합)"""
    m2 = prime_basis(x).m2_x
    if f <= 1:
        raise PreconditionError("f > 1", "f = 1 항은 main_term 으로 계산합니다")
    if m2 % f != 0:
        raise PreconditionError("f | M_2(x)", f"f={f} 는 M_2({x})={m2} 의 약수가 아닙니다")

    odd = _odd_primes_of(x)
    f_primes = [p for p in odd if f % p == 0]
    cofactor = [p for p in odd if f % p != 0]
    subsets = [s for k in range(len(cofactor) + 1) for s in combinations(cofactor, k)]
    progression = Progression.within(window, modulus=8, residue=1)
    cost = progression.terms * (len(f_primes) + sum(len(s) for s in subsets) + len(subsets))
    ensure_budget(budget).charge(cost, f"r_f(f={f})")

    def _sum(j: np.ndarray) -> int:
        chi = np.ones(len(j), dtype=np.int64)
        for p in f_primes:
            chi *= _symbols(progression, j, p)
        total = 0
        for subset in subsets:
            divisible = np.ones(len(j), dtype=bool)
            for p in subset:
                divisible &= progression.residues(j, p) == 0
            mu = -1 if len(subset) % 2 else 1
            total += mu * int(chi[divisible].sum())
        return total

    value = sum(run_partitioned(_sum, progression))
    return SumRecord(value=value, terms=progression.terms, modulus_f=f)


@dataclass(frozen=True)
class QuadsumDecomposition:
    s_an: int
    main_count: int
    contributions: Dict[int, int]

    @property
    def rhs(self) -> int:
        return self.main_count + sum(self.contributions.values())

    def check(self, label: str = "") -> IdentityCheck:
        return IdentityCheck.exact(f"quadsum{label}", self.s_an, self.rhs)


def quadsum_decomposition(x: int, window: Window, budget: Optional[Budget] = None) -> QuadsumDecomposition:
    """S_{A,N} = main term + Σ_{f | M_2(x), f > 1} R_f"""
    odd = _odd_primes_of(x)
    divisors = [math.prod(s) for k in range(1, len(odd) + 1) for s in combinations(odd, k)]
    return QuadsumDecomposition(
        s_an=s_an(x, window, budget).sum.value,
        main_count=main_term(x, window, budget).count,
        contributions={f: r_f(x, f, window, budget).value for f in sorted(divisors)},
    )


# =============================================================================
# Jacobi 지표합
# =============================================================================

def char_sum(q: int, window: Window, budget: Optional[Budget] = None) -> SumRecord:
    """Σ_{A<n<=A+N} (n/q), q 는 홀수 무제곱 (실수 원시 지표)"""
    if q <= 1:
        raise PreconditionError("q > 1")
    if q % 2 == 0:
        raise PreconditionError("q odd", f"q={q} 는 홀수여야 합니다")
    factored = FactoredInteger.of(q)
    if factored.mu == 0:
        raise PreconditionError("q squarefree", f"q={q} 는 무제곱수가 아닙니다")

    primes = [p for p, _ in factored.factors]
    progression = Progression.within(window)
    ensure_budget(budget).charge(progression.terms * len(primes), f"char_sum(q={q})")

    def _sum(j: np.ndarray) -> int:
        chi = np.ones(len(j), dtype=np.int64)
        for p in primes:
            chi *= _symbols(progression, j, p)
        return int(chi.sum())

    value = sum(run_partitioned(_sum, progression))
    return SumRecord(value=value, terms=progression.terms, modulus_f=q)


# =============================================================================
# 한계식
# =============================================================================

def pv_bounds(x: int, f: int) -> PVBounds:
    """|R_f| <= 3·2^{π(x)-2} √f log f, 단일 완전 지표합은 √f log f"""
    if f <= 1:
        raise PreconditionError("f > 1")
    generic = math.sqrt(f) * math.log(f)
    return PVBounds(rf_bound=math.ldexp(3.0, prime_basis(x).pi_x - 2) * generic, generic_bound=generic)


def _power_less(base: int, exp: int, other: int, other_exp: int) -> bool:
    """base^exp < other^other_exp (base, other >= 1) - 비트 길이로 먼저 판정하고 겹칠 때만 정확히 계산"""
    lo, hi = exp * (base.bit_length() - 1) + 1, exp * base.bit_length()
    other_lo, other_hi = other_exp * (other.bit_length() - 1) + 1, other_exp * other.bit_length()
    if hi < other_lo:
        return True
    if lo > other_hi:
        return False
    return base ** exp < other ** other_exp


def gr_preconditions(params: BoundParams) -> List[str]:
    """실패한 전제조건 목록 (비어 있으면 모두 만족)"""
    failures = []
    if params.r < 1:
        failures.append("r >= 1")
    if params.n_len < 1:
        failures.append("N >= 1")
    if params.q <= 1:
        failures.append("q > 1")
        return failures

    factored = FactoredInteger.of(params.q)
    if factored.mu == 0:
        failures.append("q squarefree")
    # p <= N^{1/9}  <=>  p^9 <= N (정수 비교)
    if any(p ** 9 > params.n_len for p, _ in factored.factors):
        failures.append("all prime factors of q are at most N^(1/9)")
    if params.r >= 1 and params.n_len >= 1 and _power_less(params.n_len, params.r, params.q, 3):
        failures.append("N^r >= q^3")
    return failures


def gr_bound(params: BoundParams) -> GRBound:
    """4 N τ(q)^{r/2^r} q^{-1/(r 2^r)}"""
    failures = gr_preconditions(params)
    if failures:
        raise PreconditionError(failures[0], f"Graham–Ringrose 전제조건 위반: {', '.join(failures)}")

    q, n_len, r = params.q, params.n_len, params.r
    tau = mult_functions(q).tau
    # 지수 r/2^r, 1/(r 2^r) 는 2^r 을 정수로 만들지 않고 계산
    value = 4.0 * n_len * tau ** math.ldexp(r, -r) * q ** -math.ldexp(1.0 / r, -r)
    vacuous = value >= n_len
    if vacuous:
        logger.warning(f"⚠️ 자명한 영역: GR 한계 {value:.4g} >= N={n_len}")
    return GRBound(value=value, vacuous=vacuous)


def choose_r(x: float, variant: Union[RVariant, str] = RVariant.THEOREM1) -> ChooseR:
    """r·2^r + 2 <= log x / log log x (theorem3 은 분모가 (log log x)^2) 인 최대 r"""
    variant = RVariant(variant)
    log_log_x = math.log(math.log(x)) if x > math.e else 0.0
    if log_log_x <= 1:
        return ChooseR(r=1, degenerate=True)

    denominator = log_log_x if variant is RVariant.THEOREM1 else log_log_x ** 2
    limit = math.log(x) / denominator
    r = 1
    while (r + 1) * 2 ** (r + 1) + 2 <= limit:
        r += 1
    return ChooseR(r=r, degenerate=False)


@dataclass(frozen=True)
class RegimeBounds:
    break_point: float    # f > N^{r2^r/(r2^{r-1}+1)} 이면 큰 f 영역
    small_f_bound: float  # 2^{π(x)} N^{1-2/(r2^r+2)} log(N^2)
    regime: str

    def to_dict(self) -> dict:
        return {"break_point": self.break_point, "small_f_bound": self.small_f_bound, "regime": self.regime}


def rf_regime(x: int, f: int, n_len: int, r: int) -> RegimeBounds:
    if n_len < 2 or r < 1:
        raise PreconditionError("N >= 2 and r >= 1")
    log_n = math.log(n_len)
    exponent = r * 2 ** r / (r * 2 ** (r - 1) + 1)
    break_point = math.exp(min(exponent * log_n, 709.0))
    small_f = math.ldexp(1.0, prime_basis(x).pi_x) * math.exp((1 - 2 / (r * 2 ** r + 2)) * log_n) * 2 * log_n
    regime = "graham_ringrose" if math.log(f) > exponent * log_n else "polya_vinogradov"
    return RegimeBounds(break_point=break_point, small_f_bound=small_f, regime=regime)
