# utils/pseudopower.py
"""
x-pseudopower (밑 g) 관련 계산
- 위수/지수 프로파일 l_g(p), i_g(p), I_g(x)
- 판정, 최소값 q_g(x) / p_g(x) 탐색, 주기 (0, M(x)] 정확한 개수
- 위수 i_g(p) 지표 χ_p 구성과 지시함수 Σ_j χ_p^j
- 가중합 S_g 항등식, P_{A,N} 항등식과 conductor 전개
"""
import math
import cmath
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple, Union

import numpy as np
import pandas as pd
from sympy import primitive_root

from utils.arith_core import (
    FactoredInteger, discrete_log, is_power_of, mul_order_index, mult_functions, prime_basis,
    true_powers, von_mangoldt, von_mangoldt_table,
)
from utils.errors import IdentityViolation, PreconditionError, SearchExhausted
from utils.reports import CountReport, IdentityCheck, build_histogram
from utils.windows import Budget, Progression, Window, ensure_budget, iter_blocks, run_partitioned

logger = logging.getLogger(__name__)


class PowerVariant(str, Enum):
    Q_G = "q_g"  # g 를 나누는 소수에서도 조건 (ii) 적용
    P_G = "p_g"  # p ∤ g 인 소수만 검사


class PowerKind(str, Enum):
    PSEUDOPOWER = "pseudopower"
    TRUE_POWER = "true_power"


def _require_base(g: int) -> None:
    if abs(g) < 2:
        raise PreconditionError("|g| >= 2", f"밑 g 는 |g| >= 2 이어야 합니다: g={g}")


# =============================================================================
# 프로파일
# =============================================================================

class ProfileRow(NamedTuple):
    p: int
    l: int
    i: int


@dataclass(frozen=True)
class PowerProfile:
    g: int
    x: int
    rows: Tuple[ProfileRow, ...]
    i_product: int
    l_product: int

    def __post_init__(self):
        if self.i_product * self.l_product != self.phi_m_g:
            raise IdentityViolation(f"I_g(x)·∏l != φ(M_g(x)) (g={self.g}, x={self.x})")

    @property
    def m_g(self) -> int:
        return math.prod(row.p for row in self.rows)

    @property
    def phi_m_g(self) -> int:
        return math.prod(row.p - 1 for row in self.rows)

    def index_of(self, p: int) -> int:
        return next(row.i for row in self.rows if row.p == p)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(list(self.rows), columns=["p", "l", "i"])

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "x": self.x,
            "rows": [row._asdict() for row in self.rows],
            "I_g": self.i_product,
            "L_g": self.l_product,
        }


@lru_cache(maxsize=256)
def power_profile(g: int, x: int) -> PowerProfile:
    """p <= x, p ∤ g 인 모든 소수에 대한 (p, l_g(p), i_g(p))"""
    _require_base(g)
    if x < 2:
        raise PreconditionError("x >= 2")
    rows = tuple(
        ProfileRow(p, *mul_order_index(g, p))
        for p in prime_basis(x).primes if g % p != 0
    )
    return PowerProfile(
        g=g,
        x=x,
        rows=rows,
        i_product=math.prod(row.i for row in rows),
        l_product=math.prod(row.l for row in rows),
    )


def _g_primes(g: int, x: int) -> List[int]:
    return [p for p in prime_basis(x).primes if g % p == 0]


# =============================================================================
# 판정 / 탐색
# =============================================================================

def in_closure(n: int, g: int, x: int, ignore_divisors_of_g: bool = False) -> bool:
    """P̄_x 멤버십: (i) p ∤ g 이면 n ∈ <g> mod p, (ii) p | g 이면 n ≡ 0, 1 (mod p)"""
    for row in power_profile(g, x).rows:
        # <g> 는 지수 i_g(p) 인 유일한 부분군 - n^{l} ≡ 1 로 판정
        if n % row.p == 0 or pow(n, row.l, row.p) != 1:
            return False
    if not ignore_divisors_of_g:
        if any(n % p not in (0, 1) for p in _g_primes(g, x)):
            return False
    return True


def is_pseudopower(n: int, g: int, x: int, ignore_divisors_of_g: bool = False) -> bool:
    _require_base(g)
    if n < 1 or is_power_of(n, g):
        return False
    return in_closure(n, g, x, ignore_divisors_of_g)


@lru_cache(maxsize=256)
def _membership_tables(g: int, x: int, ignore_divisors_of_g: bool) -> Tuple[Tuple[int, np.ndarray], ...]:
    """소수별 허용 잉여 표 (벡터화 판정용)"""
    tables = []
    for row in power_profile(g, x).rows:
        table = np.array([r != 0 and pow(r, row.l, row.p) == 1 for r in range(row.p)], dtype=bool)
        tables.append((row.p, table))
    if not ignore_divisors_of_g:
        for p in _g_primes(g, x):
            table = np.zeros(p, dtype=bool)
            table[[0, 1 % p]] = True
            tables.append((p, table))
    return tuple(tables)


def least_pseudopower(
    g: int,
    x: int,
    variant: Union[PowerVariant, str] = PowerVariant.Q_G,
    segment_size: Optional[int] = None,
    budget: Optional[Budget] = None,
) -> int:
    """q_g(x) 또는 p_g(x) - 자명한 한계 2M(x)+1 까지 세그먼트 스캔"""
    _require_base(g)
    variant = PowerVariant(variant)
    bound = 2 * prime_basis(x).m_x + 1
    tables = _membership_tables(g, x, variant is PowerVariant.P_G)
    powers = set(true_powers(g, bound))
    budget = ensure_budget(budget)

    for block in iter_blocks(1, bound + 1, segment_size):
        budget.charge(len(block) * max(len(tables), 1), f"least_pseudopower(g={g}, x={x})")
        mask = np.ones(len(block), dtype=bool)
        for p, table in tables:
            mask &= table[block % p]
        for n in block[mask].tolist():
            if n not in powers:
                logger.info(f"✅ {variant.value}({x}) = {n} (g={g})")
                return n

    raise SearchExhausted(f"2M(x)+1={bound} 이하에 pseudopower 가 없음 - 자명한 한계와 모순 (g={g}, x={x})")


class PseudopowerPair(NamedTuple):
    q_g: int
    p_g: int

    def check(self, g: int) -> IdentityCheck:
        # g·p_g(x) 는 x-pseudopower 이므로 q_g(x) <= |g|·p_g(x)
        return IdentityCheck(
            name="q_g_le_abs_g_times_p_g", lhs=self.q_g, rhs=abs(g) * self.p_g,
            passed=self.q_g <= abs(g) * self.p_g,
        )


def pseudopower_pair(g: int, x: int, budget: Optional[Budget] = None) -> PseudopowerPair:
    return PseudopowerPair(
        q_g=least_pseudopower(g, x, PowerVariant.Q_G, budget=budget),
        p_g=least_pseudopower(g, x, PowerVariant.P_G, budget=budget),
    )


@dataclass(frozen=True)
class PseudopowerRecord:
    n: int
    g: int
    x: int
    kind: PowerKind

    def __post_init__(self):
        if not in_closure(self.n, self.g, self.x):
            raise IdentityViolation(f"{self.n} 은 P̄_x 멤버가 아닙니다 (g={self.g}, x={self.x})")
        if (self.kind is PowerKind.TRUE_POWER) != is_power_of(self.n, self.g):
            raise IdentityViolation(f"{self.n} 의 종류가 잘못됨: {self.kind.value}")

    def to_dict(self) -> dict:
        return {"n": self.n, "g": self.g, "x": self.x, "kind": self.kind.value}


def closure_members(g: int, x: int, window: Window, limit: int = 100) -> List[PseudopowerRecord]:
    """구간 안의 P̄_x 멤버 (앞에서부터 최대 limit 개)"""
    tables = _membership_tables(g, x, False)
    progression = Progression.within(window)
    records: List[PseudopowerRecord] = []
    for j0, count in progression.chunks():
        j = np.arange(j0, j0 + count, dtype=np.int64)
        mask = np.ones(len(j), dtype=bool)
        for p, table in tables:
            mask &= table[progression.residues(j, p)]
        for n in progression.values(j[mask]):
            kind = PowerKind.TRUE_POWER if is_power_of(n, g) else PowerKind.PSEUDOPOWER
            records.append(PseudopowerRecord(n=n, g=g, x=x, kind=kind))
            if len(records) >= limit:
                return records
    return records


# =============================================================================
# 주기 개수 / 구간 개수
# =============================================================================

class PeriodCount(NamedTuple):
    count_pbar: int
    count_true_powers: int

    @property
    def pseudopower_count(self) -> int:
        # 양의 정수 거듭제곱은 항상 P̄_x 에 속한다
        return self.count_pbar - self.count_true_powers


def exact_count_period(g: int, x: int) -> PeriodCount:
    """#(P̄_x ∩ (0, M(x)]) = 2^{ω(g)} ∏ l_g(p) (x >= |g| 일 때 CRT 로 정확)"""
    _require_base(g)
    if x < abs(g):
        raise PreconditionError("x >= |g|", f"주기 공식은 x >= |g| 에서만 정확합니다: x={x}, g={g}")
    profile = power_profile(g, x)
    omega = mult_functions(abs(g)).omega
    return PeriodCount(
        count_pbar=2 ** omega * profile.l_product,
        count_true_powers=len(true_powers(g, prime_basis(x).m_x)),
    )


def power_density(g: int, x: int) -> float:
    """2^{ω(g)} / (e^γ φ(rad g) I_g(x) log x)"""
    mf = mult_functions(abs(g))
    rad_phi = mult_functions(mf.rad).phi
    profile = power_profile(g, x)
    return 2 ** mf.omega / (math.exp(np.euler_gamma) * rad_phi * profile.i_product * math.log(x))


def count_pseudopowers(
    g: int,
    x: int,
    window: Window,
    bins: int = 1,
    budget: Optional[Budget] = None,
    workers: Optional[int] = None,
    segment_size: Optional[int] = None,
) -> CountReport:
    """구간 안의 P_x, P̄_x 정확한 개수, 히스토그램, 밀도 모델"""
    _require_base(g)
    if bins < 1:
        raise PreconditionError("bins >= 1")
    tables = _membership_tables(g, x, False)
    progression = Progression.within(window)
    ensure_budget(budget).charge(progression.terms * max(len(tables), 1), "count_pseudopowers")

    def _count(j: np.ndarray):
        mask = np.ones(len(j), dtype=bool)
        for p, table in tables:
            mask &= table[progression.residues(j, p)]
        members = j[mask]
        hist = np.zeros(bins, dtype=np.int64)
        if len(members):
            hist += np.bincount(progression.bin_index(members, bins), minlength=bins)
        return len(members), hist

    closure, hist = 0, np.zeros(bins, dtype=np.int64)
    for c, h in run_partitioned(_count, progression, segment_size, workers):
        closure += c
        hist += h

    # 진짜 거듭제곱은 몇 개 안 되므로 하나씩 제외
    powers_in_window = [v for v in true_powers(g, window.end) if v in window]
    for v in powers_in_window:
        hist[((v - window.a) * bins + window.n_len - 1) // window.n_len - 1] -= 1

    density = power_density(g, x)
    notes: Dict[str, object] = {"true_powers_in_window": len(powers_in_window)}
    if x >= abs(g):
        notes["period_density"] = exact_count_period(g, x).count_pbar / prime_basis(x).m_x

    count = closure - len(powers_in_window)
    report = CountReport(
        kind="pseudopower",
        x=x,
        g=g,
        window=window,
        count=count,
        count_closure=closure,
        model_density=density,
        bins=build_histogram(window, hist, density) if not window.is_empty else [],
        notes=notes,
    )
    report.identity_checks.append(IdentityCheck.exact("bins_sum_to_count", int(hist.sum()), count))
    return report


def verify_period_count(g: int, x: int, budget: Optional[Budget] = None) -> IdentityCheck:
    """CRT 공식과 (0, M(x)] 전수 열거 비교"""
    expected = exact_count_period(g, x)
    enumerated = count_pseudopowers(g, x, Window(0, prime_basis(x).m_x), budget=budget)
    return IdentityCheck.exact(f"period_count_g{g}_x{x}", enumerated.count_closure, expected.count_pbar)


# =============================================================================
# 지표
# =============================================================================

@dataclass(frozen=True)
class OrderCharacter:
    """mod p 의 위수 order 지표: χ(n) = exp(2πi·(ind_root(n) mod order)/order), p | n 이면 0"""
    p: int
    order: int
    root: int
    index: Tuple[int, ...] = field(repr=False)  # index[r] = ind_root(r), index[0] = -1

    def __call__(self, n: int) -> complex:
        r = n % self.p
        if r == 0:
            return 0j
        return cmath.exp(2j * math.pi * (self.index[r] % self.order) / self.order)

    def table(self, power: int = 1) -> np.ndarray:
        """χ^power 의 잉여별 값 (길이 p)"""
        ind = np.array(self.index, dtype=np.int64)
        values = np.exp(2j * np.pi * ((ind * power) % self.order) / self.order)
        values[0] = 0
        return values

    def indicator_table(self) -> np.ndarray:
        """Σ_{j=1}^{order} χ^j - 핵(지수 order 부분군)에서 order, 그 외 0"""
        return sum(self.table(j) for j in range(1, self.order + 1))


@lru_cache(maxsize=512)
def build_character(p: int, order: int) -> OrderCharacter:
    if order < 1 or (p - 1) % order != 0:
        raise PreconditionError("order | p-1", f"위수 {order} 는 {p - 1} 의 약수가 아닙니다")
    root = int(primitive_root(p))
    index = (-1,) + tuple(discrete_log(p, root, r) for r in range(1, p))
    return OrderCharacter(p=p, order=order, root=root, index=index)


def _indicator_product(profile: PowerProfile, residues_of) -> np.ndarray:
    """∏_{p | M_g(x)} Σ_j χ_p^j(n) - residues_of(p) 는 잉여 배열"""
    result = None
    for row in profile.rows:
        values = build_character(row.p, row.i).indicator_table()[residues_of(row.p)]
        result = values if result is None else result * values
    return result


# =============================================================================
# 가중합 S_g
# =============================================================================

@dataclass(frozen=True)
class WeightedSum:
    value: complex
    identity_rhs: float
    p_g: int
    terms: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.value - self.identity_rhs) <= self.tolerance and abs(self.value.imag) <= self.tolerance

    def check(self) -> IdentityCheck:
        return IdentityCheck(name="weighted_sum_S_g", lhs=self.value.real, rhs=self.identity_rhs, passed=self.passed)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "identity_rhs": self.identity_rhs,
            "p_g": self.p_g,
            "terms": self.terms,
            "tolerance": self.tolerance,
        }


def weighted_sum_sg(g: int, x: int, budget: Optional[Budget] = None) -> WeightedSum:
    """S_g = Σ_{n<p_g(x)} Λ(n) ∏_p Σ_j χ_p^j(n) 와 I_g(x) Σ Λ(g 의 거듭제곱) 비교"""
    profile = power_profile(g, x)
    budget = ensure_budget(budget)
    p_g = least_pseudopower(g, x, PowerVariant.P_G, budget=budget)
    budget.charge((p_g - 1) * max(len(profile.rows), 1), f"weighted_sum_sg(g={g}, x={x})")
    n = np.arange(1, p_g, dtype=np.int64)
    weights = von_mangoldt_table(p_g - 1)[1:]
    indicator = _indicator_product(profile, lambda p: n % p)
    value = complex(np.sum(weights * indicator)) if indicator is not None else complex(weights.sum())

    rhs = profile.i_product * sum(von_mangoldt(v) for v in true_powers(g, p_g - 1))
    tolerance = 1e-9 * max(len(n), 1) * profile.i_product
    return WeightedSum(value=value, identity_rhs=rhs, p_g=p_g, terms=len(n), tolerance=tolerance)


# =============================================================================
# P_{A,N}
# =============================================================================

def _splittings(g: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """ab = rad(g), gcd(a, b) = 1 인 분해 (a 의 소수, b 의 소수)"""
    primes = [p for p, _ in FactoredInteger.of(abs(g)).factors]
    return [
        (a, tuple(p for p in primes if p not in a))
        for k in range(len(primes) + 1) for a in combinations(primes, k)
    ]


def _split_mask(progression: Progression, j: np.ndarray, a_primes, b_primes) -> np.ndarray:
    mask = np.ones(len(j), dtype=bool)
    for p in a_primes:
        mask &= progression.residues(j, p) == 0
    for p in b_primes:
        mask &= progression.residues(j, p) == 1
    return mask


class PAnResult(NamedTuple):
    p_an: complex
    direct: int
    weight: int
    terms: int

    def check(self) -> IdentityCheck:
        tolerance = 1e-9 * max(self.terms, 1) * self.weight
        passed = abs(self.p_an - self.weight * self.direct) <= tolerance
        return IdentityCheck(name="p_an_identity", lhs=self.p_an.real, rhs=self.weight * self.direct, passed=passed)


def p_an_identity(g: int, x: int, window: Window, budget: Optional[Budget] = None) -> PAnResult:
    """P_{A,N} 을 지표 곱으로 계산하고 P̄_x 직접 개수와 비교 (가중치 I_g(x))"""
    _require_base(g)
    if x < abs(g):
        raise PreconditionError("x >= |g|")
    profile = power_profile(g, x)
    splittings = _splittings(g)
    tables = _membership_tables(g, x, False)
    progression = Progression.within(window)
    ensure_budget(budget).charge(
        progression.terms * (len(profile.rows) + len(tables) + len(splittings)), "p_an_identity",
    )

    def _sum(j: np.ndarray):
        indicator = _indicator_product(profile, lambda p: progression.residues(j, p))
        if indicator is None:
            indicator = np.ones(len(j), dtype=complex)
        total = 0j
        for a_primes, b_primes in splittings:
            total += complex(indicator[_split_mask(progression, j, a_primes, b_primes)].sum())
        direct = np.ones(len(j), dtype=bool)
        for p, table in tables:
            direct &= table[progression.residues(j, p)]
        return total, int(direct.sum())

    p_an, direct = 0j, 0
    for total, count in run_partitioned(_sum, progression):
        p_an += total
        direct += count
    return PAnResult(p_an=p_an, direct=direct, weight=profile.i_product, terms=progression.terms)


def conductor_character_set(g: int, x: int, f: int) -> List[Dict[int, int]]:
    """X_f = {∏_{p|f} χ_p^{j_p} : 1 <= j_p <= i_g(p) - 1} 의 지수 벡터 목록"""
    profile = power_profile(g, x)
    if f < 1 or profile.m_g % f != 0:
        raise PreconditionError("f | M_g(x)", f"f={f} 는 M_g({x})={profile.m_g} 의 약수가 아닙니다")
    f_rows = [row for row in profile.rows if f % row.p == 0]
    ranges = [range(1, row.i) for row in f_rows]
    return [dict(zip((row.p for row in f_rows), exps)) for exps in product(*ranges)]


def conductor_characters(g: int, x: int, f: int) -> int:
    """|X_f| = ∏_{p|f} (i_g(p) - 1); 어떤 p | f 에서 i_g(p) = 1 이면 0"""
    profile = power_profile(g, x)
    if f < 1 or profile.m_g % f != 0:
        raise PreconditionError("f | M_g(x)", f"f={f} 는 M_g({x})={profile.m_g} 의 약수가 아닙니다")
    return math.prod(row.i - 1 for row in profile.rows if f % row.p == 0)


@dataclass(frozen=True)
class ConductorDecomposition:
    principal: complex
    by_conductor: Dict[int, complex]

    @property
    def total(self) -> complex:
        return self.principal + sum(self.by_conductor.values())


def p_an_decomposition(g: int, x: int, window: Window, budget: Optional[Budget] = None) -> ConductorDecomposition:
    """P_{A,N} = 주지표 기여 + Σ_{f>1} Σ_{χ ∈ X_f} Σ_{(n, M_g/f)=1} χ(n)"""
    if x < abs(g):
        raise PreconditionError("x >= |g|")
    profile = power_profile(g, x)
    splittings = _splittings(g)
    eligible = [row.p for row in profile.rows if row.i > 1]
    conductors = [math.prod(s) for k in range(len(eligible) + 1) for s in combinations(eligible, k)]
    progression = Progression.within(window)
    ensure_budget(budget).charge(
        progression.terms * profile.i_product * (len(profile.rows) + len(splittings)), "p_an_decomposition",
    )

    def _sum(j: np.ndarray) -> Dict[int, complex]:
        split = np.zeros(len(j), dtype=bool)
        for a_primes, b_primes in splittings:
            split |= _split_mask(progression, j, a_primes, b_primes)
        residues = {row.p: progression.residues(j, row.p) for row in profile.rows}
        out: Dict[int, complex] = {}
        for f in conductors:
            coprime = np.ones(len(j), dtype=bool)
            for row in profile.rows:
                if f % row.p != 0:
                    coprime &= residues[row.p] != 0
            total = 0j
            for exps in conductor_character_set(g, x, f):
                chi = np.ones(len(j), dtype=complex)
                for p, e in exps.items():
                    chi *= build_character(p, profile.index_of(p)).table(e)[residues[p]]
                total += complex(chi[coprime & split].sum())
            out[f] = total
        return out

    merged: Dict[int, complex] = {f: 0j for f in conductors}
    for part in run_partitioned(_sum, progression):
        for f, value in part.items():
            merged[f] += value
    principal = merged.pop(1)
    return ConductorDecomposition(principal=principal, by_conductor=merged)


# =============================================================================
# 성장 표
# =============================================================================

def pseudopower_growth(g: int, x_values: Iterable[int], budget: Optional[Budget] = None) -> pd.DataFrame:
    """q_g(x) 를 자명한 한계 2M(x)+1, exp(0.88715x), exp(C x loglog x / log x) 형태와 비교"""
    rows = []
    for x in x_values:
        pair = pseudopower_pair(g, x, budget)
        log_q = math.log(pair.q_g)
        log_x = math.log(x)
        rows.append({
            "x": x,
            "q_g": pair.q_g,
            "p_g": pair.p_g,
            "trivial_bound": 2 * prime_basis(x).m_x + 1,
            "log_q_g": log_q,
            "c_loglog_shape": log_q * log_x / (x * math.log(log_x)) if x > math.e else None,
            "c_conjectured_shape": log_q * log_x / x,
            "log_q_over_x": log_q / x,
            "vs_0_88715": log_q / (0.88715 * x),
        })
    return pd.DataFrame(rows)
