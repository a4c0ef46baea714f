# utils/arith_core.py
"""
정수 및 곱셈적 함수 산술 - 다른 모든 모듈의 기반
- 소수 체 (numpy 벡터화, 세그먼트 생성기)
- 소수 기저 PrimeBasis 와 primorial M(x), M_2(x), M_g(x)
- Jacobi 기호 (이진 알고리즘 + 상호법칙)
- 위수/지수, 곱셈적 함수, 거듭제곱 판정, 이산로그, von Mangoldt
"""
import math
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Literal, NamedTuple, Optional, Tuple

import numpy as np
from sympy import factorint, isprime, is_primitive_root, n_order
from sympy.ntheory.residue_ntheory import discrete_log as sympy_discrete_log

from utils import config
from utils.errors import PreconditionError

logger = logging.getLogger(__name__)

Symbol = Literal[-1, 0, 1]


# =============================================================================
# 소수 체
# =============================================================================

def sieve_primes(limit: int) -> List[int]:
    """limit 이하의 소수를 오름차순으로 반환 (limit < 2 이면 빈 리스트)"""
    if limit < 2:
        return []
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).tolist()


def iter_primes(low: int, high: int, segment_size: Optional[int] = None) -> Iterator[int]:
    """(low, high] 구간의 소수를 세그먼트 체로 순서대로 생성"""
    segment_size = segment_size or config.SEGMENT_SIZE
    base = sieve_primes(math.isqrt(high) + 1)
    start = max(low + 1, 0)

    while start <= high:
        end = min(start + segment_size, high + 1)  # exclusive
        mask = np.ones(end - start, dtype=bool)
        if start < 2:
            mask[:2 - start] = False

        for p in base:
            if p * p >= end:
                break
            first = max(p * p, -(-start // p) * p)
            mask[first - start::p] = False  # 벡터화된 배수 제거

        for offset in np.flatnonzero(mask):
            yield start + int(offset)
        start = end


@dataclass(frozen=True)
class PrimeBasis:
    """x 이하 소수 전체와 파생 primorial"""
    x: int
    primes: Tuple[int, ...]
    pi_x: int
    m_x: int
    m2_x: int

    @classmethod
    def build(cls, x: int) -> "PrimeBasis":
        primes = tuple(sieve_primes(int(x)))
        m_x = math.prod(primes)
        m2_x = m_x // 2 if primes else 1
        return cls(x=int(x), primes=primes, pi_x=len(primes), m_x=m_x, m2_x=m2_x)

    @property
    def odd_primes(self) -> Tuple[int, ...]:
        return tuple(p for p in self.primes if p != 2)


@lru_cache(maxsize=256)
def prime_basis(x: int) -> PrimeBasis:
    return PrimeBasis.build(x)


def primorial(basis: PrimeBasis, exclude_divisors_of: Optional[int] = None) -> int:
    """기저 소수의 곱; g 가 주어지면 g 를 나누는 소수는 제외 (g=2 이면 M_2(x))"""
    g = exclude_divisors_of
    if g is not None and abs(g) < 2:
        raise PreconditionError("|g| >= 2", f"제외 기준 g 는 |g| >= 2 이어야 합니다: g={g}")
    return math.prod(p for p in basis.primes if g is None or g % p != 0)


# =============================================================================
# Jacobi 기호
# =============================================================================

def jacobi(a: int, m: int) -> Symbol:
    """Jacobi 기호 (a/m); m 이 소수이면 Legendre 기호와 같다"""
    if m < 1 or m % 2 == 0:
        raise PreconditionError("m odd and m >= 1", f"Jacobi 기호의 법은 양의 홀수여야 합니다: m={m}")

    a %= m
    result = 1
    while a != 0:
        # 2의 거듭제곱 제거: (2/m) = -1 iff m ≡ 3, 5 (mod 8)
        twos = (a & -a).bit_length() - 1
        a >>= twos
        if twos % 2 == 1 and m % 8 in (3, 5):
            result = -result
        # 상호법칙
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


@lru_cache(maxsize=1024)
def quadratic_table(p: int) -> np.ndarray:
    """홀수 소수 p 에 대한 Legendre 기호 표 - table[r] = (r/p)"""
    table = np.full(p, -1, dtype=np.int8)
    table[0] = 0
    squares = (np.arange(1, p, dtype=np.int64) ** 2) % p
    table[squares] = 1
    table.setflags(write=False)
    return table


# =============================================================================
# 위수 / 곱셈적 함수
# =============================================================================

class OrderIndex(NamedTuple):
    l: int
    i: int


def mul_order_index(g: int, p: int) -> OrderIndex:
    """g mod p 의 곱셈적 위수 l_g(p) 와 부분군 지수 i_g(p) = (p-1)/l_g(p)"""
    if abs(g) < 2:
        raise PreconditionError("|g| >= 2")
    if not isprime(p):
        raise PreconditionError("p prime", f"p 는 소수여야 합니다: p={p}")
    if g % p == 0:
        raise PreconditionError("p does not divide g", f"p={p} 가 g={g} 를 나눕니다")

    l = int(n_order(g % p, p))  # 음수 g 는 잉여로 환원
    return OrderIndex(l=l, i=(p - 1) // l)


@dataclass(frozen=True)
class FactoredInteger:
    n: int
    factors: Tuple[Tuple[int, int], ...]

    @classmethod
    def of(cls, n: int) -> "FactoredInteger":
        if n == 0:
            raise PreconditionError("n != 0", "0 은 소인수분해할 수 없습니다")
        if abs(n) > config.FACTOR_LIMIT:
            logger.warning(f"⚠️ 데스크 규모 한도({config.FACTOR_LIMIT})를 넘는 소인수분해: n={n}")
        return cls(n=n, factors=tuple(sorted(factorint(abs(n)).items())))

    @property
    def tau(self) -> int:
        return math.prod(e + 1 for _, e in self.factors)

    @property
    def mu(self) -> int:
        if any(e > 1 for _, e in self.factors):
            return 0
        return -1 if len(self.factors) % 2 else 1

    @property
    def phi(self) -> int:
        return math.prod((p - 1) * p ** (e - 1) for p, e in self.factors)

    @property
    def rad(self) -> int:
        return math.prod(p for p, _ in self.factors)

    @property
    def omega(self) -> int:
        return len(self.factors)


class MultFunctions(NamedTuple):
    tau: int
    mu: int
    phi: int
    rad: int
    omega: int


def mult_functions(n: int) -> MultFunctions:
    """한 번의 소인수분해로 τ, μ, φ, rad, ω 를 함께 계산"""
    if n < 1:
        raise PreconditionError("n >= 1")
    f = FactoredInteger.of(n)
    return MultFunctions(tau=f.tau, mu=f.mu, phi=f.phi, rad=f.rad, omega=f.omega)


def is_squarefree(n: int) -> bool:
    return n >= 1 and FactoredInteger.of(n).mu != 0


def von_mangoldt(n: int) -> float:
    """Λ(n) = log p (n = p^k), 그 외 0"""
    if n < 2:
        return 0.0
    factors = FactoredInteger.of(n).factors
    return math.log(factors[0][0]) if len(factors) == 1 else 0.0


def von_mangoldt_table(limit: int) -> np.ndarray:
    """0..limit 에 대한 Λ(n) 표 (소수 거듭제곱 위치에만 log p)"""
    table = np.zeros(max(limit, 0) + 1, dtype=np.float64)
    for p in sieve_primes(limit):
        log_p = math.log(p)
        pk = p
        while pk <= limit:
            table[pk] = log_p
            pk *= p
    return table


# =============================================================================
# 거듭제곱 판정 / 이산로그
# =============================================================================

def is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_power_of(n: int, g: int) -> bool:
    """n = g^k (k >= 0) 인지 - 1 = g^0 도 거듭제곱으로 본다"""
    if n < 1:
        return False
    value = 1
    while abs(value) <= n:
        if value == n:
            return True
        value *= g
    return False


def true_powers(g: int, limit: int) -> List[int]:
    """limit 이하의 양의 정수 거듭제곱 g^k (k >= 0), 오름차순"""
    if abs(g) < 2:
        raise PreconditionError("|g| >= 2")
    powers = []
    value = 1
    while abs(value) <= limit:
        if value > 0:
            powers.append(value)
        value *= g
    return sorted(powers)


class PowerClass(NamedTuple):
    is_square: bool
    is_g_power: bool


def classify_power(n: int, g: int) -> PowerClass:
    return PowerClass(is_square=is_perfect_square(n), is_g_power=is_power_of(n, g))


def discrete_log(p: int, root: int, n: int) -> int:
    """root^e ≡ n (mod p) 인 유일한 e ∈ [0, p-2]"""
    if not isprime(p):
        raise PreconditionError("p prime", f"p 는 소수여야 합니다: p={p}")
    if n % p == 0:
        raise PreconditionError("gcd(n, p) = 1", f"p={p} 가 n={n} 을 나눕니다")
    if not is_primitive_root(root % p, p):
        raise PreconditionError("root is a primitive root mod p", f"{root} 는 mod {p} 의 원시근이 아닙니다")
    if p == 2:
        return 0
    return int(sympy_discrete_log(p, n % p, root % p))
