# utils/windows.py
"""
반개구간 (A, A+N] 위의 열거 기반 구조
- Window: 임의 정밀도 끝점을 갖는 구간
- Progression: 구간 안의 등차수열 (예: n ≡ 1 mod 8) 과 세그먼트 분할
- Budget: 열거 비용 상한
- run_partitioned: 구간 분할 병렬 실행 (결과는 세그먼트 순서대로 병합)
"""
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Tuple, TypeVar

import numpy as np

from utils import config
from utils.errors import BudgetExceeded, PreconditionError

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class Window:
    """(a, a + n_len] 구간; n_len = 0 은 빈 구간"""
    a: int
    n_len: int

    def __post_init__(self):
        if self.a < 0:
            raise PreconditionError("A >= 0", f"구간 시작점은 0 이상이어야 합니다: A={self.a}")
        if self.n_len < 0:
            raise PreconditionError("N >= 0", f"구간 길이는 0 이상이어야 합니다: N={self.n_len}")

    @property
    def end(self) -> int:
        return self.a + self.n_len

    @property
    def is_empty(self) -> bool:
        return self.n_len == 0

    def __contains__(self, n: int) -> bool:
        return self.a < n <= self.end

    def __str__(self) -> str:
        return f"({self.a}, {self.end}]"

    def to_dict(self) -> dict:
        return {"from": str(self.a), "len": str(self.n_len)}

    def bin_edges(self, bins: int) -> List[Tuple[int, int]]:
        """bins 개의 정수 경계 (start, end] 목록 - 합집합이 정확히 구간 전체"""
        if bins < 1:
            raise PreconditionError("bins >= 1")
        cuts = [self.a + (b * self.n_len) // bins for b in range(bins + 1)]
        return list(zip(cuts[:-1], cuts[1:]))


def random_windows(outer: Window, count: int, seed: int = 0) -> List[Window]:
    """outer 안의 재현 가능한 임의 부분 구간 count 개"""
    if outer.is_empty:
        return []
    rng = np.random.default_rng(seed)
    windows = []
    for _ in range(count):
        start = int(rng.integers(0, outer.n_len))
        length = int(rng.integers(1, outer.n_len - start + 1))
        windows.append(Window(outer.a + start, length))
    return windows


@dataclass(frozen=True)
class Progression:
    """구간 안의 first, first + step, ... (terms 개)"""
    window: Window
    first: int
    step: int
    terms: int

    @classmethod
    def within(cls, window: Window, modulus: int = 1, residue: int = 0) -> "Progression":
        first = window.a + 1 + ((residue - window.a - 1) % modulus)
        terms = 0 if first > window.end else (window.end - first) // modulus + 1
        return cls(window=window, first=first, step=modulus, terms=terms)

    def chunks(self, segment_size: Optional[int] = None) -> List[Tuple[int, int]]:
        size = segment_size or config.SEGMENT_SIZE
        return [(j0, min(size, self.terms - j0)) for j0 in range(0, self.terms, size)]

    def residues(self, j: np.ndarray, p: int) -> np.ndarray:
        """각 항의 mod p 잉여 - 끝점이 int64 를 넘어도 잉여만 계산"""
        return ((self.first % p) + (self.step % p) * (j % p)) % p

    def values(self, j: np.ndarray) -> List[int]:
        """선택된 항의 실제 값 (임의 정밀도)"""
        return [self.first + self.step * int(k) for k in j]

    def offsets(self, j: np.ndarray) -> np.ndarray:
        """구간 시작점 a 로부터의 거리 (1..N)"""
        return (self.first - self.window.a) + self.step * j

    def bin_index(self, j: np.ndarray, bins: int) -> np.ndarray:
        """각 항이 속한 bin 번호 - Window.bin_edges 와 같은 경계"""
        o = self.offsets(j)
        n_len = self.window.n_len
        return (o * bins + n_len - 1) // n_len - 1


class Budget:
    """열거 비용 상한 - 열거 전에 전체 비용을 한 번에 차감"""

    def __init__(self, limit: Optional[int] = None):
        self.limit = config.DEFAULT_BUDGET if limit is None else int(limit)
        self.used = 0
        self._lock = threading.Lock()

    @property
    def remaining(self) -> int:
        return self.limit - self.used

    def charge(self, cost: int, what: str = "") -> None:
        with self._lock:
            if cost > self.remaining:
                logger.warning(f"⚠️ 예산 거부 ({what}): 필요 {cost}, 남은 예산 {self.remaining}")
                raise BudgetExceeded(cost, self.remaining, what)
            self.used += cost


def ensure_budget(budget: Optional[Budget]) -> Budget:
    return budget if budget is not None else Budget()


def run_partitioned(
    func: Callable[[np.ndarray], T],
    progression: Progression,
    segment_size: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[T]:
    """세그먼트마다 func(j) 를 실행하고 세그먼트 순서대로 결과 반환"""
    chunks = progression.chunks(segment_size)
    workers = workers or config.WORKERS

    def _run(chunk: Tuple[int, int]) -> T:
        j0, count = chunk
        return func(np.arange(j0, j0 + count, dtype=np.int64))

    if workers <= 1 or len(chunks) <= 1:
        return [_run(chunk) for chunk in chunks]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_run, chunks))


def iter_blocks(start: int, stop: int, segment_size: Optional[int] = None) -> Iterator[np.ndarray]:
    """[start, stop) 정수를 세그먼트 배열로 순서대로 생성 (탐색용)"""
    size = segment_size or config.SEGMENT_SIZE
    for lo in range(start, stop, size):
        yield np.arange(lo, min(lo + size, stop), dtype=np.int64)
