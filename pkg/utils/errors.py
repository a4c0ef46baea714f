# utils/errors.py
"""도메인 예외 모음 - CLI 종료 코드와 1:1로 대응"""


class PreconditionError(ValueError):
    """입력이 연산의 전제조건을 만족하지 않음 (exit 2)"""

    def __init__(self, clause: str, message: str = ""):
        self.clause = clause
        super().__init__(message or f"전제조건 위반: {clause}")


class BudgetExceeded(RuntimeError):
    """열거 비용이 예산을 초과 (exit 3)"""

    def __init__(self, needed: int, remaining: int, what: str = ""):
        self.needed = needed
        self.remaining = remaining
        super().__init__(
            f"예산 초과{f' ({what})' if what else ''}: 필요 {needed}, 남은 예산 {remaining}"
        )


class SearchExhausted(RuntimeError):
    """탐색 상한/스캔 한도까지 결과를 찾지 못함 (exit 3)"""


class IdentityViolation(RuntimeError):
    """반드시 성립해야 하는 정확한 항등식이 깨짐 - 구현 버그 신호 (exit 1)"""
