# utils/reports.py
"""
리포트 타입과 직렬화
- IdentityCheck: (이름, 좌변, 우변, 통과 여부)
- CountReport: 구간 개수 + 모델 예측 + bin 히스토그램
- Report: CLI 한 번 실행의 결과 (입력 echo, payload, 항등식 검사, 소요 시간)
JSON 은 정렬된 키 + 큰 정수는 10진 문자열 (53비트 절단 방지)
"""
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from utils.windows import Window

Number = Union[int, float]


def jsonable(value: Any) -> Any:
    """정수는 10진 문자열로, 나머지는 JSON 호환 값으로 변환"""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    return str(value)


def canonical_json(payload: Any) -> str:
    """다시 파싱 후 재직렬화해도 바이트 단위로 같은 JSON"""
    return json.dumps(jsonable(payload), ensure_ascii=False, indent=2, sort_keys=True)


def csv_cell(value: Any) -> Any:
    """CSV 셀 값 - jsonable 변환 후 dict/list (복소수 포함) 는 JSON 문자열로"""
    value = jsonable(value)
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    return value


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: Any
    rhs: Any
    passed: bool

    @classmethod
    def exact(cls, name: str, lhs: int, rhs: int) -> "IdentityCheck":
        return cls(name=name, lhs=lhs, rhs=rhs, passed=lhs == rhs)

    @classmethod
    def close(cls, name: str, lhs: Number, rhs: Number, tolerance: float) -> "IdentityCheck":
        return cls(name=name, lhs=lhs, rhs=rhs, passed=abs(lhs - rhs) <= tolerance)

    @classmethod
    def at_most(cls, name: str, lhs: Number, bound: float) -> "IdentityCheck":
        # 정수 좌변과 올림한 우변 비교 - 반올림 때문에 거짓 실패가 나지 않도록
        return cls(name=name, lhs=lhs, rhs=bound, passed=lhs <= math.nextafter(bound, math.inf))

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


@dataclass(frozen=True)
class HistogramBin:
    start: int  # 열린 끝
    end: int    # 닫힌 끝
    count: int
    model: float

    def to_dict(self) -> dict:
        return {"bin_start": self.start, "bin_end": self.end, "count": self.count, "model": self.model}


@dataclass
class CountReport:
    """구간 (A, A+N] 에 대한 정확한 개수, 모델 예측, 히스토그램"""
    kind: str
    x: int
    window: Window
    count: int
    count_closure: int
    model_density: float
    bins: List[HistogramBin]
    g: Optional[int] = None
    identity_checks: List[IdentityCheck] = field(default_factory=list)
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def model_prediction(self) -> float:
        return self.window.n_len * self.model_density

    @property
    def model_ratio(self) -> Optional[float]:
        prediction = self.model_prediction
        return self.count / prediction if prediction > 0 else None

    def histogram_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [b.to_dict() for b in self.bins],
            columns=["bin_start", "bin_end", "count", "model"],
        )

    def to_csv(self) -> str:
        frame = self.table if self.table is not None else pd.DataFrame(
            [{"field": k, "value": v} for k, v in sorted(self.outputs.items())],
            columns=["field", "value"],
        )
        frame = frame.apply(lambda col: col.map(csv_cell))
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, lineterminator="\n")
        return buffer.getvalue()
