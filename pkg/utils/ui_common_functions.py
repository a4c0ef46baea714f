# utils/ui_common_functions.py
"""
탭 공통 기능 모음
- RunConfig 실행 (캐시) 과 도메인 예외 표시
- 결과 payload / 표 / 항등식 검사 렌더링
"""
import logging
from typing import Optional

import pandas as pd
import streamlit as st

from cli import RunConfig, dispatch
from utils.errors import BudgetExceeded, IdentityViolation, PreconditionError, SearchExhausted
from utils.reports import Report, jsonable
from utils.windows import Window

logger = logging.getLogger(__name__)


@st.cache_data(ttl=3600, show_spinner=False)
def _run_cached(run_config: RunConfig) -> Report:
    report, _ = dispatch(run_config)
    return report


def run_command(run_config: RunConfig) -> Optional[Report]:
    """명령 실행 - 실패 시 오류 메시지를 표시하고 None 반환"""
    try:
        with st.spinner(f"⏳ {run_config.name} 계산 중..."):
            return _run_cached(run_config)
    except PreconditionError as e:
        st.error(f"❌ 입력 오류: {e}")
    except (BudgetExceeded, SearchExhausted) as e:
        st.warning(f"⚠️ 한도 초과: {e}")
    except IdentityViolation as e:
        logger.error(f"❌ 항등식 위반: {e}")
        st.error(f"❌ 항등식 위반: {e}")
    return None


def window_inputs(key: str, default_from: int = 0, default_len: int = 10**5) -> Window:
    """(A, A+N] 입력 위젯"""
    col1, col2 = st.columns(2)
    with col1:
        a = st.number_input("A (구간 시작, 열린 끝)", min_value=0, value=default_from, step=1, key=f"{key}_from")
    with col2:
        n_len = st.number_input("N (구간 길이)", min_value=0, value=default_len, step=1, key=f"{key}_len")
    return Window(int(a), int(n_len))


def show_identity_checks(report: Report):
    if not report.identity_checks:
        return
    frame = pd.DataFrame([jsonable(c.to_dict()) for c in report.identity_checks])
    if report.all_passed:
        st.success(f"✅ 항등식 검사 {len(report.identity_checks)}개 모두 통과")
    else:
        st.error("❌ 실패한 항등식 검사가 있습니다")
    st.dataframe(frame, use_container_width=True, hide_index=True)


def show_report(report: Report, key: str):
    """payload, 표, 항등식 검사, 내보내기 버튼"""
    from components.tab_export import add_to_export

    if report.table is not None:
        st.dataframe(report.table, use_container_width=True, hide_index=True)
    with st.expander("📄 JSON payload"):
        st.code(report.to_json(), language="json")
    show_identity_checks(report)
    st.caption(f"소요 시간: {report.timing_ms:.1f} ms")
    if st.button("📥 내보내기 목록에 추가", key=f"export_{key}"):
        add_to_export(report)
