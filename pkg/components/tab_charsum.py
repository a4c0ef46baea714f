# components/tab_charsum.py
import streamlit as st

from cli import RunConfig
from utils.ui_common_functions import run_command, show_report, window_inputs

ACTIONS = {
    "sum": "∑ S_(A,N) / Jacobi 지표합",
    "rf": "🧩 R_f (Möbius 전개)",
    "bounds": "📐 Pólya–Vinogradov / Graham–Ringrose 한계",
    "choose-r": "🎚️ r 선택",
}


def show_charsum_tab():
    """실수 지표합과 한계식 탭"""
    st.info("""
    ∑ **실수 지표합**

    - S_(A,N) 과 S̄_x 개수 항등식, f 별 R_f 기여, 원시 실수 지표 (n/q) 의 구간합
    - 한계식 값과 전제조건 검사, 정리별 r 선택 규칙
    """)

    col1, col2 = st.columns([1, 2])
    with col1:
        action = st.radio("작업 선택", list(ACTIONS), format_func=ACTIONS.get, key="cs_action")

    with col2:
        options = {}
        if action == "sum":
            use_q = st.checkbox("모듈러스 q 로 직접 합 (n/q)", key="cs_use_q")
            if use_q:
                options["q"] = int(st.number_input("q (홀수 무제곱)", min_value=3, value=15, step=2, key="cs_q"))
            else:
                options["x"] = int(st.number_input("x (기준값)", min_value=3, value=5, step=1, key="cs_x_sum"))
            options["window"] = window_inputs("cs_sum", default_len=10**4)
        elif action == "rf":
            options["x"] = int(st.number_input("x (기준값)", min_value=3, value=5, step=1, key="cs_x_rf"))
            options["f"] = int(st.number_input("f (M_2(x) 의 약수, > 1)", min_value=2, value=3, step=1, key="cs_f"))
            options["window"] = window_inputs("cs_rf", default_len=10**4)
        elif action == "bounds":
            options["x"] = int(st.number_input("x (기준값)", min_value=3, value=13, step=1, key="cs_x_b"))
            options["f"] = int(st.number_input("f", min_value=2, value=15015, step=1, key="cs_f_b"))
            options["window"] = window_inputs("cs_bounds", default_len=10**13)
            r = int(st.number_input("r (0 이면 자동 선택)", min_value=0, value=0, step=1, key="cs_r"))
            options["r"] = r or None
        elif action == "choose-r":
            # 큰 x 는 위젯 범위를 넘으므로 10 의 지수로 입력
            exponent = int(st.number_input("log10 x", min_value=1, value=44, step=1, key="cs_x_r"))
            options["x"] = 10 ** exponent
            options["variant"] = st.radio("규칙", ["theorem1", "theorem3"], horizontal=True, key="cs_variant")

    if st.button("▶️ 실행", key="cs_run", use_container_width=True):
        run_config = RunConfig(group="charsum", command=action, **options)
        st.session_state.cs_last = run_command(run_config)

    report = st.session_state.get("cs_last")
    if report is None:
        return

    outputs = report.outputs
    if report.command == "charsum bounds":
        if outputs["gr_failed_preconditions"]:
            st.warning(f"⚠️ Graham–Ringrose 전제조건 위반: {', '.join(outputs['gr_failed_preconditions'])}")
        elif outputs["gr"]["vacuous"]:
            st.warning("⚠️ 한계값이 N 이상 - 자명한 한계보다 약함")
    elif report.command == "charsum choose-r":
        st.metric("r", outputs["r"])
        if outputs["degenerate"]:
            st.caption("log log x <= 1: 규칙이 퇴화하여 r = 1")
    elif "value" in outputs:
        st.metric("합", outputs["value"])

    show_report(report, "cs")
