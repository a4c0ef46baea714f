# components/tab_pseudopower.py
import streamlit as st

from cli import RunConfig
from utils.ui_common_functions import run_command, show_report, window_inputs

ACTIONS = {
    "profile": "🧾 위수 / 지수 프로파일",
    "search": "🔍 최소 pseudopower 탐색",
    "count": "📊 구간 개수 / 히스토그램",
    "verify-identity": "🧮 주기 개수 · P_(A,N) 검증",
    "weighted-sum": "⚖️ 가중합 S_g",
    "table": "📈 q_g(x) 성장 표",
}


def show_pseudopower_tab():
    """x-pseudopower 탭"""
    st.info("""
    🟪 **x-pseudopower (밑 g)**: g 의 정수 거듭제곱이 아니면서 모든 소수 p <= x 에 대해 mod p 로 g 의 거듭제곱인 양의 정수

    - l_g(p), i_g(p), I_g(x) 프로파일과 q_g(x), p_g(x) 탐색
    - 주기 (0, M(x)] 정확한 개수, 위수 지표를 이용한 항등식 검증
    """)

    col1, col2 = st.columns([1, 2])
    with col1:
        action = st.radio("작업 선택", list(ACTIONS), format_func=ACTIONS.get, key="ppw_action")
        g = st.number_input("g (밑, |g| >= 2)", value=2, step=1, key="ppw_g")
        x = st.number_input("x (기준값)", min_value=2, value=7, step=1, key="ppw_x")

    with col2:
        options = {}
        if action == "search":
            options["variant"] = st.radio("변형", ["q_g", "p_g"], horizontal=True, key="ppw_variant")
        elif action == "count":
            options["window"] = window_inputs("ppw_count", default_len=30030)
            options["bins"] = int(st.number_input("bin 개수", min_value=1, value=8, step=1, key="ppw_bins"))
        elif action == "verify-identity":
            options["samples"] = int(st.number_input("임의 부분구간 개수", min_value=0, value=5, step=1, key="ppw_samples"))
            options["seed"] = int(st.number_input("시드", min_value=0, value=0, step=1, key="ppw_seed"))
        elif action == "table":
            st.caption("2 <= x' <= x 인 소수 x' 각각에 대해 q_g(x'), p_g(x') 를 구합니다")

    if st.button("▶️ 실행", key="ppw_run", use_container_width=True):
        run_config = RunConfig(group="ppw", command=action, g=int(g), x=int(x), **options)
        st.session_state.ppw_last = run_command(run_config)

    report = st.session_state.get("ppw_last")
    if report is None:
        return

    outputs = report.outputs
    if report.command == "ppw profile":
        c1, c2 = st.columns(2)
        c1.metric("I_g(x)", outputs["I_g"])
        c2.metric("∏ l_g(p)", outputs["L_g"])
    elif report.command == "ppw search":
        variant = outputs["variant"]
        c1, c2 = st.columns(2)
        c1.metric(f"{variant}({outputs['x']})", outputs[variant])
        c2.metric("자명한 한계 2M(x)+1", outputs["trivial_bound"])
    elif report.command == "ppw count":
        c1, c2, c3 = st.columns(3)
        c1.metric("#P_x", outputs["count"])
        c2.metric("#P̄_x", outputs["count_closure"])
        c3.metric("모델 예측", f"{outputs['model_prediction']:.3f}")
    elif report.command == "ppw weighted-sum":
        c1, c2 = st.columns(2)
        c1.metric("S_g", f"{outputs['value'].real:.9f}")
        c2.metric("I_g(x)·ΣΛ", f"{outputs['identity_rhs']:.9f}")

    show_report(report, "ppw")
