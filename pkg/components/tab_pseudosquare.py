# components/tab_pseudosquare.py
import streamlit as st

from cli import RunConfig
from utils.ui_common_functions import run_command, show_report, window_inputs

ACTIONS = {
    "search": "🔍 최소 pseudosquare N_x 탐색",
    "pigeonhole": "🕊️ 비둘기집 구성",
    "count": "📊 구간 개수 / 히스토그램",
    "verify-identity": "🧮 지표합 항등식 검증",
    "table": "📈 N_x 성장 표",
}


def show_pseudosquare_tab():
    """x-pseudosquare 탭"""
    st.info("""
    🟦 **x-pseudosquare**: n ≡ 1 (mod 8), 모든 홀수 소수 p <= x 에 대해 (n/p) = +1 이면서 제곱수가 아닌 n

    - N_x 탐색, Legendre 기호 벡터 충돌로 만드는 비둘기집 구성
    - 구간 (A, A+N] 의 정확한 개수와 밀도 모델 비교, 지표합 항등식 검증
    """)

    col1, col2 = st.columns([1, 2])
    with col1:
        action = st.radio("작업 선택", list(ACTIONS), format_func=ACTIONS.get, key="psq_action")
        x = st.number_input("x (기준값)", min_value=3, value=5, step=1, key="psq_x")

    with col2:
        options = {}
        if action == "pigeonhole":
            options["variant"] = "coprime" if st.checkbox("서로소 정수 스캔 (소수 대신)", key="psq_coprime") else None
            options["scan_limit"] = int(st.number_input("스캔 상한", min_value=10, value=10**6, step=1000, key="psq_scan"))
        elif action == "count":
            options["window"] = window_inputs("psq_count", default_len=10**5)
            options["bins"] = int(st.number_input("bin 개수", min_value=1, value=8, step=1, key="psq_bins"))
        elif action == "verify-identity":
            options["window"] = window_inputs("psq_verify", default_len=10**4)
            options["samples"] = int(st.number_input("임의 부분구간 개수", min_value=0, value=5, step=1, key="psq_samples"))
            options["seed"] = int(st.number_input("시드", min_value=0, value=0, step=1, key="psq_seed"))
        elif action == "table":
            st.caption("3 <= x' <= x 인 소수 x' 각각에 대해 N_x' 를 구합니다")

    if st.button("▶️ 실행", key="psq_run", use_container_width=True):
        run_config = RunConfig(group="psq", command=action, x=int(x), **options)
        st.session_state.psq_last = run_command(run_config)

    report = st.session_state.get("psq_last")
    if report is None:
        return

    outputs = report.outputs
    if report.command == "psq search":
        st.metric(f"N_{outputs['x']}", outputs["n"])
    elif report.command == "psq pigeonhole":
        c1, c2, c3 = st.columns(3)
        c1.metric("n = ℓ1·ℓ2", outputs["n"])
        c2.metric("인수", " × ".join(str(f) for f in outputs["factors"]))
        c3.metric("ℓ2 <= X", "예" if outputs["within_bound"] else "아니오")
    elif report.command == "psq count":
        c1, c2, c3 = st.columns(3)
        c1.metric("#S_x", outputs["count"])
        c2.metric("#S̄_x", outputs["count_closure"])
        c3.metric("모델 예측", f"{outputs['model_prediction']:.3f}")
        regime = outputs["notes"]["theorem_window"]
        if not regime["in_regime"]:
            st.caption(f"log N < 3x/log log x = {regime['log_threshold']:.2f}: 정리의 구간 크기에 못 미침")

    show_report(report, "psq")
