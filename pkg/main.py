# main.py
import streamlit as st

from utils import config

# 페이지 기본 설정
st.set_page_config(page_title="Pseudosquare Lab", page_icon="🔢", layout="wide")
config.setup_logging()

# CSS 스타일
st.markdown("""
<style>
html, body, [class*="css"] {
  font-size: 18px !important;
}

h1, h2, h3, h4 {
  font-weight: bold !important;
}

.main-header {
  text-align: center;
  padding: 1.5rem 0;
  border-radius: 10px;
  margin-bottom: 2rem;
  background: #366092;
  color: #FFFFFF;
}

.main-title {
  font-size: 3rem;
  font-weight: 800;
}
</style>
""", unsafe_allow_html=True)

# 헤더 표시
st.markdown("""
<div class="main-header">
    <div class="main-title">Pseudosquare Lab</div>
</div>
""", unsafe_allow_html=True)

# 탭 상태 초기화
if 'active_tab' not in st.session_state:
    st.session_state.active_tab = 'pseudosquare'

# 탭 정의
tabs = {'pseudosquare': '🟦 x-pseudosquare',
        'pseudopower': '🟪 x-pseudopower',
        'charsum': '∑ 지표합 / 한계식',
        'export': '📥 리포트 내보내기'}

# 탭 버튼 생성
cols = st.columns(len(tabs))
for i, (tab_key, tab_name) in enumerate(tabs.items()):
    with cols[i]:
        if st.button(tab_name, key=f"tab_{tab_key}", use_container_width=True):
            st.session_state.active_tab = tab_key
            st.rerun()

# 탭 내용 표시
if st.session_state.active_tab == 'pseudosquare':
    from components.tab_pseudosquare import show_pseudosquare_tab
    show_pseudosquare_tab()

elif st.session_state.active_tab == 'pseudopower':
    from components.tab_pseudopower import show_pseudopower_tab
    show_pseudopower_tab()

elif st.session_state.active_tab == 'charsum':
    from components.tab_charsum import show_charsum_tab
    show_charsum_tab()

elif st.session_state.active_tab == 'export':
    from components.tab_export import show_export_tab
    show_export_tab()
