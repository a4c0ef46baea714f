# components/tab_export.py
import io
from datetime import datetime
from typing import List

import streamlit as st
import openpyxl
from openpyxl.styles import Alignment, Font, PatternFill

from utils.reports import Report, csv_cell

HEADER_FILL = PatternFill(start_color="366092", end_color="366092", fill_type="solid")
SECTION_FILL = PatternFill(start_color="D9E2F3", end_color="D9E2F3", fill_type="solid")


# =============================================================================
# 세션 리포트 관리
# =============================================================================

def init_session_state():
    """세션 상태 초기화"""
    if "saved_reports" not in st.session_state:
        st.session_state.saved_reports = []


def add_to_export(report: Report):
    """다른 탭에서 계산한 결과를 내보내기 목록에 추가"""
    init_session_state()
    st.session_state.saved_reports.append(report)
    st.toast(f"✅ '{report.command}' 결과를 내보내기 목록에 추가했습니다")


# =============================================================================
# Excel / CSV 생성
# =============================================================================

def _sheet_title(index: int, command: str) -> str:
    # 시트 이름은 31자 제한, 일부 문자 금지
    safe = "".join(c if c.isalnum() or c in (" ", "-", "_") else "_" for c in command)
    return f"{index}_{safe}"[:31]


def build_workbook(reports: List[Report]) -> bytes:
    """요약 시트 + 리포트별 시트로 된 xlsx 바이트"""
    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = "요약"
    ws.sheet_view.showGridLines = False

    ws['B1'] = "Pseudosquare Lab 계산 리포트"
    ws['B1'].font = Font(size=18, bold=True, color="FFFFFF")
    ws['B1'].fill = HEADER_FILL
    ws['B1'].alignment = Alignment(horizontal='center', vertical='center')
    ws.merge_cells('B1:F1')
    ws['B2'] = f"작성일: {datetime.now().strftime('%Y년 %m월 %d일')}"
    ws['B2'].alignment = Alignment(horizontal='right')
    ws.merge_cells('B2:F2')

    headers = ["#", "명령", "입력", "항등식 검사", "소요 시간(ms)"]
    for col, header in enumerate(headers, start=2):
        cell = ws.cell(row=4, column=col, value=header)
        cell.font = Font(bold=True)
        cell.fill = SECTION_FILL

    for i, report in enumerate(reports, start=1):
        passed = sum(c.passed for c in report.identity_checks)
        status = f"{passed}/{len(report.identity_checks)} 통과"
        row = [i, report.command, csv_cell(report.inputs), status, round(report.timing_ms, 3)]
        for col, value in enumerate(row, start=2):
            ws.cell(row=4 + i, column=col, value=value)

        detail = wb.create_sheet(_sheet_title(i, report.command))
        detail['A1'] = report.command
        detail['A1'].font = Font(size=14, bold=True)
        detail['A1'].fill = SECTION_FILL

        current_row = 3
        if report.table is not None:
            columns = list(report.table.columns)
            for col, name in enumerate(columns, start=1):
                detail.cell(row=current_row, column=col, value=str(name)).font = Font(bold=True)
            for values in report.table.itertuples(index=False):
                current_row += 1
                for col, value in enumerate(values, start=1):
                    detail.cell(row=current_row, column=col, value=csv_cell(value))
        else:
            for key, value in sorted(report.outputs.items()):
                detail.cell(row=current_row, column=1, value=key).font = Font(bold=True)
                detail.cell(row=current_row, column=2, value=csv_cell(value))
                current_row += 1

        current_row += 2
        for col, name in enumerate(["name", "lhs", "rhs", "pass"], start=1):
            detail.cell(row=current_row, column=col, value=name).font = Font(bold=True)
        for check in report.identity_checks:
            current_row += 1
            for col, value in enumerate(check.to_dict().values(), start=1):
                detail.cell(row=current_row, column=col, value=csv_cell(value))

    ws.column_dimensions['A'].width = 4
    ws.column_dimensions['B'].width = 6
    ws.column_dimensions['C'].width = 28
    ws.column_dimensions['D'].width = 60
    ws.column_dimensions['E'].width = 16
    ws.column_dimensions['F'].width = 16
    ws.row_dimensions[1].height = 40

    buffer = io.BytesIO()
    wb.save(buffer)
    return buffer.getvalue()


def build_csv_bundle(reports: List[Report]) -> str:
    """리포트들의 CSV 를 '# 명령' 줄로 구분해 이어붙임"""
    return "".join(f"# {report.command}\n{report.to_csv()}" for report in reports)


# =============================================================================
# 메인 함수
# =============================================================================

def show_export_tab():
    """리포트 내보내기 탭"""
    st.info("""
    📥 **계산 리포트 내보내기**

    - 각 탭에서 '내보내기 목록에 추가' 한 결과를 모아 Excel / CSV / JSON 으로 저장
    - JSON 은 CLI 출력과 같은 정규 형식 (정렬된 키, 큰 정수는 10진 문자열)
    """)
    init_session_state()
    reports = st.session_state.saved_reports

    if not reports:
        st.warning("⚠️ 아직 추가된 리포트가 없습니다.")
        return

    for i, report in enumerate(reports, start=1):
        icon = "✅" if report.all_passed else "❌"
        with st.expander(f"{icon} {i}. {report.command}"):
            st.code(report.to_json(), language="json")

    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    col1, col2, col3 = st.columns(3)
    with col1:
        st.download_button(
            "📊 Excel 다운로드",
            data=build_workbook(reports),
            file_name=f"pseudosquare_lab_{timestamp}.xlsx",
            mime="application/vnd.openxmlformats-officedocument.spreadsheetml.sheet",
            use_container_width=True,
        )
    with col2:
        st.download_button(
            "🧾 CSV 다운로드",
            data=build_csv_bundle(reports).encode("utf-8"),
            file_name=f"pseudosquare_lab_{timestamp}.csv",
            mime="text/csv",
            use_container_width=True,
        )
    with col3:
        st.download_button(
            "🗂️ JSON 다운로드",
            data=("[" + ",\n".join(r.to_json() for r in reports) + "]\n").encode("utf-8"),
            file_name=f"pseudosquare_lab_{timestamp}.json",
            mime="application/json",
            use_container_width=True,
        )

    if st.button("🗑️ 목록 비우기"):
        st.session_state.saved_reports = []
        st.rerun()
