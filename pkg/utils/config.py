# utils/config.py

import os
import sys
import logging
from dotenv import load_dotenv

load_dotenv()

# 열거 예산 설정 (기호/잉여 평가 횟수 기준)
DEFAULT_BUDGET = int(os.getenv("PSQ_BUDGET", 10**8))

# 세그먼트 스캔 설정
SEGMENT_SIZE = int(os.getenv("PSQ_SEGMENT_SIZE", 2**20))  # 한 세그먼트의 잉여류 개수
SEARCH_BOUND = int(os.getenv("PSQ_SEARCH_BOUND", 10**12))  # 최소 pseudosquare 탐색 상한
SCAN_LIMIT = int(os.getenv("PSQ_SCAN_LIMIT", 10**7))      # pigeonhole 소수 스캔 상한

# 병렬 처리 (구간 분할)
WORKERS = int(os.getenv("PSQ_WORKERS", 1))

# 소인수분해는 데스크 규모만 지원
FACTOR_LIMIT = int(os.getenv("PSQ_FACTOR_LIMIT", 10**12))

LOG_LEVEL = os.getenv("PSQ_LOG_LEVEL", "INFO")


def setup_logging(level=None):
    """CLI/앱 공통 로깅 설정 - stdout은 리포트 전용이므로 stderr로 출력"""
    logging.basicConfig(
        level=getattr(logging, (level or LOG_LEVEL).upper(), logging.INFO),
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr)
        ]
    )
    return logging.getLogger()
