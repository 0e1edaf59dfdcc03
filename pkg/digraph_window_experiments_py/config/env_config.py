"""環境変数の設定と読み込みを行うモジュール。"""

import os
from pathlib import Path

from dotenv import load_dotenv

# プロジェクトルートディレクトリを取得
# (config/から2階層上がプロジェクトルート)
PROJECT_ROOT = Path(__file__).parent.parent.parent

# .envファイルを読み込む
load_dotenv(PROJECT_ROOT / ".env")

DEFAULT_ISO_VERTEX_CAP = 64
DEFAULT_SAMPLE_BUDGET = 32
DEFAULT_GENERATOR_VERTEX_CAP = 200_000
DEFAULT_LOG_LEVEL = "WARNING"


def get_env(key: str, default: str | None = None) -> str | None:
    """
    環境変数を取得する。

    Args:
        key: 環境変数のキー
        default: デフォルト値（環境変数が存在しない場合）

    Returns:
        環境変数の値、またはデフォルト値
    """
    return os.getenv(key, default)


def _get_int_env(key: str, default: int) -> int:
    """
    整数値の環境変数を取得する。

    Args:
        key: 環境変数のキー
        default: デフォルト値

    Returns:
        整数値

    Raises:
        ValueError: 値が正の整数として解釈できない場合
    """
    raw = get_env(key)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ValueError(f"{key}の形式が不正です（整数を指定）: {raw}") from e
    if value < 1:
        raise ValueError(f"{key}は1以上の整数を指定してください: {raw}")
    return value


def get_iso_vertex_cap(default: int = DEFAULT_ISO_VERTEX_CAP) -> int:
    """
    同型・自己同型探索の頂点数上限を取得する。

    Args:
        default: デフォルト値

    Returns:
        DIGRAPH_ISO_CAP の値
    """
    return _get_int_env("DIGRAPH_ISO_CAP", default)


def get_sample_budget(default: int = DEFAULT_SAMPLE_BUDGET) -> int:
    """
    P1 検査でサンプリングする根の数を取得する。

    Args:
        default: デフォルト値

    Returns:
        P1_SAMPLE_BUDGET の値
    """
    return _get_int_env("P1_SAMPLE_BUDGET", default)


def get_generator_vertex_cap(default: int = DEFAULT_GENERATOR_VERTEX_CAP) -> int:
    """
    生成器が構築してよい頂点数の上限を取得する。

    Args:
        default: デフォルト値

    Returns:
        GENERATOR_VERTEX_CAP の値
    """
    return _get_int_env("GENERATOR_VERTEX_CAP", default)


def get_log_level(default: str = DEFAULT_LOG_LEVEL) -> str:
    """
    ログレベルを取得する。

    Args:
        default: デフォルトのログレベル

    Returns:
        ログレベル名（大文字）
    """
    result = get_env("DIGRAPH_LOG_LEVEL", default)
    return (result if result else default).upper()
