"""設定管理モジュール。"""

from digraph_window_experiments_py.config.env_config import (
    get_env,
    get_generator_vertex_cap,
    get_iso_vertex_cap,
    get_log_level,
    get_sample_budget,
)

__all__ = [
    "get_env",
    "get_generator_vertex_cap",
    "get_iso_vertex_cap",
    "get_log_level",
    "get_sample_budget",
]
