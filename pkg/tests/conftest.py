"""テスト共通のフィクスチャ。"""

import pytest

from digraph_window_experiments_py.models.digraph import Window
from digraph_window_experiments_py.services.descent import descendant_window
from digraph_window_experiments_py.services.generators import (
    gen_DmM,
    gen_rooted_out_tree,
)
from tests.graph_helpers import whole


@pytest.fixture
def dmm_233() -> Window:
    """D(2, 3) の深さ 3 の窓（120 頂点）。"""
    return gen_DmM(2, 3, 3)


@pytest.fixture
def binary_tree_descent() -> Window:
    """二分木の深さ 4 の子孫窓。"""
    return descendant_window(gen_rooted_out_tree(2, 5), 0, 4)


@pytest.fixture
def conflict_window() -> Window:
    """a→b, a→c, c→d, d→b（a=0, b=1, c=2, d=3）。性質 Z を持たない。"""
    return whole(4, [(0, 1), (0, 2), (2, 3), (3, 1)])


@pytest.fixture
def universality_window() -> Window:
    """a→b, a→c, c→b, b→d（a=0, b=1, c=2, d=3）。"""
    return whole(4, [(0, 1), (0, 2), (2, 1), (1, 3)])
