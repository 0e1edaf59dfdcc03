"""有向グラフ族の生成器のテスト。"""

import os
from fractions import Fraction
from unittest.mock import patch

import pytest

from digraph_window_experiments_py.models.digraph import Window
from digraph_window_experiments_py.models.errors import (
    GeneratorParameterError,
    SizeCapError,
)
from digraph_window_experiments_py.models.generator import (
    GeneratorFamily,
    GeneratorSpec,
)
from digraph_window_experiments_py.services.digraph_ops import induced_subdigraph
from digraph_window_experiments_py.services.generators import (
    gen_desc_of_line,
    gen_DmM,
    gen_line_z,
    gen_random_layered_dag,
    gen_regular_tree,
    gen_rooted_out_tree,
    gen_sigma,
    generate,
    parse_edge_prob,
    sigma_component,
)


class TestGenDmM:
    """gen_DmMのテスト。"""

    def test_sizes(self, dmm_233: Window) -> None:
        """D(2, 3) の深さ 3 の窓は 120 頂点・234 辺になる。"""
        assert dmm_233.graph.vertex_count == 120
        assert dmm_233.graph.edge_count == 234
        assert len(dmm_233.interior) == 36

    def test_interior_valencies(self, dmm_233: Window) -> None:
        """内部頂点の外次数は m、内次数は m·C(M, m) に等しい。"""
        for v in dmm_233.interior:
            assert dmm_233.graph.out_degree(v) == 2
            assert dmm_233.graph.in_degree(v) == 6

    def test_levels_follow_edges(self, dmm_233: Window) -> None:
        """すべての辺でレベルが 1 増える。"""
        level = dmm_233.level
        assert level is not None
        assert all(level[v] == level[u] + 1 for u, v in dmm_233.graph.edges)

    def test_dmm_22_levels_are_complete_bipartite(self) -> None:
        """D(2, 2) の隣接する 2 レベルは K⃗_{2,2} を誘導する。"""
        w = gen_DmM(2, 2, 3)
        level = w.level
        assert level is not None
        for lv in range(3):
            upper = {v for v in w.graph.vertices if level[v] == lv}
            lower = {v for v in w.graph.vertices if level[v] == lv + 1}
            assert len(upper) == len(lower) == 2
            sub = induced_subdigraph(w.graph, upper | lower)
            assert sub.edges == {(u, v) for u in upper for v in lower}

    def test_meta(self, dmm_233: Window) -> None:
        """meta に生成パラメータを記録する。"""
        assert dmm_233.meta == {"family": "DmM", "m": 2, "M": 3, "levels": 3}

    def test_M_less_than_m(self) -> None:
        """M < m はエラーを発生させる。"""
        with pytest.raises(GeneratorParameterError, match="M < m"):
            gen_DmM(3, 2, 3)

    def test_m_zero(self) -> None:
        """m = 0 はエラーを発生させる。"""
        with pytest.raises(GeneratorParameterError):
            gen_DmM(0, 2, 3)

    def test_vertex_cap(self) -> None:
        """頂点数が上限を超える場合はエラーを発生させる。"""
        with pytest.raises(SizeCapError) as exc_info:
            gen_DmM(2, 3, 3, vertex_cap=100)
        assert exc_info.value.cap == 100

    def test_vertex_cap_from_env(self) -> None:
        """上限は環境変数 GENERATOR_VERTEX_CAP から読む。"""
        with patch.dict(os.environ, {"GENERATOR_VERTEX_CAP": "50"}):
            with pytest.raises(SizeCapError):
                gen_DmM(2, 3, 3)


class TestGenSigma:
    """gen_sigmaとsigma_componentのテスト。"""

    def test_sigma_2_3(self) -> None:
        """Σ(2, 3) は 9 個の始点と 3 個の終点を持つ。"""
        sigma = gen_sigma(2, 3)
        assert len(sigma.sources) == 9
        assert len(sigma.sinks) == 3
        assert sigma.graph.edge_count == 18
        for y in sigma.sinks:
            assert sigma.graph.in_degree(y) == 6
        for x in sigma.sources:
            assert sigma.graph.out_degree(x) == 2

    def test_edges_go_from_sources_to_sinks(self) -> None:
        """すべての辺は X から Y へ向かう。"""
        sigma = gen_sigma(2, 4)
        assert all(
            u in sigma.sources and v in sigma.sinks for u, v in sigma.graph.edges
        )

    def test_component_for_m_1_is_a_star(self) -> None:
        """m = 1 の成分は星 K⃗_{M,1} になる。"""
        star = sigma_component(1, 3)
        assert star.graph.vertex_count == 4
        assert star.graph.edge_count == 3
        assert len(star.sinks) == 1

    def test_component_for_m_2_is_everything(self) -> None:
        """m >= 2 の Σ(m, M) は連結である。"""
        assert sigma_component(2, 3).graph == gen_sigma(2, 3).graph


class TestTrees:
    """木の生成器のテスト。"""

    def test_rooted_out_tree(self) -> None:
        """二分木の深さ 4 は 31 頂点・30 辺になる。"""
        w = gen_rooted_out_tree(2, 4)
        assert w.graph.vertex_count == 31
        assert w.graph.edge_count == 30
        assert w.graph.in_degree(0) == 0
        assert len(w.interior) == 15

    def test_regular_tree(self) -> None:
        """外次数 1・内次数 2 の正則木の半径 2 の球は 10 頂点を持つ。"""
        w = gen_regular_tree(1, 2, 2)
        assert w.graph.vertex_count == 10
        assert w.graph.edge_count == 9
        assert len(w.interior) == 4
        for v in w.interior:
            assert w.graph.out_degree(v) == 1
            assert w.graph.in_degree(v) == 2

    def test_regular_tree_invalid_radius(self) -> None:
        """radius = 0 はエラーを発生させる。"""
        with pytest.raises(GeneratorParameterError):
            gen_regular_tree(1, 1, 0)


class TestLines:
    """直線とその子孫集合の生成器のテスト。"""

    def test_line_z(self) -> None:
        """両端以外が内部になる。"""
        w = gen_line_z(5)
        assert w.interior == frozenset({1, 2, 3})
        assert w.graph.edge_count == 4

    def test_line_z_too_short(self) -> None:
        """頂点数 1 はエラーを発生させる。"""
        with pytest.raises(GeneratorParameterError):
            gen_line_z(1)

    def test_desc_of_line_in_valency(self) -> None:
        """直線の子孫集合の内部頂点の内次数は m になる。"""
        w = gen_desc_of_line(2, 3, 3)
        assert w.graph.vertex_count == 8
        assert w.interior
        for v in w.interior:
            assert w.graph.in_degree(v) == 2

    def test_desc_of_line_when_M_equals_m(self) -> None:
        """M = m なら D(m, M) の窓全体に一致する。"""
        assert gen_desc_of_line(2, 2, 3).graph == gen_DmM(2, 2, 3).graph


class TestRandomLayeredDag:
    """gen_random_layered_dagのテスト。"""

    def test_deterministic(self) -> None:
        """同じ引数からは同じグラフになる。"""
        a = gen_random_layered_dag(4, 3, "1/2", 7)
        b = gen_random_layered_dag(4, 3, "1/2", 7)
        assert a.graph == b.graph
        assert a.level == b.level

    def test_full_probability(self) -> None:
        """確率 1 なら隣接層のすべての組が辺になる。"""
        w = gen_random_layered_dag(3, 2, "1", 0)
        assert w.graph.vertex_count == 6
        assert w.graph.edge_count == 8

    def test_no_isolated_vertices(self) -> None:
        """孤立頂点は除去される。"""
        for seed in range(20):
            w = gen_random_layered_dag(3, 3, "1/2", seed)
            for v in w.graph.vertices:
                assert w.graph.out_degree(v) + w.graph.in_degree(v) > 0

    def test_parse_edge_prob(self) -> None:
        """有理数文字列を解釈し、範囲外はエラーにする。"""
        assert parse_edge_prob("2/3") == Fraction(2, 3)
        with pytest.raises(GeneratorParameterError):
            parse_edge_prob("0")
        with pytest.raises(GeneratorParameterError):
            parse_edge_prob("half")


class TestGenerate:
    """generateのテスト。"""

    def test_spec_is_recorded(self) -> None:
        """生成パラメータを meta["generator"] に記録する。"""
        spec = GeneratorSpec(GeneratorFamily.DMM, {"m": 2, "M": 3, "levels": 3})
        w = generate(spec)
        assert w.graph.vertex_count == 120
        assert w.meta["generator"] == {
            "family": "DmM",
            "params": {"m": 2, "M": 3, "levels": 3},
        }

    def test_missing_parameter(self) -> None:
        """必要なパラメータが欠けている場合はエラーを発生させる。"""
        with pytest.raises(GeneratorParameterError, match="levels"):
            generate(GeneratorSpec(GeneratorFamily.DMM, {"m": 2, "M": 3}))

    def test_sigma_levels(self) -> None:
        """Σ(m, M) は始点をレベル 0、終点をレベル 1 とする。"""
        w = generate(GeneratorSpec(GeneratorFamily.SIGMA, {"m": 1, "M": 2}))
        assert w.level is not None
        assert sorted(set(w.level.values())) == [0, 1]
