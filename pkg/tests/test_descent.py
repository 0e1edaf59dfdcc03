"""子孫集合と層プロファイルのテスト。"""

from collections.abc import Callable

import pytest

from digraph_window_experiments_py.models.digraph import Window
from digraph_window_experiments_py.models.errors import (
    DigraphError,
    UnknownVertexError,
    WindowTooSmallError,
)
from digraph_window_experiments_py.models.profile import P3Status
from digraph_window_experiments_py.services.descent import (
    anc_s,
    desc_s,
    descendant_window,
    layer_profile,
    layers_of,
    reach_within,
    root_of,
)
from digraph_window_experiments_py.services.generators import (
    gen_line_z,
    gen_rooted_out_tree,
)
from tests.graph_helpers import (
    ORACLE_SEEDS,
    arc_endpoints,
    dmm_descent,
    random_digraph,
    whole,
)


class TestDescS:
    """desc_sとanc_sのテスト。"""

    def test_tree_descendants(self) -> None:
        """二分木の根から長さ 2 で孫に到達する。"""
        w = gen_rooted_out_tree(2, 4)
        result = desc_s(w, 0, 2)
        assert result.vertices == frozenset({3, 4, 5, 6})
        assert not result.window_limited

    def test_zero_length(self) -> None:
        """s = 0 なら u 自身を返す。"""
        w = gen_rooted_out_tree(2, 2)
        assert desc_s(w, 1, 0).vertices == frozenset({1})

    def test_window_limited(self) -> None:
        """境界頂点を通過したら window_limited を立てる。"""
        result = desc_s(gen_line_z(5), 3, 2)
        assert result.vertices == frozenset()
        assert result.window_limited

    def test_s_arc_forbids_immediate_return(self) -> None:
        """0→1→0 は s-弧ではない。"""
        w = whole(2, [(0, 1), (1, 0)])
        assert desc_s(w, 0, 2).vertices == frozenset()

    def test_ancestors(self) -> None:
        """祖先方向にも同じようにたどる。"""
        w = gen_rooted_out_tree(2, 4)
        assert anc_s(w, 3, 2).vertices == frozenset({0})

    def test_negative_length(self) -> None:
        """負の s はエラーを発生させる。"""
        with pytest.raises(DigraphError):
            desc_s(gen_line_z(3), 0, -1)

    def test_unknown_vertex(self) -> None:
        """存在しない頂点はエラーを発生させる。"""
        with pytest.raises(UnknownVertexError):
            desc_s(gen_line_z(3), 9, 1)


class TestArcEnumeration:
    """desc_s・anc_s と s-弧の列挙の比較。"""

    def test_corpus_has_cycles(self) -> None:
        """比較に使う乱択有向グラフには 2-閉路を含むものがある。"""
        graphs = [random_digraph(seed).graph for seed in ORACLE_SEEDS]
        assert any((v, u) in g.edges for g in graphs for u, v in g.edges)

    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_matches_arc_enumeration(self, s: int) -> None:
        """閉路を含む乱択有向グラフで、列挙した s-弧の終点と一致する。"""
        for seed in ORACLE_SEEDS:
            w = random_digraph(seed)
            for u in w.graph.sorted_vertices():
                forward = desc_s(w, u, s)
                backward = anc_s(w, u, s)
                expected = arc_endpoints(w.graph, u, s)
                assert forward.vertices == expected, f"seed={seed}, u={u}"
                expected = arc_endpoints(w.graph, u, s, forward=False)
                assert backward.vertices == expected, f"seed={seed}, u={u}"
                assert not forward.window_limited
                assert not backward.window_limited



class TestDescendantWindow:
    """descendant_windowのテスト。"""

    def test_layers_and_meta(self, binary_tree_descent: Window) -> None:
        """層を meta に記録し、根と深さを取り出せる。"""
        assert root_of(binary_tree_descent) == 0
        layers = layers_of(binary_tree_descent)
        assert [len(layer) for layer in layers] == [1, 2, 4, 8, 16]
        assert binary_tree_descent.level is not None

    def test_dmm_layers_are_complete_bipartite(self) -> None:
        """D(2, 3) の深さ 3 の子孫窓では、層 1 以降の隣接層間が K⃗_{2,2} になる。"""
        gamma = dmm_descent(2, 3, 4, 3)
        layers = layers_of(gamma)
        assert [len(layer) for layer in layers] == [1, 2, 2, 2]
        for upper, lower in zip(layers[1:], layers[2:], strict=False):
            edges = {(u, v) for u, v in gamma.graph.edges if u in upper}
            assert edges == {(u, v) for u in upper for v in lower}

    def test_window_too_small(self) -> None:
        """深さ d 未満の層に境界頂点があればエラーを発生させる。"""
        with pytest.raises(WindowTooSmallError) as exc_info:
            descendant_window(gen_rooted_out_tree(2, 2), 0, 3)
        assert exc_info.value.depth == 2

    def test_depth_zero(self) -> None:
        """深さ 0 はエラーを発生させる。"""
        with pytest.raises(DigraphError):
            descendant_window(gen_rooted_out_tree(2, 2), 0, 0)

    def test_plain_window_has_no_root(self) -> None:
        """子孫窓でない窓から根は取り出せない。"""
        with pytest.raises(DigraphError):
            root_of(gen_line_z(3))

    def test_reach_within(self) -> None:
        """有向パスで到達できる頂点を返す。"""
        w = gen_rooted_out_tree(2, 2)
        assert reach_within(w.graph, [1]) == frozenset({1, 3, 4})
        assert reach_within(w.graph, [4], forward=False) == frozenset({0, 1, 4})


class TestLayerProfile:
    """layer_profileのテスト。"""

    def test_binary_tree(self) -> None:
        """二分木は層サイズが倍増し、内次数はすべて 1 になる。"""
        gamma = descendant_window(gen_rooted_out_tree(2, 5), 0, 5)
        profile = layer_profile(gamma)
        assert profile.layer_sizes == (1, 2, 4, 8, 16, 32)
        assert profile.in_valencies == (1, 1, 1, 1, 1)
        assert profile.out_valency == 2
        assert profile.N == 1
        assert profile.r_N == 1
        assert profile.p3.status == P3Status.HOLDS_TO_DEPTH

    def test_dmm_fails_p3(self) -> None:
        """D(2, 3) の子孫窓は層サイズが 2 で止まり、P3 は 2 で破れる。"""
        profile = layer_profile(dmm_descent(2, 3, 4))
        assert profile.layer_sizes == (1, 2, 2, 2)
        assert profile.in_valencies == (1, 2, 2)
        assert profile.N is None
        assert profile.p3.status == P3Status.FAILS_AT
        assert profile.p3.index == 2

    def test_dmm_stabilization(self) -> None:
        """窓が十分深ければ N = 2, r_N = 2 を確定できる。"""
        profile = layer_profile(dmm_descent(2, 3, 5))
        assert profile.in_valencies == (1, 2, 2, 2)
        assert profile.N == 2
        assert profile.r_N == 2
        assert profile.r(2) == 2

    def test_in_valency_refutation(self) -> None:
        """同一層で内次数が異なれば反証を記録して打ち切る。"""
        w = whole(5, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4)])
        gamma = descendant_window(w, 0, 2)
        profile = layer_profile(gamma)
        assert profile.refutation is not None
        assert profile.refutation.layer == 2
        assert profile.refutation.valencies == {3: 2, 4: 1}
        assert profile.in_valencies == (1,)
        assert profile.N is None

    def test_empty_layer_is_not_a_refutation(self) -> None:
        """子孫のない根や途中で空になる層は反証にしない。"""
        profile = layer_profile(descendant_window(whole(2, [(1, 0)]), 0, 1))
        assert profile.layer_sizes == (1, 0)
        assert profile.in_valencies == ()
        assert profile.refutation is None
        profile = layer_profile(descendant_window(whole(3, [(0, 1)]), 0, 2))
        assert profile.layer_sizes == (1, 1, 0)
        assert profile.in_valencies == (1,)
        assert profile.refutation is None

    @pytest.mark.parametrize(
        "gamma_factory",
        [
            lambda: dmm_descent(2, 3, 5),
            lambda: dmm_descent(1, 2, 5),
            lambda: dmm_descent(2, 4, 4),
            lambda: descendant_window(gen_rooted_out_tree(3, 4), 0, 4),
        ],
    )
    def test_counting_identity(self, gamma_factory: Callable[[], Window]) -> None:
        """|Γ^i|·m = |Γ^{i+1}|·r_{i+1} が成り立つ。"""
        profile = layer_profile(gamma_factory())
        m = profile.out_valency
        sizes = profile.layer_sizes
        for i, r in enumerate(profile.in_valencies):
            assert sizes[i] * m == sizes[i + 1] * r
