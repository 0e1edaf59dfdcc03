"""同型・自己同型探索のテスト。"""

import random
from itertools import permutations

import pytest

from digraph_window_experiments_py.models.digraph import Digraph, Window
from digraph_window_experiments_py.models.errors import SizeCapError
from digraph_window_experiments_py.services.descent import descendant_window
from digraph_window_experiments_py.services.digraph_ops import (
    build_digraph,
    relabel_dense,
)
from digraph_window_experiments_py.services.generators import gen_rooted_out_tree
from digraph_window_experiments_py.services.symmetry import (
    automorphism_orbits,
    check_distance_transitive,
    check_edge_transitive,
    is_isomorphic,
    layer_transitivity_diagnostic,
)
from tests.graph_helpers import (
    ORACLE_SEEDS,
    directed_cycle,
    directed_path,
    dmm_descent,
    doubled_complete,
    oracle_dag,
)

# 全置換を列挙するオラクルの頂点数の上限
BRUTE_FORCE_LIMIT = 7


def brute_automorphisms(g: Digraph) -> list[dict[int, int]]:
    vertices = g.sorted_vertices()
    result = []
    for image in permutations(vertices):
        mapping = dict(zip(vertices, image, strict=True))
        if {(mapping[u], mapping[v]) for u, v in g.edges} == g.edges:
            result.append(mapping)
    return result


def brute_isomorphic(g1: Digraph, g2: Digraph) -> bool:
    if g1.vertex_count != g2.vertex_count:
        return False
    vertices = g1.sorted_vertices()
    for image in permutations(g2.sorted_vertices()):
        mapping = dict(zip(vertices, image, strict=True))
        if {(mapping[u], mapping[v]) for u, v in g1.edges} == g2.edges:
            return True
    return False


def orbit_sets(
    autos: list[dict[int, int]], items: list[tuple[int, ...]]
) -> set[frozenset[tuple[int, ...]]]:
    return {
        frozenset(tuple(a[x] for x in item) for a in autos) for item in items
    }


def small_oracle_graphs() -> list[tuple[int, Digraph]]:
    graphs = [(seed, oracle_dag(seed).graph) for seed in ORACLE_SEEDS]
    return [(seed, g) for seed, g in graphs if g.vertex_count <= BRUTE_FORCE_LIMIT]


def shuffled(g: Digraph, seed: int) -> Digraph:
    vertices = g.sorted_vertices()
    image = vertices[:]
    random.Random(seed).shuffle(image)
    mapping = dict(zip(vertices, image, strict=True))
    return build_digraph(g.vertex_count, [(mapping[u], mapping[v]) for u, v in g.edges])


class TestIsIsomorphic:
    """is_isomorphicのテスト。"""

    def test_cycle_vs_two_cycles(self) -> None:
        """有向 4-サイクルと 2-サイクル 2 個は同型ではない。"""
        two_cycles = build_digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
        assert not is_isomorphic(directed_cycle(4), two_cycles).isomorphic

    def test_mapping_is_an_isomorphism(self) -> None:
        """返す写像は辺集合を保つ。"""
        g = directed_cycle(5)
        h = shuffled(g, 3)
        result = is_isomorphic(g, h)
        assert result.mapping is not None
        assert {(result.mapping[u], result.mapping[v]) for u, v in g.edges} == h.edges

    def test_pinned_roots(self) -> None:
        """根を対応させると、パスの始点は始点にだけ対応する。"""
        path = directed_path(4)
        assert is_isomorphic(path, path, roots=(0, 0)).isomorphic
        assert not is_isomorphic(path, path, roots=(0, 1)).isomorphic

    def test_levels_are_preserved(self) -> None:
        """レベルを保つ写像だけを探す。"""
        g = build_digraph(3, [(0, 1), (0, 2)])
        same = ({0: 0, 1: 1, 2: 1}, {0: 0, 1: 1, 2: 1})
        assert is_isomorphic(g, g, levels=same).isomorphic
        shifted = ({0: 0, 1: 1, 2: 1}, {0: 1, 1: 2, 2: 2})
        assert not is_isomorphic(g, g, levels=shifted).isomorphic

    def test_size_cap(self) -> None:
        """上限を超える頂点数はエラーを発生させる。"""
        with pytest.raises(SizeCapError):
            is_isomorphic(directed_cycle(10), directed_cycle(10), cap=8)

    def test_matches_permutation_oracle(self) -> None:
        """乱択 DAG の組で、全置換の列挙と判定が一致する。"""
        graphs = small_oracle_graphs()
        for (seed1, g1), (seed2, g2) in zip(graphs, graphs[1:], strict=False):
            g1_dense, _ = relabel_dense(g1)
            g2_dense, _ = relabel_dense(g2)
            expected = brute_isomorphic(g1_dense, g2_dense)
            actual = is_isomorphic(g1_dense, g2_dense).isomorphic
            assert actual == expected, f"seeds={seed1},{seed2}"
            assert is_isomorphic(g1, shuffled(g1, seed1)).isomorphic


class TestAutomorphismOrbits:
    """automorphism_orbitsのテスト。"""

    def test_generators_are_automorphisms(self) -> None:
        """生成元はすべて自己同型である。"""
        g = doubled_complete(4)
        orbits = automorphism_orbits(g)
        assert orbits.generators
        for generator in orbits.generators:
            assert {(generator[u], generator[v]) for u, v in g.edges} == g.edges

    def test_matches_permutation_oracle(self) -> None:
        """頂点数 7 以下の乱択 DAG で、全置換から求めた軌道と一致する。"""
        for seed, g in small_oracle_graphs():
            autos = brute_automorphisms(g)
            orbits = automorphism_orbits(g)
            expected_vertices = orbit_sets(autos, [(v,) for v in g.sorted_vertices()])
            actual_vertices = {
                frozenset((v,) for v in cls) for cls in orbits.vertex_orbits.classes
            }
            assert actual_vertices == expected_vertices, f"seed={seed}"
            expected_edges = orbit_sets(autos, g.sorted_edges())
            assert set(orbits.edge_orbits.classes) == expected_edges, f"seed={seed}"

    def test_colors_split_orbits(self) -> None:
        """頂点色を保つ自己同型だけを使う。"""
        g = directed_cycle(4)
        orbits = automorphism_orbits(g, vertex_colors={0: "a", 1: "b", 2: "b", 3: "b"})
        assert orbits.vertex_orbits.is_trivial()


class TestTransitivity:
    """辺推移性・距離推移性のテスト。"""

    @pytest.mark.parametrize("n", range(2, 9))
    def test_cycles_are_distance_transitive(self, n: int) -> None:
        """有向サイクルは距離推移的である。"""
        assert check_distance_transitive(directed_cycle(n))

    @pytest.mark.parametrize("n", range(2, 6))
    def test_doubled_complete_is_distance_transitive(self, n: int) -> None:
        """両向きの完全グラフは距離推移的である。"""
        assert check_distance_transitive(doubled_complete(n))

    @pytest.mark.parametrize("n", range(3, 7))
    def test_paths_are_not_distance_transitive(self, n: int) -> None:
        """パスは距離推移的ではない。"""
        assert not check_distance_transitive(directed_path(n))

    def test_distance_transitive_implies_edge_transitive(self) -> None:
        """距離推移的なら辺推移的である。"""
        for seed, g in small_oracle_graphs():
            dense, _ = relabel_dense(g)
            if check_distance_transitive(dense):
                assert check_edge_transitive(dense), f"seed={seed}"

    def test_edge_transitive_star(self) -> None:
        """星は辺推移的、パスは辺推移的ではない。"""
        star = build_digraph(4, [(1, 0), (2, 0), (3, 0)])
        assert check_edge_transitive(star)
        assert not check_edge_transitive(directed_path(3))

    def test_edgeless_graph(self) -> None:
        """辺のないグラフは辺推移的とみなす。"""
        assert check_edge_transitive(build_digraph(3, []))


class TestLayerDiagnostic:
    """layer_transitivity_diagnosticのテスト。"""

    def test_binary_tree(self, binary_tree_descent: Window) -> None:
        """二分木の子孫窓では各層が 1 軌道になる。"""
        diagnostic = layer_transitivity_diagnostic(binary_tree_descent)
        assert diagnostic.orbit_counts == (1, 1, 1, 1, 1)
        assert diagnostic.consistent_with_p2

    def test_dmm_descent(self) -> None:
        """D(2, 3) の子孫窓も各層が 1 軌道になる。"""
        gamma = dmm_descent(2, 3, 4)
        assert layer_transitivity_diagnostic(gamma).consistent_with_p2

    def test_unbalanced_tree(self) -> None:
        """枝分かれが偏った木では軌道が分かれる。"""
        w = Window.whole(build_digraph(5, [(0, 1), (0, 2), (1, 3), (1, 4)]))
        gamma = descendant_window(w, 0, 2)
        diagnostic = layer_transitivity_diagnostic(gamma)
        assert diagnostic.orbit_counts == (1, 2, 1)
        assert not diagnostic.consistent_with_p2

    def test_tree_cap(self) -> None:
        """上限を超える窓はエラーを発生させる。"""
        gamma = descendant_window(gen_rooted_out_tree(2, 6), 0, 5)
        with pytest.raises(SizeCapError):
            layer_transitivity_diagnostic(gamma, cap=32)
