"""到達可能性関係 𝒜 と alternet のテスト。"""

import pytest

from digraph_window_experiments_py.models.alternet import Alternet, UniversalityKind
from digraph_window_experiments_py.models.digraph import Edge, Window
from digraph_window_experiments_py.models.errors import DigraphError
from digraph_window_experiments_py.services.generators import gen_DmM, gen_line_z
from digraph_window_experiments_py.services.reachability import (
    alternet_cut_components,
    alternet_graph,
    alternets,
    class_C_membership,
    reach_partition,
    universality_signal,
)
from tests.graph_helpers import ORACLE_SEEDS, oracle_dag


def alternating_closure(w: Window) -> dict[tuple[Edge, Edge], bool]:
    """頭か尾を共有する辺の関係を Warshall 法で推移閉包する。"""
    edges = w.graph.sorted_edges()
    related = {
        (e, f): e == f or e[0] == f[0] or e[1] == f[1] for e in edges for f in edges
    }
    for k in edges:
        for e in edges:
            if not related[(e, k)]:
                continue
            for f in edges:
                if related[(k, f)]:
                    related[(e, f)] = True
    return related


class TestReachPartition:
    """reach_partitionのテスト。"""

    def test_small_example(self, universality_window: Window) -> None:
        """頭や尾を共有する辺が同じクラスになる。"""
        partition = reach_partition(universality_window)
        assert partition.as_lists() == [[(0, 1), (0, 2), (2, 1)], [(1, 3)]]

    def test_dmm_class_count(self, dmm_233: Window) -> None:
        """D(2, 3) の深さ 3 の窓には 13 個のクラスがある。"""
        assert reach_partition(dmm_233).class_count == 13

    def test_matches_alternating_closure(self) -> None:
        """乱択 DAG で、交代歩道の閉包と分割が一致する。"""
        for seed in ORACLE_SEEDS:
            w = oracle_dag(seed)
            class_map = reach_partition(w).class_map()
            closure = alternating_closure(w)
            for (e, f), related in closure.items():
                assert (class_map[e] == class_map[f]) == related, f"seed={seed}"


class TestAlternets:
    """alternetsとuniversality_signalのテスト。"""

    def test_alternet_fields(self, universality_window: Window) -> None:
        """alternet の始点・終点・二部性を求める。"""
        first, second = alternets(universality_window)
        assert first.sources == frozenset({0, 2})
        assert first.sinks == frozenset({1, 2})
        assert not first.bipartite
        assert second.sources == frozenset({1})
        assert second.bipartite

    def test_universality_witness(self, universality_window: Window) -> None:
        """同じクラスに属する 2-弧を見つける。"""
        signal = universality_signal(universality_window)
        assert signal.kind == UniversalityKind.TWO_ARC_IN_CLASS
        assert signal.witness == (0, 2, 1)

    def test_no_two_arc_in_dmm(self, dmm_233: Window) -> None:
        """D(m, M) の窓では 2-弧の両辺は常に別クラスになる。"""
        signal = universality_signal(dmm_233)
        assert signal.kind == UniversalityKind.NO_TWO_ARC_IN_WINDOW
        assert signal.witness is None

    def test_dmm_alternets_are_bipartite(self, dmm_233: Window) -> None:
        """D(m, M) の alternet はすべて二部である。"""
        assert all(net.bipartite for net in alternets(dmm_233))


class TestClassC:
    """class_C_membershipのテスト。"""

    def test_dmm_alternets_are_members(self, dmm_233: Window) -> None:
        """D(2, 3) の完全な alternet はクラス 𝒞 に属する。"""
        complete = [net for net in alternets(dmm_233) if net.complete]
        assert complete
        for net in complete:
            report = class_C_membership(net)
            assert report.member
            assert report.sink_count == 3
            assert report.delta_class_sizes == (3, 3, 3)

    def test_star_fails_sink_count(self) -> None:
        """D(1, 3) の alternet（星）は |Y| の条件を満たさない。"""
        w = gen_DmM(1, 3, 3)
        net = next(net for net in alternets(w) if net.complete)
        report = class_C_membership(net)
        assert report.edge_transitive
        assert not report.sink_count_matches
        assert not report.member

    def test_incomplete_alternet(self) -> None:
        """不完全な alternet はエラーを発生させる。"""
        net = Alternet(
            edges=frozenset({(0, 1)}),
            sources=frozenset({0}),
            sinks=frozenset({1}),
            complete=False,
        )
        with pytest.raises(DigraphError):
            class_C_membership(net)


class TestAlternetGraph:
    """alternet_graphとalternet_cut_componentsのテスト。"""

    def test_line_is_a_path(self) -> None:
        """整数直線の Al(D) はパスになる。"""
        w = gen_line_z(7)
        al = alternet_graph(w)
        assert len(al.vertices) == 4
        assert al.edges == ((1, 2), (2, 3), (3, 4))
        assert al.excluded == (0, 5)
        assert al.loose_attachment

    def test_line_cut(self) -> None:
        """alternet を除くと直線は 2 成分に分かれる。"""
        w = gen_line_z(7)
        net = next(net for net in alternets(w) if net.edges == frozenset({(2, 3)}))
        assert alternet_cut_components(w, net) == 2

    def test_dmm_attachment(self) -> None:
        """D(2, 3) の接続の大きさは 3 で、緩い接続ではない。"""
        al = alternet_graph(gen_DmM(2, 3, 4))
        assert al.edges
        assert set(al.attachment_sizes.values()) == {3}
        assert not al.loose_attachment
