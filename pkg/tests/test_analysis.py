"""解析パイプラインのテスト。"""

import pytest

from digraph_window_experiments_py.models.digraph import Window
from digraph_window_experiments_py.models.errors import (
    DigraphError,
    UnknownVertexError,
)
from digraph_window_experiments_py.services.analysis import (
    analyze_window,
    choose_root,
    max_fitting_depth,
)
from digraph_window_experiments_py.services.generators import (
    gen_line_z,
    gen_rooted_out_tree,
)
from digraph_window_experiments_py.services.serialization import dumps_json
from tests.graph_helpers import whole


class TestChooseRoot:
    """choose_rootとmax_fitting_depthのテスト。"""

    def test_lowest_level_interior(self, dmm_233: Window) -> None:
        """最小レベルの内部頂点を選ぶ。"""
        root = choose_root(dmm_233)
        assert root is not None
        assert dmm_233.level is not None
        assert dmm_233.level[root] == 1
        assert root in dmm_233.interior

    def test_without_levels(self) -> None:
        """レベルがなければ最小 ID の内部頂点を選ぶ。"""
        assert choose_root(whole(3, [(2, 1), (1, 0)])) == 0

    def test_no_interior(self) -> None:
        """内部頂点がなければ None を返す。"""
        assert choose_root(gen_line_z(2)) is None

    def test_max_fitting_depth(self, dmm_233: Window) -> None:
        """窓に収まる最大の深さを返す。"""
        root = choose_root(dmm_233)
        assert root is not None
        assert max_fitting_depth(dmm_233, root) == 2
        assert max_fitting_depth(gen_rooted_out_tree(2, 4), 0) == 4


class TestAnalyzeWindow:
    """analyze_windowのテスト。"""

    def test_dmm(self, dmm_233: Window) -> None:
        """D(2, 3) の窓を解析する。"""
        report = analyze_window(dmm_233)
        assert report.depth == 2
        assert report.layer_profile is not None
        assert report.layer_profile["p3"] == {"status": "FailsAt", "index": 2}
        assert report.z_labeling["labeled"] is True
        assert len(report.partitions["reach"]) == 13
        assert report.alternets["count"] == 13
        assert report.alternets["universality"]["kind"] == "NoTwoArcInWindow"
        assert report.alternets["dmm_recognition"]["recognized"] is True
        assert report.input["vertex_count"] == 120

    def test_size_cap_becomes_note(self, dmm_233: Window) -> None:
        """同型探索の上限を超えた段階は省略して注記に残す。"""
        report = analyze_window(dmm_233)
        assert report.symmetry["edge_transitive"] is None
        assert any(note.startswith("辺推移性") for note in report.notes)
        assert report.notes[0] == "窓に基づく判定は、窓の範囲での観察です"

    def test_tree(self) -> None:
        """二分木の窓を解析する。"""
        report = analyze_window(gen_rooted_out_tree(2, 4))
        assert report.root == 0
        assert report.depth == 4
        assert report.layer_profile is not None
        assert report.layer_profile["p3"]["status"] == "HoldsToDepth"
        assert report.properties is not None
        assert report.properties["block_count"] == 2
        assert report.properties["G3"]["k"] == 1
        assert "rho" in report.partitions
        assert report.symmetry["layer_orbits"]["consistent_with_p2"] is True
        assert report.symmetry["edge_transitive"] is False

    def test_explicit_root_and_depth(self) -> None:
        """根と深さを指定できる。"""
        report = analyze_window(gen_rooted_out_tree(2, 4), root=1, depth=2)
        assert report.root == 1
        assert report.depth == 2
        assert report.properties is not None
        assert report.properties["G3"] is None

    def test_pq_note(self) -> None:
        """p·q の前提を満たさない場合は注記に残す。"""
        report = analyze_window(gen_rooted_out_tree(2, 4), pq=(2, 3))
        assert report.properties is not None
        assert report.properties["pq"] is None
        assert any("p·q" in note for note in report.notes)

    def test_no_interior(self) -> None:
        """内部頂点がなければ層の解析を省略する。"""
        report = analyze_window(gen_line_z(2))
        assert report.root is None
        assert report.depth == 0
        assert report.layer_profile is None
        assert any("子孫窓を切り出せない" in note for note in report.notes)

    def test_conflict_window(self, conflict_window: Window) -> None:
        """性質 Z を持たない窓では反証を記録する。"""
        report = analyze_window(conflict_window)
        assert report.z_labeling["labeled"] is False
        assert report.z_labeling["conflict"]["vertices"][0] == 0

    def test_invalid_delta(self, dmm_233: Window) -> None:
        """n = 0 はエラーを発生させる。"""
        with pytest.raises(DigraphError):
            analyze_window(dmm_233, delta_n=0)

    def test_unknown_root(self, dmm_233: Window) -> None:
        """存在しない根はエラーを発生させる。"""
        with pytest.raises(UnknownVertexError):
            analyze_window(dmm_233, root=9999)

    def test_report_is_deterministic(self) -> None:
        """同じ入力から同じ JSON が得られる。"""
        w = gen_rooted_out_tree(2, 3)
        assert dumps_json(analyze_window(w)) == dumps_json(analyze_window(w))
