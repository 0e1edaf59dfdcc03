"""到達可能性関係 𝒜 と alternet のデータモデル。"""

from dataclasses import dataclass, field
from enum import StrEnum

from digraph_window_experiments_py.models.digraph import Digraph, Edge


@dataclass(frozen=True)
class Alternet:
    """到達可能性関係の 1 クラスが張る部分有向グラフ。

    Attributes:
        edges: クラスに属する辺
        sources: 始点の集合 X
        sinks: 終点の集合 Y
        complete: 含まれる頂点がすべて内部頂点なら True
        bipartite: X と Y が互いに素なら True
    """

    edges: frozenset[Edge]
    sources: frozenset[int]
    sinks: frozenset[int]
    complete: bool = True
    bipartite: bool = True

    @property
    def vertices(self) -> frozenset[int]:
        return self.sources | self.sinks

    def to_digraph(self) -> Digraph:
        return Digraph.from_edges(self.vertices, self.edges)


@dataclass(frozen=True)
class AlternetGraph:
    """alternet を頂点とする有向グラフ Al(D)。

    Attributes:
        vertices: alternet の番号（alternets() の返り値の添字）
        edges: (A, B) の組。Y_A ∩ X_B が空でないとき辺がある
        attachment_sizes: 辺ごとの |Y_A ∩ X_B|
        excluded: 不完全なため除外した alternet の番号
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    attachment_sizes: dict[tuple[int, int], int] = field(default_factory=dict)
    excluded: tuple[int, ...] = ()

    @property
    def loose_attachment(self) -> bool:
        """すべての接続の大きさが 1 以下なら True（緩い接続）。"""
        return all(size <= 1 for size in self.attachment_sizes.values())

    def to_digraph(self) -> Digraph:
        return Digraph.from_edges(self.vertices, self.edges)


class UniversalityKind(StrEnum):
    TWO_ARC_IN_CLASS = "TwoArcInClass"
    NO_TWO_ARC_IN_WINDOW = "NoTwoArcInWindow"


@dataclass(frozen=True)
class UniversalitySignal:
    """𝒜 の普遍性シグナル。

    Attributes:
        kind: TwoArcInClass なら無限有向グラフ上で 𝒜 は普遍（健全な結論）。
            NoTwoArcInWindow は窓に限った観察にすぎない
        witness: 同じクラスに属する 2-弧 (u, v, w)
    """

    kind: UniversalityKind
    witness: tuple[int, int, int] | None = None


@dataclass(frozen=True)
class ClassCReport:
    """クラス 𝒞 の所属判定。

    Attributes:
        finite_nonempty: X, Y が有限かつ空でない
        edge_transitive: 辺推移的
        delta_nontrivial: X 上の δ が非自明
        sink_count_matches: |Y| が δ-クラスの大きさと等しい
        delta_class_sizes: δ-クラスの大きさ（昇順）
        sink_count: |Y|
        member: 上記すべての論理積
    """

    finite_nonempty: bool
    edge_transitive: bool
    delta_nontrivial: bool
    sink_count_matches: bool
    delta_class_sizes: tuple[int, ...]
    sink_count: int

    @property
    def member(self) -> bool:
        return (
            self.finite_nonempty
            and self.edge_transitive
            and self.delta_nontrivial
            and self.sink_count_matches
        )
