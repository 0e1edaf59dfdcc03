"""同値関係 δ_n・ρ・R とその商構造のデータモデル。"""

from dataclasses import dataclass, field

from digraph_window_experiments_py.models.digraph import Partition, QuotientDigraph


@dataclass(frozen=True)
class PartitionReport:
    """関係の分割と、窓の制約で除外された頂点。

    Attributes:
        partition: 分類できた頂点の分割
        excluded: 子孫錐や alternet が窓からはみ出したため除外した頂点
    """

    partition: Partition[int]
    excluded: frozenset[int] = frozenset()


@dataclass(frozen=True)
class MonotonicityReport:
    """δ_n(u,v) ⇒ δ_{n+1}(u,v) の検査結果。

    Attributes:
        n: 検査した n
        checked_pairs: 比較した頂点対の数
        violations: 反例の頂点対（窓の不具合を示す）
        excluded: 深さ n+1 の錐が窓内に収まらず除外した頂点
    """

    n: int
    checked_pairs: int
    violations: tuple[tuple[int, int], ...] = ()
    excluded: frozenset[int] = frozenset()

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class G3Witness:
    """G3 の反例: x ∈ Γ^l, z ∈ Γ(x) で第1層の祖先集合が異なる。"""

    layer: int
    x: int
    z: int
    anc_x: tuple[int, ...]
    anc_z: tuple[int, ...]


@dataclass(frozen=True)
class G3Result:
    """窓で確認できる最小の G3 定数 k。

    Attributes:
        k: 窓の範囲で G3 を満たす最小の k（見つからなければ None）
        witnesses: k 未満の各候補を棄却した反例（候補 k → 反例）
    """

    k: int | None
    witnesses: dict[int, G3Witness] = field(default_factory=dict)


@dataclass(frozen=True)
class RhoContext:
    """ρ 関係の文脈。

    Attributes:
        k: G3 の定数（k >= 1）
        base_layer: 分割する層 l（l >= k）
    """

    k: int
    base_layer: int


@dataclass(frozen=True)
class RhoTreeReport:
    """Γ(v)/ρ が根付き有向木かどうかの検査結果。

    Attributes:
        base_class: 根とした ρ-クラス
        is_tree_to_window: 根以外の全クラスの親クラスが 1 個以下なら True
        out_valencies: 窓の最終層より手前のクラスの外次数（昇順）
        constant_out_valency: 外次数が一定ならその値 s
        classes_contained: Γ(v) と交わる ρ-クラスがすべて Γ(v) に含まれるなら True
        layers: 検査した層の範囲 (最初, 最後)
    """

    base_class: tuple[int, ...]
    is_tree_to_window: bool
    out_valencies: tuple[int, ...]
    constant_out_valency: int | None
    classes_contained: bool
    layers: tuple[int, int]


@dataclass(frozen=True)
class DeltaQuotientReport:
    """商有向グラフ D/δ_n の次数プロファイル。

    Attributes:
        n: δ_n の n
        quotient: 分類できた頂点の誘導部分グラフの商
        out_valencies: 外完全クラス（外近傍がすべて分類済み）の外次数
        in_valencies: 内完全クラス（内近傍がすべて分類済み）の内次数
        excluded: 分類できなかった頂点
    """

    n: int
    quotient: QuotientDigraph
    out_valencies: dict[int, int]
    in_valencies: dict[int, int]
    excluded: frozenset[int] = frozenset()
