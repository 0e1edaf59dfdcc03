"""性質 Z・P0〜P3・条件 C・ブロック系などの判定結果のデータモデル。

窓に基づく判定はすべて、証拠オブジェクト（集合・写像・反例）か
窓による制限の注記を伴う。
"""

from dataclasses import dataclass, field
from enum import StrEnum

from digraph_window_experiments_py.models.profile import P3Verdict
from digraph_window_experiments_py.models.relation import G3Result


@dataclass(frozen=True)
class ConflictWalk:
    """Z-ラベル付けが存在しないことを示す閉路（向きを無視した閉じた歩道）。

    Attributes:
        vertices: 歩道の頂点列（先頭と末尾は同じ頂点）
        forward: 順方向にたどった辺の数
        backward: 逆方向にたどった辺の数
    """

    vertices: tuple[int, ...]
    forward: int
    backward: int


@dataclass(frozen=True)
class ZLabeling:
    """性質 Z のラベル付け f（f(head) = f(tail) + 1）またはその反証。

    Attributes:
        labels: 全頂点のラベル。反証がある場合は None
        conflict: 前進辺数と後退辺数が一致しない閉じた歩道
        components: 基礎無向グラフの連結成分数
        notes: 非連結入力などの注記
    """

    labels: dict[int, int] | None
    conflict: ConflictWalk | None = None
    components: int = 1
    notes: tuple[str, ...] = ()

    @property
    def labeled(self) -> bool:
        return self.labels is not None


@dataclass(frozen=True)
class P0Verdict:
    """P0（層が互いに素、かつ外次数 m が一定）の判定。

    Attributes:
        holds: 窓の範囲で P0 が成り立つ
        out_valency: 内部頂点の共通外次数 m（一様でなければ None）
        witness_vertex: 2 つの層に現れた頂点
        witness_layers: その頂点が現れた層
        nonuniform_vertices: 外次数が m と異なる内部頂点
    """

    holds: bool
    out_valency: int | None
    witness_vertex: int | None = None
    witness_layers: tuple[int, ...] = ()
    nonuniform_vertices: tuple[int, ...] = ()


@dataclass(frozen=True)
class P1Verdict:
    """P1（Γ(u) ≅ Γ）の深さ制限付き判定。

    Attributes:
        holds: 検査したすべての u で同型だった
        depth: 比較した深さ d
        tested: 検査した頂点
        witness: 同型でなかった頂点
        partial: 予算切れで一部のみ検査した場合 True
    """

    holds: bool
    depth: int
    tested: tuple[int, ...]
    witness: int | None = None
    partial: bool = False


class ConditionCKind(StrEnum):
    DISJOINT_TO_DEPTH = "DisjointToDepth"
    INTERSECTS = "Intersects"
    NO_SPLIT = "NoSplit"


@dataclass(frozen=True)
class ConditionCVerdict:
    """条件 C_Γ(x) の判定。

    Attributes:
        kind: DisjointToDepth（窓に基づく証拠）、Intersects（その分割の健全な反証）、
            NoSplit（成分に基づく分割が存在しない）
        U: 分割の片側
        V: 分割のもう片側
        depth: 比較した深さ
        witness: desc(U) ∩ desc(V) に属する頂点
    """

    kind: ConditionCKind
    U: tuple[int, ...] = ()
    V: tuple[int, ...] = ()
    depth: int = 0
    witness: int | None = None


class PQOutcome(StrEnum):
    CONSISTENT = "Consistent"
    INCONSISTENT = "Inconsistent"
    INAPPLICABLE = "Inapplicable"


@dataclass(frozen=True)
class PQRecord:
    """外次数 p·q に関する整合性検査の記録。

    Attributes:
        outcome: 判定
        branch: 適用した分岐（"tree" または "blocks"）
        reason: Inapplicable の理由、または Inconsistent の不一致フィールド
        predicted: 予測値
        measured: 実測値
    """

    outcome: PQOutcome
    p: int
    q: int
    branch: str | None = None
    reason: str | None = None
    predicted: dict[str, object] = field(default_factory=dict)
    measured: dict[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class PropertyReport:
    """根付き子孫窓の性質レポート。"""

    P0: P0Verdict
    P1: P1Verdict | None
    P3: P3Verdict
    G3: G3Result | None
    condition_C: ConditionCVerdict
    blocks: tuple[tuple[int, ...], ...]
    pq: PQRecord | None = None
    notes: tuple[str, ...] = ()

    @property
    def block_count(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class DmmRecognition:
    """窓が D(m, M) の窓として整合的かどうかの判定。

    Attributes:
        recognized: すべての検査に合格した
        m: 読み取った外次数
        M: 読み取った |Y|
        failed_check: 最初に失敗した検査名
        alternets_checked: 同型検査した完全 alternet の数
    """

    recognized: bool
    m: int | None = None
    M: int | None = None
    failed_check: str | None = None
    alternets_checked: int = 0
