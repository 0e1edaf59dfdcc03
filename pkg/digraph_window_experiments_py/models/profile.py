"""子孫集合と層統計のデータモデル。"""

from dataclasses import dataclass, field
from enum import StrEnum


@dataclass(frozen=True)
class ConeResult:
    """desc_s / anc_s の結果。

    Attributes:
        vertices: s-弧で到達する頂点の集合
        window_limited: 展開途中の頂点に境界頂点が含まれた場合 True
            （無限有向グラフでの値より小さい可能性がある）
    """

    vertices: frozenset[int]
    window_limited: bool = False


class P3Status(StrEnum):
    HOLDS_TO_DEPTH = "HoldsToDepth"
    FAILS_AT = "FailsAt"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class P3Verdict:
    """P3（層サイズの狭義単調増加）の判定。

    Attributes:
        status: 判定種別
        index: FailsAt の場合、|Γ^{i-1}| >= |Γ^i| となる最小の i
    """

    status: P3Status
    index: int | None = None

    @classmethod
    def holds(cls) -> "P3Verdict":
        return cls(P3Status.HOLDS_TO_DEPTH)

    @classmethod
    def fails_at(cls, index: int) -> "P3Verdict":
        return cls(P3Status.FAILS_AT, index)

    @classmethod
    def inconclusive(cls) -> "P3Verdict":
        return cls(P3Status.INCONCLUSIVE)


@dataclass(frozen=True)
class InValencyRefutation:
    """同一層で内次数が一様でないことの反証。

    Attributes:
        layer: 層番号 i
        valencies: 頂点ごとの Γ 内の内次数
    """

    layer: int
    valencies: dict[int, int]


@dataclass(frozen=True)
class LayerProfile:
    """根付き子孫窓の層プロファイル。

    Attributes:
        depth: 窓の深さ
        out_valency: 根の外次数 m
        layer_sizes: |Γ^i| (i = 0..depth)
        in_valencies: r_i (i = 1..depth)。一様でない層以降は含まない
        interior_depth: 層 0..interior_depth-1 がすべて内部頂点
        N: 内次数列の安定化指数（窓で確認できた場合のみ）
        r_N: 究極内次数
        p3: P3 の判定
        refutation: 内次数が一様でない層があった場合の反証
    """

    depth: int
    out_valency: int
    layer_sizes: tuple[int, ...]
    in_valencies: tuple[int, ...]
    interior_depth: int
    N: int | None = None
    r_N: int | None = None
    p3: P3Verdict = field(default_factory=P3Verdict.inconclusive)
    refutation: InValencyRefutation | None = None

    def r(self, i: int) -> int:
        """r_i を返す（1 始まり）。"""
        return self.in_valencies[i - 1]
