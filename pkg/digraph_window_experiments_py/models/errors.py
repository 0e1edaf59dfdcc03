"""有向グラフ操作で送出される例外の定義。

すべての例外は ValueError の派生クラスであり、拒否理由を属性として保持する。
"""

from collections.abc import Iterable


class DigraphError(ValueError):
    """有向グラフ関連の入力拒否を表す基底例外。"""


class LoopEdgeError(DigraphError):
    """ループ辺 (u, u) が与えられた。"""

    def __init__(self, edge: tuple[int, int]) -> None:
        self.edge = edge
        super().__init__(f"ループ辺は許可されていません: {edge}")


class VertexRangeError(DigraphError):
    """辺の端点が頂点数の範囲外にある。"""

    def __init__(self, edge: tuple[int, int], vertex_count: int) -> None:
        self.edge = edge
        self.vertex_count = vertex_count
        super().__init__(
            f"辺の端点が範囲 [0, {vertex_count}) の外にあります: {edge}"
        )


class UnknownVertexError(DigraphError):
    """有向グラフに存在しない頂点が指定された。"""

    def __init__(self, vertices: Iterable[int]) -> None:
        self.vertices = tuple(sorted(vertices))
        super().__init__(f"存在しない頂点が指定されました: {list(self.vertices)}")


class PartitionError(DigraphError):
    """分割のクラスが重複している、または定義域が一致しない。"""


class LevelContractError(DigraphError):
    """レベル関数が辺 (u, v) で level(v) = level(u) + 1 を満たさない。"""

    def __init__(self, edge: tuple[int, int], levels: tuple[int, int]) -> None:
        self.edge = edge
        self.levels = levels
        super().__init__(
            f"レベル規約違反: 辺 {edge} のレベルが {levels} です"
            "（level(v) = level(u) + 1 が必要）"
        )


class WindowTooSmallError(DigraphError):
    """要求された深さの子孫錐が窓の内部に収まらない。"""

    def __init__(self, depth: int, vertex: int | None = None) -> None:
        self.depth = depth
        self.vertex = vertex
        super().__init__(
            f"窓が小さすぎます: 深さ {depth} の層に境界頂点 {vertex} が含まれます"
        )


class GeneratorParameterError(DigraphError):
    """生成器のパラメータが不正。"""


class SizeCapError(DigraphError):
    """サイズ上限を超えた。"""

    def __init__(self, cap: int, size: int, what: str = "頂点数") -> None:
        self.cap = cap
        self.size = size
        super().__init__(f"{what}が上限 {cap} を超えています: {size}")


class DigraphFormatError(DigraphError):
    """JSON 有向グラフの形式が不正。"""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.line = line
        self.column = column
        super().__init__(f"{message}（行 {line}, 列 {column}）")
