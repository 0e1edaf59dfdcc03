"""同型・自己同型探索のデータモデル。"""

from dataclasses import dataclass

from digraph_window_experiments_py.models.digraph import Edge, Partition


@dataclass(frozen=True)
class IsoResult:
    """同型判定の結果。

    Attributes:
        mapping: 同型写像（g1 の頂点 → g2 の頂点）。同型でなければ None
        nodes_explored: 探索木で訪れたノード数
    """

    mapping: dict[int, int] | None
    nodes_explored: int

    @property
    def isomorphic(self) -> bool:
        return self.mapping is not None


@dataclass(frozen=True)
class OrbitStructure:
    """自己同型群の作用による軌道。

    Attributes:
        generators: 自己同型（頂点 → 頂点）の生成系。すべて検証済み
        vertex_orbits: 頂点軌道
        edge_orbits: 辺軌道
    """

    generators: tuple[dict[int, int], ...]
    vertex_orbits: Partition[int]
    edge_orbits: Partition[Edge]


@dataclass(frozen=True)
class LayerOrbitDiagnostic:
    """根を固定する窓自己同型による層ごとの軌道数（P2 の窓診断）。

    窓の自己同型は無限有向グラフの自己同型に延長・制限できるとは限らない。
    すべて 1 であることは P2 と矛盾しないことを示すにすぎない。

    Attributes:
        orbit_counts: 層 i ごとの軌道数
    """

    orbit_counts: tuple[int, ...]

    @property
    def consistent_with_p2(self) -> bool:
        return all(count == 1 for count in self.orbit_counts)
