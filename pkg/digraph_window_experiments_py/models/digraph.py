"""有向グラフ・窓・分割・商有向グラフのデータモデル。

無限有向グラフは有限の「窓」(Window) として扱う。窓の内部頂点は、
モデル化している無限有向グラフの接続辺がすべて窓に含まれている頂点であり、
境界頂点は近傍が欠けている可能性がある頂点である。
"""

from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any

import networkx as nx

from digraph_window_experiments_py.models.errors import (
    LevelContractError,
    PartitionError,
    UnknownVertexError,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    """ループを持たない有限有向グラフ。

    Attributes:
        vertices: 頂点 ID の集合（非負整数）
        edges: 順序対 (u, v) の集合
        out_adj: 頂点ごとの外近傍（昇順タプル）
        in_adj: 頂点ごとの内近傍（昇順タプル）
        labels: 構造化座標などの任意ラベル（例: "(t, a)"）
        duplicate_edges: 構築時に除去した重複辺の数
    """

    vertices: frozenset[int]
    edges: frozenset[Edge]
    out_adj: Mapping[int, tuple[int, ...]] = field(compare=False, repr=False)
    in_adj: Mapping[int, tuple[int, ...]] = field(compare=False, repr=False)
    labels: Mapping[int, str] = field(default_factory=dict, compare=False, repr=False)
    duplicate_edges: int = field(default=0, compare=False)

    @classmethod
    def from_edges(
        cls,
        vertices: Iterable[int],
        edges: Iterable[Edge],
        labels: Mapping[int, str] | None = None,
        duplicate_edges: int = 0,
    ) -> "Digraph":
        """頂点集合と辺集合から隣接リストを構築する。

        端点の検証は呼び出し側（build_digraph など）の責務とする。
        """
        vertex_set = frozenset(vertices)
        edge_set = frozenset(edges)
        out_lists: dict[int, list[int]] = {v: [] for v in vertex_set}
        in_lists: dict[int, list[int]] = {v: [] for v in vertex_set}
        for u, v in edge_set:
            out_lists[u].append(v)
            in_lists[v].append(u)
        return cls(
            vertices=vertex_set,
            edges=edge_set,
            out_adj={v: tuple(sorted(ns)) for v, ns in out_lists.items()},
            in_adj={v: tuple(sorted(ns)) for v, ns in in_lists.items()},
            labels=dict(labels or {}),
            duplicate_edges=duplicate_edges,
        )

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self.out_adj[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self.in_adj[v]

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def require_vertices(self, vertices: Iterable[int]) -> None:
        """指定された頂点がすべて存在することを確認する。

        Raises:
            UnknownVertexError: 存在しない頂点が含まれる場合
        """
        unknown = [v for v in vertices if v not in self.vertices]
        if unknown:
            raise UnknownVertexError(unknown)

    def to_networkx(self) -> nx.DiGraph:
        """networkx の DiGraph に変換する。"""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.sorted_vertices())
        graph.add_edges_from(self.sorted_edges())
        return graph

    def underlying_graph(self) -> nx.Graph:
        """各有向辺を無向辺とみなした基礎無向グラフを返す。"""
        return self.to_networkx().to_undirected(as_view=False)


@dataclass(frozen=True)
class Window:
    """無限有向グラフの有限な切り出し。

    Attributes:
        graph: 窓に含まれる有向グラフ
        interior: 内部頂点の集合（接続辺がすべて窓内にある頂点）
        level: 頂点ごとの整数レベル（任意）。存在する場合、すべての辺 (u, v) で
            level(v) = level(u) + 1 を満たす
        meta: 生成パラメータなどのメタデータ
    """

    graph: Digraph
    interior: frozenset[int]
    level: Mapping[int, int] | None = field(default=None, compare=False)
    meta: Mapping[str, Any] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        self.graph.require_vertices(self.interior)
        if self.level is not None:
            self.graph.require_vertices(self.level)
            for u, v in self.graph.edges:
                if u in self.level and v in self.level:
                    if self.level[v] != self.level[u] + 1:
                        raise LevelContractError(
                            (u, v), (self.level[u], self.level[v])
                        )

    @classmethod
    def whole(cls, graph: Digraph, meta: Mapping[str, Any] | None = None) -> "Window":
        """有限有向グラフそれ自体を、全頂点が内部の窓として扱う。"""
        return cls(graph=graph, interior=graph.vertices, meta=dict(meta or {}))

    @property
    def boundary(self) -> frozenset[int]:
        return self.graph.vertices - self.interior

    def is_interior(self, v: int) -> bool:
        return v in self.interior

    def level_of(self, v: int) -> int | None:
        if self.level is None:
            return None
        return self.level.get(v)


@dataclass(frozen=True)
class Partition[T: Hashable]:
    """要素集合の同値分割。

    クラスは最小要素の昇順に並べた正準順序で保持する。

    Attributes:
        classes: 互いに素な空でない部分集合の列
        domain: 全クラスの和集合
    """

    classes: tuple[frozenset[T], ...]
    domain: frozenset[T]

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[T]]) -> "Partition[T]":
        """クラスの列から分割を構築する。

        Raises:
            PartitionError: 空のクラスまたは重複する要素がある場合
        """
        frozen = [frozenset(c) for c in classes]
        if any(not c for c in frozen):
            raise PartitionError("分割に空のクラスが含まれています")
        domain: set[T] = set()
        for c in frozen:
            if domain & c:
                overlap = sorted(domain & c)  # type: ignore[type-var]
                raise PartitionError(f"分割のクラスが重複しています: {overlap}")
            domain |= c
        ordered = tuple(sorted(frozen, key=lambda c: min(c)))  # type: ignore[type-var]
        return cls(classes=ordered, domain=frozenset(domain))

    @classmethod
    def singletons(cls, domain: Iterable[T]) -> "Partition[T]":
        return cls.from_classes([x] for x in domain)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def class_map(self) -> dict[T, int]:
        """要素からクラス番号への写像を返す。"""
        return {x: i for i, c in enumerate(self.classes) for x in c}

    def class_of(self, x: T) -> frozenset[T]:
        for c in self.classes:
            if x in c:
                return c
        raise KeyError(x)

    def is_trivial(self) -> bool:
        """すべてのクラスが一点集合なら True。"""
        return all(len(c) == 1 for c in self.classes)

    def is_universal(self) -> bool:
        return len(self.classes) == 1

    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def as_lists(self) -> list[list[T]]:
        """クラスを昇順リストのリストとして返す（シリアライズ用の正準形）。"""
        return [sorted(c) for c in self.classes]  # type: ignore[type-var]


@dataclass(frozen=True)
class QuotientDigraph:
    """分割による商有向グラフ D/ρ。

    Attributes:
        classes: 元の頂点集合の分割
        graph: クラス番号を頂点とする有向グラフ
        class_map: 元の頂点からクラス番号への写像
        dropped_self_edges: 同一クラス内の辺として除去した辺の数
    """

    classes: Partition[int]
    graph: Digraph
    class_map: Mapping[int, int] = field(compare=False, repr=False)
    dropped_self_edges: int = 0
