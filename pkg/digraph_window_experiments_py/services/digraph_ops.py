"""有向グラフの構築・誘導部分グラフ・商・頂点除去後の連結成分を扱うサービス。"""

import hashlib
import logging
from collections import defaultdict
from collections.abc import Iterable, Mapping

import networkx as nx

from digraph_window_experiments_py.models.digraph import (
    Digraph,
    Edge,
    Partition,
    QuotientDigraph,
    Window,
)
from digraph_window_experiments_py.models.errors import (
    LoopEdgeError,
    PartitionError,
    VertexRangeError,
)

logger = logging.getLogger(__name__)


def build_digraph(
    vertex_count: int,
    edges: Iterable[tuple[int, int]],
    labels: Mapping[int, str] | None = None,
) -> Digraph:
    """頂点 0..vertex_count-1 と辺リストから有向グラフを構築する。

    重複辺は 1 本にまとめ、その数を duplicate_edges に記録する。

    Args:
        vertex_count: 頂点数
        edges: 辺 (u, v) のリスト
        labels: 頂点ラベル（任意）

    Returns:
        構築した有向グラフ

    Raises:
        LoopEdgeError: (u, u) が含まれる場合
        VertexRangeError: 端点が [0, vertex_count) の外にある場合
    """
    seen: set[Edge] = set()
    duplicates = 0
    for u, v in edges:
        edge = (int(u), int(v))
        if edge[0] == edge[1]:
            raise LoopEdgeError(edge)
        if not (0 <= edge[0] < vertex_count and 0 <= edge[1] < vertex_count):
            raise VertexRangeError(edge, vertex_count)
        if edge in seen:
            duplicates += 1
            continue
        seen.add(edge)

    if duplicates:
        logger.warning("重複辺を %d 本除去しました", duplicates)

    return Digraph.from_edges(
        range(vertex_count), seen, labels=labels, duplicate_edges=duplicates
    )


def induced_subdigraph(g: Digraph, vertices: Iterable[int]) -> Digraph:
    """頂点集合 S 上の誘導部分グラフ（辺集合は E(g) ∩ S×S）を返す。

    頂点 ID とラベルは元のまま保持する。

    Raises:
        UnknownVertexError: S に存在しない頂点が含まれる場合
    """
    subset = frozenset(vertices)
    g.require_vertices(subset)
    edges = [(u, v) for u in subset for v in g.out_adj[u] if v in subset]
    labels = {v: g.labels[v] for v in subset if v in g.labels}
    return Digraph.from_edges(subset, edges, labels=labels)


def induced_window(w: Window, vertices: Iterable[int]) -> Window:
    """窓の誘導部分窓を返す。

    内部頂点は元の窓で内部だった頂点に制限し、レベルも制限する。
    """
    graph = induced_subdigraph(w.graph, vertices)
    level = None
    if w.level is not None:
        level = {v: w.level[v] for v in graph.vertices if v in w.level}
    return Window(
        graph=graph,
        interior=w.interior & graph.vertices,
        level=level,
        meta=dict(w.meta),
    )


def quotient(g: Digraph, partition: Partition[int]) -> QuotientDigraph:
    """分割 p による商有向グラフ g/p を構築する。

    (A, B) が辺になるのは a ∈ A, b ∈ B, (a, b) ∈ E(g), A ≠ B となるときに限る。
    同一クラス内の辺は除去し、その本数を dropped_self_edges に記録する。

    Args:
        g: 元の有向グラフ
        partition: g の頂点集合の分割

    Returns:
        商有向グラフ

    Raises:
        PartitionError: 分割の定義域が頂点集合と一致しない場合
    """
    if partition.domain != g.vertices:
        missing = sorted(g.vertices - partition.domain)
        extra = sorted(partition.domain - g.vertices)
        raise PartitionError(
            f"分割の定義域が頂点集合と一致しません（不足: {missing}, 余分: {extra}）"
        )

    class_map = partition.class_map()
    quotient_edges: set[Edge] = set()
    dropped = 0
    for u, v in g.edges:
        a, b = class_map[u], class_map[v]
        if a == b:
            dropped += 1
        else:
            quotient_edges.add((a, b))

    logger.debug(
        "商を構築しました: %d クラス, %d 辺, 除去した自己辺 %d",
        partition.class_count,
        len(quotient_edges),
        dropped,
    )
    return QuotientDigraph(
        classes=partition,
        graph=Digraph.from_edges(range(partition.class_count), quotient_edges),
        class_map=class_map,
        dropped_self_edges=dropped,
    )


def components_after_removal(
    g: Digraph, removed: Iterable[int]
) -> list[frozenset[int]]:
    """g から頂点集合 F を除いた基礎無向グラフの連結成分を返す。

    成分は最小頂点の昇順に並べる。F が全頂点なら空リストを返す。

    Raises:
        UnknownVertexError: F に存在しない頂点が含まれる場合
    """
    removed_set = frozenset(removed)
    g.require_vertices(removed_set)
    underlying = g.underlying_graph()
    underlying.remove_nodes_from(removed_set)
    components = [frozenset(c) for c in nx.connected_components(underlying)]
    return sorted(components, key=min)


def relabel_dense(g: Digraph) -> tuple[Digraph, dict[int, int]]:
    """頂点 ID を昇順に 0..n-1 へ詰め直す。

    Returns:
        詰め直した有向グラフと、元の ID から新しい ID への写像
    """
    mapping = {v: i for i, v in enumerate(g.sorted_vertices())}
    edges = [(mapping[u], mapping[v]) for u, v in g.edges]
    labels = {mapping[v]: label for v, label in g.labels.items()}
    return Digraph.from_edges(range(len(mapping)), edges, labels=labels), mapping


def vertex_set_signature(vertices: Iterable[int]) -> bytes:
    """頂点集合の 64 ビット署名（昇順 ID 列の blake2b）を返す。"""
    text = ",".join(str(v) for v in sorted(vertices))
    return hashlib.blake2b(text.encode("ascii"), digest_size=8).digest()


def partition_by_vertex_sets(keyed: Mapping[int, frozenset[int]]) -> Partition[int]:
    """対応する頂点集合が等しい要素どうしをまとめた分割を返す。

    署名でバケットに分け、バケット内では集合を厳密に比較して衝突を解消する。
    """
    buckets: dict[bytes, list[int]] = defaultdict(list)
    for v in sorted(keyed):
        buckets[vertex_set_signature(keyed[v])].append(v)

    classes: list[frozenset[int]] = []
    for members in buckets.values():
        exact: dict[frozenset[int], list[int]] = defaultdict(list)
        for v in members:
            exact[keyed[v]].append(v)
        classes.extend(frozenset(group) for group in exact.values())
    return Partition.from_classes(classes)
