"""到達可能性関係 𝒜・alternet・alternet の有向グラフ Al(D) を計算するサービス。"""

import logging
from collections.abc import Sequence

from networkx.utils import UnionFind

from digraph_window_experiments_py.models.alternet import (
    Alternet,
    AlternetGraph,
    ClassCReport,
    UniversalityKind,
    UniversalitySignal,
)
from digraph_window_experiments_py.models.digraph import Edge, Partition, Window
from digraph_window_experiments_py.models.errors import DigraphError
from digraph_window_experiments_py.services.digraph_ops import (
    components_after_removal,
    partition_by_vertex_sets,
)
from digraph_window_experiments_py.services.symmetry import check_edge_transitive

logger = logging.getLogger(__name__)


def reach_partition(w: Window) -> Partition[Edge]:
    """辺集合を到達可能性関係 𝒜 で分割する。

    頭を共有する辺どうし、尾を共有する辺どうしを併合した閉包をとる。
    この閉包は交代歩道による到達可能性と一致する。
    """
    graph = w.graph
    uf: UnionFind = UnionFind(graph.sorted_edges())
    for v in graph.sorted_vertices():
        incoming = [(u, v) for u in graph.in_neighbors(v)]
        outgoing = [(v, x) for x in graph.out_neighbors(v)]
        if len(incoming) > 1:
            uf.union(*incoming)
        if len(outgoing) > 1:
            uf.union(*outgoing)
    partition = Partition.from_classes(uf.to_sets())
    logger.debug("𝒜: %d 辺, %d クラス", graph.edge_count, partition.class_count)
    return partition


def alternets(w: Window, partition: Partition[Edge] | None = None) -> list[Alternet]:
    """𝒜 の各クラスが張る alternet を、分割の正準順序で返す。"""
    classes = partition if partition is not None else reach_partition(w)
    result = []
    for edges in classes.classes:
        sources = frozenset(u for u, _ in edges)
        sinks = frozenset(v for _, v in edges)
        result.append(
            Alternet(
                edges=edges,
                sources=sources,
                sinks=sinks,
                complete=(sources | sinks) <= w.interior,
                bipartite=not (sources & sinks),
            )
        )
    return result


def universality_signal(
    w: Window, partition: Partition[Edge] | None = None
) -> UniversalitySignal:
    """同じ 𝒜-クラスに両辺が属する 2-弧を探す。

    見つかれば無限有向グラフ上で 𝒜 は普遍であり、見つからなければ窓に限った観察になる。
    """
    classes = partition if partition is not None else reach_partition(w)
    class_map = classes.class_map()
    graph = w.graph
    for v in graph.sorted_vertices():
        for u in graph.in_neighbors(v):
            for x in graph.out_neighbors(v):
                if x != u and class_map[(u, v)] == class_map[(v, x)]:
                    return UniversalitySignal(
                        UniversalityKind.TWO_ARC_IN_CLASS, witness=(u, v, x)
                    )
    return UniversalitySignal(UniversalityKind.NO_TWO_ARC_IN_WINDOW)


def alternet_graph(w: Window, nets: Sequence[Alternet] | None = None) -> AlternetGraph:
    """完全な alternet を頂点とする有向グラフ Al(D) を構築する。

    Y_A ∩ X_B が空でないとき辺 (A, B) を張り、その大きさを記録する。
    頂点番号は alternets() のリストの添字。

    Args:
        w: 窓
        nets: 計算済みの alternet のリスト（None なら計算する）
    """
    nets = list(nets) if nets is not None else alternets(w)
    complete = [i for i, net in enumerate(nets) if net.complete]
    excluded = tuple(i for i, net in enumerate(nets) if not net.complete)
    if excluded:
        logger.warning("Al(D): 不完全な alternet %d 個を除外しました", len(excluded))

    by_source: dict[int, int] = {}
    for i in complete:
        for x in nets[i].sources:
            by_source[x] = i

    attachment: dict[tuple[int, int], int] = {}
    for a in complete:
        for y in nets[a].sinks:
            b = by_source.get(y)
            if b is not None:
                attachment[(a, b)] = attachment.get((a, b), 0) + 1

    return AlternetGraph(
        vertices=tuple(complete),
        edges=tuple(sorted(attachment)),
        attachment_sizes=dict(sorted(attachment.items())),
        excluded=excluded,
    )


def class_C_membership(alt: Alternet, iso_cap: int | None = None) -> ClassCReport:
    """alternet がクラス 𝒞 に属するかを判定する。

    X, Y が有限かつ空でない、辺推移的、X 上の δ が非自明、|Y| が δ-クラスの
    大きさと等しい、の 4 条件を評価する。

    Raises:
        DigraphError: alternet が不完全な場合
        SizeCapError: 頂点数が同型探索の上限を超える場合
    """
    if not alt.complete:
        raise DigraphError("不完全な alternet はクラス 𝒞 の判定に使えません")
    graph = alt.to_digraph()
    delta = partition_by_vertex_sets(
        {x: frozenset(graph.out_neighbors(x)) for x in alt.sources}
    )
    sizes = tuple(sorted(delta.class_sizes()))
    sink_count = len(alt.sinks)
    return ClassCReport(
        finite_nonempty=bool(alt.sources) and bool(alt.sinks),
        edge_transitive=check_edge_transitive(graph, cap=iso_cap),
        delta_nontrivial=not delta.is_trivial(),
        sink_count_matches=all(size == sink_count for size in sizes),
        delta_class_sizes=sizes,
        sink_count=sink_count,
    )


def alternet_cut_components(w: Window, alt: Alternet) -> int:
    """alternet の頂点を除いた基礎無向グラフの連結成分数を返す。"""
    return len(components_after_removal(w.graph, alt.vertices))
