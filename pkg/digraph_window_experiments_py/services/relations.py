"""同値関係 δ_n・ρ・R と、その商構造を計算するサービス。"""

import logging
from collections.abc import Iterable
from itertools import combinations

from digraph_window_experiments_py.models.digraph import Partition, Window
from digraph_window_experiments_py.models.errors import DigraphError
from digraph_window_experiments_py.models.relation import (
    DeltaQuotientReport,
    G3Result,
    G3Witness,
    MonotonicityReport,
    PartitionReport,
    RhoContext,
    RhoTreeReport,
)
from digraph_window_experiments_py.services.descent import (
    desc_s,
    layers_of,
    reach_within,
)
from digraph_window_experiments_py.services.digraph_ops import (
    induced_subdigraph,
    partition_by_vertex_sets,
    quotient,
)
from digraph_window_experiments_py.services.reachability import (
    alternet_graph,
    alternets,
)

logger = logging.getLogger(__name__)


def delta_n_partition(w: Window, n: int, domain: Iterable[int]) -> PartitionReport:
    """δ_n（D^n(u) = D^n(v)）による domain の分割を返す。

    n ステップの子孫錐が窓に収まらない頂点は分類せず excluded に入れる。

    Raises:
        DigraphError: n < 1 の場合
        UnknownVertexError: domain に存在しない頂点が含まれる場合
    """
    if n < 1:
        raise DigraphError(f"n は 1 以上が必要です: n={n}")
    domain_set = frozenset(domain)
    w.graph.require_vertices(domain_set)

    cones: dict[int, frozenset[int]] = {}
    excluded: set[int] = set()
    for v in domain_set:
        cone = desc_s(w, v, n)
        if cone.window_limited:
            excluded.add(v)
        else:
            cones[v] = cone.vertices

    if excluded:
        logger.warning(
            "δ_%d: 子孫錐が窓からはみ出すため %d 頂点を除外しました", n, len(excluded)
        )
    partition = partition_by_vertex_sets(cones)
    logger.debug("δ_%d: %d クラス", n, partition.class_count)
    return PartitionReport(partition=partition, excluded=frozenset(excluded))


def delta_monotonicity_check(
    w: Window, n: int, domain: Iterable[int]
) -> MonotonicityReport:
    """δ_n(u, v) ⇒ δ_{n+1}(u, v) を domain 上の全組で検査する。

    反例は窓の不具合を示す（有向グラフ一般で成り立つ性質のため）。
    """
    domain_set = frozenset(domain)
    current = delta_n_partition(w, n, domain_set)
    following = delta_n_partition(w, n + 1, domain_set)
    next_class = following.partition.class_map()

    checked = 0
    violations: list[tuple[int, int]] = []
    for members in current.partition.classes:
        comparable = sorted(v for v in members if v in next_class)
        for u, v in combinations(comparable, 2):
            checked += 1
            if next_class[u] != next_class[v]:
                violations.append((u, v))

    if violations:
        logger.warning("δ_%d の単調性に反する組が %d 件あります", n, len(violations))
    return MonotonicityReport(
        n=n,
        checked_pairs=checked,
        violations=tuple(violations),
        excluded=following.excluded,
    )


def _first_layer_ancestors(gamma: Window) -> dict[int, frozenset[int]]:
    """Γ の各頂点について、Γ 内の祖先（自身を含む）と Γ^1 の共通部分を返す。"""
    layers = layers_of(gamma)
    first = layers[1] if len(layers) > 1 else frozenset()
    return {
        v: reach_within(gamma.graph, [v], forward=False) & first
        for v in gamma.graph.vertices
    }


def find_G3_k(gamma: Window) -> G3Result:
    """窓の範囲で G3 を満たす最小の k を求める。

    k <= l <= depth-1 のすべての l、x ∈ Γ^l、z ∈ Γ(x) について
    anc(z) ∩ Γ^1 = anc(x) ∩ Γ^1 が成り立つ最小の k を返す。
    見つからなくても G3 の反証ではない。

    Raises:
        DigraphError: 窓の深さが 3 未満の場合
    """
    layers = layers_of(gamma)
    depth = len(layers) - 1
    if depth < 3:
        raise DigraphError(f"G3 の検査には深さ 3 以上が必要です: depth={depth}")

    first_anc = _first_layer_ancestors(gamma)
    bad_layers: dict[int, G3Witness] = {}
    for layer_index in range(1, depth):
        for x in sorted(layers[layer_index]):
            mismatch = next(
                (
                    z
                    for z in sorted(reach_within(gamma.graph, [x]))
                    if first_anc[z] != first_anc[x]
                ),
                None,
            )
            if mismatch is not None:
                bad_layers[layer_index] = G3Witness(
                    layer=layer_index,
                    x=x,
                    z=mismatch,
                    anc_x=tuple(sorted(first_anc[x])),
                    anc_z=tuple(sorted(first_anc[mismatch])),
                )
                break

    last_bad = max(bad_layers, default=0)
    k = last_bad + 1 if last_bad + 1 <= depth - 1 else None
    limit = k if k is not None else depth
    witnesses = {
        candidate: bad_layers[min(bad for bad in bad_layers if bad >= candidate)]
        for candidate in range(1, limit)
    }
    logger.debug("G3: k=%s（深さ %d の窓）", k, depth)
    return G3Result(k=k, witnesses=witnesses)


def rho_partition(gamma: Window, ctx: RhoContext) -> Partition[int]:
    """層 Γ^l を、層 l-k+1 にある Γ 内の祖先集合の一致で分割する。

    Raises:
        DigraphError: k < 1、または l が [k, depth] の外にある場合
    """
    layers = layers_of(gamma)
    depth = len(layers) - 1
    if ctx.k < 1:
        raise DigraphError(f"k は 1 以上が必要です: k={ctx.k}")
    if not (ctx.k <= ctx.base_layer <= depth):
        raise DigraphError(
            f"層 {ctx.base_layer} は範囲 [{ctx.k}, {depth}] の外にあります"
        )

    ancestor_layer = layers[ctx.base_layer - ctx.k + 1]
    keyed = {
        x: reach_within(gamma.graph, [x], forward=False) & ancestor_layer
        for x in layers[ctx.base_layer]
    }
    return partition_by_vertex_sets(keyed)


def rho_quotient_tree_check(gamma: Window, ctx: RhoContext) -> RhoTreeReport:
    """Γ(v)/ρ が根付き有向木かどうかを窓の範囲で検査する。

    層 max(l, 2k-1) の最初の ρ-クラス v を根とし、v の子孫を層ごとに ρ で分けた
    商を作る。各クラスの親クラスが 1 個以下なら木とみなし、最終層より手前の
    クラスの外次数を記録する。あわせて、Γ(v) と交わる ρ-クラスが Γ(v) に
    含まれるかを確認する。
    """
    layers = layers_of(gamma)
    depth = len(layers) - 1
    base_layer = max(ctx.base_layer, 2 * ctx.k - 1)
    if base_layer > depth:
        raise DigraphError(f"層 {base_layer} は窓の深さ {depth} を超えています")

    base_class = rho_partition(gamma, RhoContext(ctx.k, base_layer)).classes[0]
    below = reach_within(gamma.graph, base_class)

    classes: list[frozenset[int]] = []
    vertex_layer: dict[int, int] = {}
    contained = True
    for layer_index in range(base_layer, depth + 1):
        layer_classes = rho_partition(gamma, RhoContext(ctx.k, layer_index)).classes
        for cls in layer_classes:
            if not cls & below:
                continue
            if not cls <= below:
                contained = False
            classes.append(cls & below)
            vertex_layer.update(dict.fromkeys(cls & below, layer_index))

    partition = Partition.from_classes(classes)
    quotient_graph = quotient(induced_subdigraph(gamma.graph, below), partition).graph
    layer_of_class = {
        i: vertex_layer[min(cls)] for i, cls in enumerate(partition.classes)
    }
    root_index = partition.class_map()[min(base_class)]
    is_tree = all(
        quotient_graph.in_degree(i) <= (0 if i == root_index else 1)
        for i in quotient_graph.vertices
    )
    out_valencies = tuple(
        sorted(
            quotient_graph.out_degree(i)
            for i, layer in layer_of_class.items()
            if layer < depth
        )
    )
    distinct = set(out_valencies)
    return RhoTreeReport(
        base_class=tuple(sorted(base_class)),
        is_tree_to_window=is_tree,
        out_valencies=out_valencies,
        constant_out_valency=distinct.pop() if len(distinct) == 1 else None,
        classes_contained=contained,
        layers=(base_layer, depth),
    )


def R_partition(w: Window) -> PartitionReport:
    """関係 R の分割（Al(D) の辺 (A, B) ごとの Y_A ∩ X_B）を返す。

    完全な alternet の辺で覆われない内部頂点は excluded に入れる。
    """
    nets = alternets(w)
    al = alternet_graph(w, nets)
    classes = [nets[a].sinks & nets[b].sources for a, b in al.edges]
    partition = Partition.from_classes(classes)
    excluded = w.interior - partition.domain
    if excluded:
        logger.warning(
            "R: 完全な alternet に覆われない内部頂点 %d 個を除外しました", len(excluded)
        )
    return PartitionReport(partition=partition, excluded=excluded)


def delta_quotient(w: Window, n: int) -> DeltaQuotientReport:
    """分類できた頂点の誘導部分グラフを δ_n で割った商と、その次数を求める。

    外近傍がすべて分類済みのクラスでは外次数を、内部頂点だけからなり内近傍が
    すべて分類済みのクラスでは内次数を記録する。
    """
    report = delta_n_partition(w, n, w.graph.vertices)
    classified = report.partition.domain
    sub = induced_subdigraph(w.graph, classified)
    result = quotient(sub, report.partition)
    graph = result.graph

    out_valencies: dict[int, int] = {}
    in_valencies: dict[int, int] = {}
    for index, members in enumerate(report.partition.classes):
        if all(x in classified for v in members for x in w.graph.out_neighbors(v)):
            out_valencies[index] = graph.out_degree(index)
        if members <= w.interior and all(
            x in classified for v in members for x in w.graph.in_neighbors(v)
        ):
            in_valencies[index] = graph.in_degree(index)

    return DeltaQuotientReport(
        n=n,
        quotient=result,
        out_valencies=out_valencies,
        in_valencies=in_valencies,
        excluded=report.excluded,
    )
