"""子孫・祖先集合、子孫部分窓の切り出し、層プロファイルを計算するサービス。"""

import logging
from collections import Counter, deque
from collections.abc import Callable, Iterable

from digraph_window_experiments_py.models.digraph import Digraph, Window
from digraph_window_experiments_py.models.errors import (
    DigraphError,
    GeneratorParameterError,
    WindowTooSmallError,
)
from digraph_window_experiments_py.models.profile import (
    ConeResult,
    InValencyRefutation,
    LayerProfile,
    P3Verdict,
)
from digraph_window_experiments_py.services.digraph_ops import induced_subdigraph

logger = logging.getLogger(__name__)

# 窓が示せる安定化の最小の長さ（N 自身と 2 回の繰り返し）
MIN_STABLE_SEGMENT = 3


def _s_arc_endpoints(
    w: Window,
    u: int,
    s: int,
    neighbors: Callable[[int], tuple[int, ...]],
) -> ConeResult:
    """u から長さ s の s-弧で到達する頂点を求める。

    s-弧は u_{i-1} ≠ u_{i+1} を満たすので、状態を (直前の頂点, 現在の頂点) とし、
    展開のたびに直前の頂点を除外する。
    """
    if s < 0:
        raise DigraphError(f"s は 0 以上が必要です: s={s}")
    w.graph.require_vertices([u])

    states: set[tuple[int | None, int]] = {(None, u)}
    window_limited = False
    for _ in range(s):
        next_states: set[tuple[int | None, int]] = set()
        for prev, cur in states:
            if not w.is_interior(cur):
                window_limited = True
            for nxt in neighbors(cur):
                if nxt != prev:
                    next_states.add((cur, nxt))
        states = next_states
        if not states:
            break
    return ConeResult(
        vertices=frozenset(cur for _, cur in states),
        window_limited=window_limited,
    )


def desc_s(w: Window, u: int, s: int) -> ConeResult:
    """D^s(u): u から s-弧で到達できる頂点の集合を返す。

    Raises:
        UnknownVertexError: u が窓に存在しない場合
    """
    return _s_arc_endpoints(w, u, s, w.graph.out_neighbors)


def anc_s(w: Window, u: int, s: int) -> ConeResult:
    """D^{-s}(u): u へ s-弧で到達できる頂点の集合を返す。"""
    return _s_arc_endpoints(w, u, s, w.graph.in_neighbors)


def _levels_if_graded(
    graph: Digraph, layers: list[frozenset[int]]
) -> dict[int, int] | None:
    """層が互いに素で、すべての辺が隣接層間を結ぶときだけレベルを返す。"""
    level: dict[int, int] = {}
    for i, layer in enumerate(layers):
        for v in layer:
            if v in level:
                return None
            level[v] = i
    for u, v in graph.edges:
        if level[v] != level[u] + 1:
            return None
    return level


def descendant_window(w: Window, root: int, d: int) -> Window:
    """根 α の子孫部分グラフ Γ(α) を深さ d まで切り出す。

    層 Γ^i = D^i(α) (i = 0..d) の和集合上の誘導部分グラフを返す。
    meta に root・depth・layers を記録する。層が互いに素で辺が隣接層間だけを
    結ぶ場合に限り level = 層番号 を設定する。

    Args:
        w: 元の窓
        root: 根 α
        d: 深さ（1 以上）

    Returns:
        深さ d 未満の層にあり元の窓で内部だった頂点を内部とする窓

    Raises:
        WindowTooSmallError: 深さ d 未満の層に境界頂点が含まれる場合
    """
    if d < 1:
        raise GeneratorParameterError(f"深さ d は 1 以上が必要です: d={d}")
    w.graph.require_vertices([root])

    layers = [desc_s(w, root, i).vertices for i in range(d + 1)]
    for i, layer in enumerate(layers[:d]):
        boundary = sorted(layer - w.interior)
        if boundary:
            raise WindowTooSmallError(i, boundary[0])

    vertices = frozenset().union(*layers)
    graph = induced_subdigraph(w.graph, vertices)
    first_depth: dict[int, int] = {}
    for i, layer in enumerate(layers):
        for v in layer:
            first_depth.setdefault(v, i)
    interior = frozenset(
        v for v, depth in first_depth.items() if depth < d and w.is_interior(v)
    )
    logger.debug(
        "子孫窓を切り出しました: 根 %d, 深さ %d, 層サイズ %s",
        root,
        d,
        [len(layer) for layer in layers],
    )
    return Window(
        graph=graph,
        interior=interior,
        level=_levels_if_graded(graph, layers),
        meta={
            "root": root,
            "depth": d,
            "layers": tuple(tuple(sorted(layer)) for layer in layers),
        },
    )


def root_of(gamma: Window) -> int:
    """子孫窓の根を返す。

    Raises:
        DigraphError: descendant_window で作られた窓でない場合
    """
    if "root" not in gamma.meta:
        raise DigraphError("根付き子孫窓が必要です（descendant_window の出力を渡す）")
    return int(gamma.meta["root"])


def layers_of(gamma: Window) -> list[frozenset[int]]:
    """子孫窓の層 Γ^0, ..., Γ^d を返す。"""
    if "layers" not in gamma.meta:
        raise DigraphError("根付き子孫窓が必要です（descendant_window の出力を渡す）")
    return [frozenset(layer) for layer in gamma.meta["layers"]]


def reach_within(
    graph: Digraph, sources: Iterable[int], forward: bool = True
) -> frozenset[int]:
    """sources から有向パスで到達できる頂点（sources 自身を含む）を返す。

    forward=False なら辺を逆向きにたどり、祖先を求める。
    """
    neighbors = graph.out_neighbors if forward else graph.in_neighbors
    seen = set(sources)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for nxt in neighbors(v):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def _stabilization(in_valencies: tuple[int, ...]) -> tuple[int | None, int | None]:
    """窓で確認できる安定化指数 N と究極内次数 r_N を求める。

    r_i の最後の一定区間が窓の端まで続き、長さが MIN_STABLE_SEGMENT 以上の
    ときだけ N を確定する。
    """
    if not in_valencies:
        return None, None
    last = in_valencies[-1]
    start = len(in_valencies)
    while start > 0 and in_valencies[start - 1] == last:
        start -= 1
    if len(in_valencies) - start < MIN_STABLE_SEGMENT:
        return None, None
    # in_valencies[0] が r_1
    return start + 1, last


def _p3_verdict(sizes: tuple[int, ...]) -> P3Verdict:
    if len(sizes) < 2:
        return P3Verdict.inconclusive()
    for i in range(1, len(sizes)):
        if sizes[i] <= sizes[i - 1]:
            return P3Verdict.fails_at(i)
    return P3Verdict.holds()


def layer_profile(gamma: Window) -> LayerProfile:
    """根付き子孫窓の層サイズ・内次数列・N・r_N・P3 判定を求める。

    層 i の頂点の Γ 内での内次数が一様でなければ、その層で内次数列を打ち切り、
    反証 (InValencyRefutation) を記録する。空の層に達したらそこで打ち切る。

    Args:
        gamma: descendant_window の出力

    Returns:
        層プロファイル
    """
    root = root_of(gamma)
    layers = layers_of(gamma)
    depth = len(layers) - 1
    graph = gamma.graph
    sizes = tuple(len(layer) for layer in layers)

    interior_depth = 0
    while interior_depth < len(layers) and layers[interior_depth] <= gamma.interior:
        interior_depth += 1

    in_valencies: list[int] = []
    refutation = None
    for i in range(1, depth + 1):
        if i - 1 >= interior_depth or not layers[i]:
            break
        valencies = {v: graph.in_degree(v) for v in layers[i]}
        distinct = set(valencies.values())
        if len(distinct) != 1:
            refutation = InValencyRefutation(layer=i, valencies=valencies)
            logger.warning(
                "層 %d の内次数が一様ではありません: %s",
                i,
                dict(Counter(valencies.values())),
            )
            break
        in_valencies.append(distinct.pop())

    r = tuple(in_valencies)
    N, r_N = (None, None) if refutation else _stabilization(r)
    return LayerProfile(
        depth=depth,
        out_valency=graph.out_degree(root),
        layer_sizes=sizes,
        in_valencies=r,
        interior_depth=interior_depth,
        N=N,
        r_N=r_N,
        p3=_p3_verdict(sizes),
        refutation=refutation,
    )
