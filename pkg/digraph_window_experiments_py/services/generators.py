"""無限有向グラフ族の有限窓を生成するサービス。

D(m, M)・Σ(m, M)・根付き外向き木・正則有向木・整数直線・直線の子孫集合、
およびオラクル検査用の乱択レベル付き DAG を、パラメータから決定的に構築する。
"""

import logging
import random
from collections import deque
from fractions import Fraction
from itertools import combinations
from math import comb

import networkx as nx

from digraph_window_experiments_py.config.env_config import get_generator_vertex_cap
from digraph_window_experiments_py.models.digraph import Digraph, Edge, Window
from digraph_window_experiments_py.models.errors import (
    GeneratorParameterError,
    SizeCapError,
)
from digraph_window_experiments_py.models.generator import (
    BipartiteDigraph,
    GeneratorFamily,
    GeneratorSpec,
)
from digraph_window_experiments_py.services.digraph_ops import (
    induced_window,
    relabel_dense,
)

logger = logging.getLogger(__name__)


def _resolve_cap(vertex_cap: int | None) -> int:
    return get_generator_vertex_cap() if vertex_cap is None else vertex_cap


def _check_m_M(m: int, M: int) -> None:
    if m < 1:
        raise GeneratorParameterError(f"m は 1 以上が必要です: m={m}")
    if M < m:
        raise GeneratorParameterError(f"M < m は許可されていません: m={m}, M={M}")


def _check_cap(size: int, cap: int) -> None:
    if size > cap:
        raise SizeCapError(cap, size)


def _dmm_tree_size(k: int, levels: int, cap: int) -> int:
    """T の深さ levels の内向き木の頂点数 1 + k + ... + k^levels を上限付きで数える。"""
    total = 0
    layer = 1
    for _ in range(levels + 1):
        total += layer
        if total > cap:
            return total
        layer *= k
    return total


def gen_DmM(m: int, M: int, L: int, vertex_cap: int | None = None) -> Window:
    """D(m, M) の窓を生成する。

    木 T（外次数 1、内次数 k = C(M, m)）のシンク t_L から深さ L までの内向き木を作り、
    各 T 頂点 t に M 個の頂点 {t}×Ω を載せる。T の辺 (t_i, t) の t_i は Ω の i 番目の
    m-部分集合 {a_1, ..., a_m}（辞書式）に対応し、辺 ((t_i, c), (t, a_l)) をすべて張る。

    Args:
        m: 外次数（1 <= m <= M）
        M: |Ω|
        L: 窓の深さ（1 以上）
        vertex_cap: 頂点数の上限（None なら GENERATOR_VERTEX_CAP）

    Returns:
        深さ 1..L-1 の T 頂点上の頂点を内部とし、level = L - 深さ とする窓

    Raises:
        GeneratorParameterError: パラメータが不正な場合
        SizeCapError: 頂点数が上限を超える場合
    """
    _check_m_M(m, M)
    if L < 1:
        raise GeneratorParameterError(f"L は 1 以上が必要です: L={L}")
    cap = _resolve_cap(vertex_cap)
    k = comb(M, m)
    t_count = _dmm_tree_size(k, L, cap)
    _check_cap(t_count * M, cap)

    subsets = list(combinations(range(M), m))
    # T 頂点を幅優先で番号付けする。T 頂点 t の D 頂点は t*M + a
    t_depth = [0]
    t_path: list[tuple[int, ...]] = [()]
    t_children: list[list[int]] = [[]]
    frontier = [0]
    for depth in range(1, L + 1):
        next_frontier = []
        for parent in frontier:
            for _ in range(k):
                child = len(t_depth)
                t_depth.append(depth)
                t_path.append((*t_path[parent], len(t_children[parent])))
                t_children.append([])
                t_children[parent].append(child)
                next_frontier.append(child)
        frontier = next_frontier

    edges: list[Edge] = []
    for t, children in enumerate(t_children):
        for index, child in enumerate(children):
            for c in range(M):
                for a in subsets[index]:
                    edges.append((child * M + c, t * M + a))

    vertex_count = len(t_depth) * M
    labels = {
        t * M + a: f"(t{'.'.join(map(str, t_path[t])) or 'root'}, {a})"
        for t in range(len(t_depth))
        for a in range(M)
    }
    graph = Digraph.from_edges(range(vertex_count), edges, labels=labels)
    interior = frozenset(
        t * M + a
        for t, depth in enumerate(t_depth)
        if 1 <= depth <= L - 1
        for a in range(M)
    )
    level = {t * M + a: L - t_depth[t] for t in range(len(t_depth)) for a in range(M)}
    logger.debug(
        "D(%d,%d) の窓を生成しました: T 頂点 %d, 頂点 %d, 辺 %d",
        m,
        M,
        len(t_depth),
        vertex_count,
        len(edges),
    )
    return Window(
        graph=graph,
        interior=interior,
        level=level,
        meta={"family": str(GeneratorFamily.DMM), "m": m, "M": M, "levels": L},
    )


def gen_sigma(m: int, M: int, vertex_cap: int | None = None) -> BipartiteDigraph:
    """二部有向グラフ Σ(m, M) を生成する。

    X は C(M, m) 個の大きさ M のブロックからなり、ブロック i の各頂点の外近傍は
    ちょうど Y の i 番目の m-部分集合になる。頂点 ID は X が先、Y が後。

    Raises:
        GeneratorParameterError: M < m などパラメータが不正な場合
        SizeCapError: 頂点数が上限を超える場合
    """
    _check_m_M(m, M)
    cap = _resolve_cap(vertex_cap)
    k = comb(M, m)
    _check_cap(k * M + M, cap)

    sink_offset = k * M
    edges: list[Edge] = []
    for block, subset in enumerate(combinations(range(M), m)):
        for c in range(M):
            for a in subset:
                edges.append((block * M + c, sink_offset + a))

    labels = {block * M + c: f"x({block}, {c})" for block in range(k) for c in range(M)}
    labels.update({sink_offset + a: f"y({a})" for a in range(M)})
    graph = Digraph.from_edges(range(sink_offset + M), edges, labels=labels)
    return BipartiteDigraph(
        graph=graph,
        sources=frozenset(range(sink_offset)),
        sinks=frozenset(range(sink_offset, sink_offset + M)),
    )


def sigma_component(m: int, M: int, vertex_cap: int | None = None) -> BipartiteDigraph:
    """Σ(m, M) のうち最初のシンクを含む連結成分を返す。

    m >= 2 なら Σ(m, M) 自身、m = 1 なら星 K⃗_{M,1} になる。
    D(1, M) の alternet はこの成分と比較する。
    """
    sigma = gen_sigma(m, M, vertex_cap=vertex_cap)
    first_sink = min(sigma.sinks)
    component = nx.node_connected_component(
        sigma.graph.underlying_graph(), first_sink
    )
    edges = [(u, v) for u, v in sigma.graph.edges if u in component]
    sub = Digraph.from_edges(
        component, edges, labels={v: sigma.graph.labels[v] for v in component}
    )
    dense, mapping = relabel_dense(sub)
    return BipartiteDigraph(
        graph=dense,
        sources=frozenset(mapping[v] for v in component if v in sigma.sources),
        sinks=frozenset(mapping[v] for v in component if v in sigma.sinks),
    )


def gen_rooted_out_tree(b: int, d: int, vertex_cap: int | None = None) -> Window:
    """各頂点が b 個の子を持つ深さ d の根付き外向き木を生成する。

    Args:
        b: 子の数（1 以上）
        d: 深さ（1 以上）
        vertex_cap: 頂点数の上限

    Returns:
        深さ 0..d-1 を内部とし、level = 深さ とする窓（根は頂点 0）
    """
    if b < 1 or d < 1:
        raise GeneratorParameterError(f"b, d は 1 以上が必要です: b={b}, d={d}")
    cap = _resolve_cap(vertex_cap)
    _check_cap(_dmm_tree_size(b, d, cap), cap)

    depth_of = [0]
    edges: list[Edge] = []
    frontier = [0]
    for depth in range(1, d + 1):
        next_frontier = []
        for parent in frontier:
            for _ in range(b):
                child = len(depth_of)
                depth_of.append(depth)
                edges.append((parent, child))
                next_frontier.append(child)
        frontier = next_frontier

    graph = Digraph.from_edges(range(len(depth_of)), edges)
    return Window(
        graph=graph,
        interior=frozenset(v for v, depth in enumerate(depth_of) if depth < d),
        level=dict(enumerate(depth_of)),
        meta={"family": str(GeneratorFamily.ROOTED_OUT_TREE), "b": b, "depth": d},
    )


def gen_regular_tree(
    out_valency: int,
    in_valency: int,
    radius: int,
    vertex_cap: int | None = None,
) -> Window:
    """外次数 out_valency・内次数 in_valency の無限正則有向木の球を生成する。

    中心（頂点 0）から基礎無向グラフでの距離が radius 以下の頂点を含む。
    距離が radius 未満の頂点を内部とし、レベルは中心からの符号付き変位とする。

    Raises:
        GeneratorParameterError: 次数が 1 未満、または radius が 1 未満の場合
        SizeCapError: 頂点数が上限を超える場合
    """
    if out_valency < 1 or in_valency < 1:
        raise GeneratorParameterError(
            f"次数は 1 以上が必要です: out={out_valency}, in={in_valency}"
        )
    if radius < 1:
        raise GeneratorParameterError(f"radius は 1 以上が必要です: radius={radius}")
    cap = _resolve_cap(vertex_cap)

    level = [0]
    distance = [0]
    edges: list[Edge] = []
    # (頂点, 親への辺が出る向きか) 親が外近傍なら True
    queue: deque[tuple[int, bool | None]] = deque([(0, None)])
    while queue:
        v, parent_is_out = queue.popleft()
        if distance[v] == radius:
            continue
        new_out = out_valency - (1 if parent_is_out is True else 0)
        new_in = in_valency - (1 if parent_is_out is False else 0)
        for is_out, count in ((True, new_out), (False, new_in)):
            for _ in range(count):
                w = len(level)
                _check_cap(w + 1, cap)
                distance.append(distance[v] + 1)
                if is_out:
                    level.append(level[v] + 1)
                    edges.append((v, w))
                    queue.append((w, False))
                else:
                    level.append(level[v] - 1)
                    edges.append((w, v))
                    queue.append((w, True))

    graph = Digraph.from_edges(range(len(level)), edges)
    return Window(
        graph=graph,
        interior=frozenset(v for v, dist in enumerate(distance) if dist < radius),
        level=dict(enumerate(level)),
        meta={
            "family": str(GeneratorFamily.REGULAR_TREE),
            "out_valency": out_valency,
            "in_valency": in_valency,
            "radius": radius,
        },
    )


def gen_line_z(length: int) -> Window:
    """頂点数 length の有向パス（ℤ の窓）を生成する。両端以外を内部とする。"""
    if length < 2:
        raise GeneratorParameterError(f"length は 2 以上が必要です: length={length}")
    graph = Digraph.from_edges(range(length), [(i, i + 1) for i in range(length - 1)])
    return Window(
        graph=graph,
        interior=frozenset(range(1, length - 1)),
        level={v: v for v in range(length)},
        meta={"family": str(GeneratorFamily.LINE_Z), "length": length},
    )


def gen_desc_of_line(m: int, M: int, L: int, vertex_cap: int | None = None) -> Window:
    """D(m, M) の窓の中で、T の基底光線上の有向直線の子孫集合が誘導する窓を返す。

    基底光線は各深さで子番号 0 をたどる T 頂点 t_0（シンク）, t_1, ..., t_L であり、
    直線は頂点 (t_j, 0) からなる。子番号 0 は部分集合 {0, ..., m-1} に対応するので、
    子孫集合は各 t_j 上の {(t_j, a) : a < m} になる。
    """
    window = gen_DmM(m, M, L, vertex_cap=vertex_cap)
    k = comb(M, m)
    # 幅優先番号付けでは、深さ j の最初の T 頂点が光線上の t_j になる
    ray = []
    first_at_depth = 0
    for depth in range(L + 1):
        ray.append(first_at_depth)
        first_at_depth += k**depth
    descendants = {t * M + a for t in ray for a in range(m)}
    sub = induced_window(window, descendants)
    return Window(
        graph=sub.graph,
        interior=sub.interior,
        level=sub.level,
        meta={"family": str(GeneratorFamily.DESC_OF_LINE), "m": m, "M": M, "levels": L},
    )


def parse_edge_prob(value: Fraction | str | int | float) -> Fraction:
    """辺の確率を有理数として解釈する（"1/2" のような文字列を許す）。

    Raises:
        GeneratorParameterError: 解釈できない、または (0, 1] の外にある場合
    """
    try:
        prob = value if isinstance(value, Fraction) else Fraction(str(value))
    except (ValueError, ZeroDivisionError) as e:
        raise GeneratorParameterError(f"edge_prob を解釈できません: {value}") from e
    if not (0 < prob <= 1):
        raise GeneratorParameterError(f"edge_prob は (0, 1] が必要です: {value}")
    return prob


def gen_random_layered_dag(
    levels: int,
    width: int,
    edge_prob: Fraction | str | int,
    seed: int,
) -> Window:
    """乱択レベル付き DAG を生成する。

    層 i から層 i+1 への各候補辺を確率 edge_prob で独立に採用する。乱数は
    random.Random(seed) から整数で引くため、同じ引数なら同じ出力になる。
    孤立頂点は除去し、残った頂点を昇順に詰め直す。

    Raises:
        GeneratorParameterError: パラメータが不正、または除去後に空になった場合
    """
    if levels < 2 or width < 1:
        raise GeneratorParameterError(
            f"levels >= 2, width >= 1 が必要です: levels={levels}, width={width}"
        )
    prob = parse_edge_prob(edge_prob)
    rng = random.Random(seed)

    edges: list[Edge] = []
    for i in range(levels - 1):
        for a in range(width):
            for b in range(width):
                if rng.randrange(prob.denominator) < prob.numerator:
                    edges.append((i * width + a, (i + 1) * width + b))

    touched = sorted({v for edge in edges for v in edge})
    if not touched:
        raise GeneratorParameterError(
            f"孤立頂点の除去後にグラフが空になりました（seed={seed}）"
        )
    mapping = {v: i for i, v in enumerate(touched)}
    graph = Digraph.from_edges(
        range(len(touched)), [(mapping[u], mapping[v]) for u, v in edges]
    )
    return Window(
        graph=graph,
        interior=graph.vertices,
        level={mapping[v]: v // width for v in touched},
        meta={
            "family": str(GeneratorFamily.RANDOM_LAYERED_DAG),
            "levels": levels,
            "width": width,
            "edge_prob": str(prob),
            "seed": seed,
        },
    )


def _int_param(spec: GeneratorSpec, key: str) -> int:
    if key not in spec.params:
        raise GeneratorParameterError(f"{spec.family} にはパラメータ {key} が必要です")
    try:
        return int(spec.params[key])
    except ValueError as e:
        raise GeneratorParameterError(
            f"パラメータ {key} は整数が必要です: {spec.params[key]}"
        ) from e


def generate(spec: GeneratorSpec, vertex_cap: int | None = None) -> Window:
    """生成パラメータに従って窓を生成する。パラメータは meta["generator"] に保存する。

    Raises:
        GeneratorParameterError: 必要なパラメータが欠けている、または不正な場合
    """
    match spec.family:
        case GeneratorFamily.DMM:
            window = gen_DmM(
                _int_param(spec, "m"),
                _int_param(spec, "M"),
                _int_param(spec, "levels"),
                vertex_cap=vertex_cap,
            )
        case GeneratorFamily.SIGMA:
            sigma = gen_sigma(
                _int_param(spec, "m"), _int_param(spec, "M"), vertex_cap=vertex_cap
            )
            window = Window(
                graph=sigma.graph,
                interior=sigma.graph.vertices,
                level={v: 0 if v in sigma.sources else 1 for v in sigma.graph.vertices},
            )
        case GeneratorFamily.ROOTED_OUT_TREE:
            window = gen_rooted_out_tree(
                _int_param(spec, "b"), _int_param(spec, "depth"), vertex_cap=vertex_cap
            )
        case GeneratorFamily.REGULAR_TREE:
            window = gen_regular_tree(
                _int_param(spec, "out_valency"),
                _int_param(spec, "in_valency"),
                _int_param(spec, "radius"),
                vertex_cap=vertex_cap,
            )
        case GeneratorFamily.LINE_Z:
            window = gen_line_z(_int_param(spec, "length"))
        case GeneratorFamily.DESC_OF_LINE:
            window = gen_desc_of_line(
                _int_param(spec, "m"),
                _int_param(spec, "M"),
                _int_param(spec, "levels"),
                vertex_cap=vertex_cap,
            )
        case GeneratorFamily.RANDOM_LAYERED_DAG:
            window = gen_random_layered_dag(
                _int_param(spec, "levels"),
                _int_param(spec, "width"),
                str(spec.params.get("edge_prob", "1/2")),
                _int_param(spec, "seed"),
            )
        case _:
            raise GeneratorParameterError(f"未知の有向グラフ族です: {spec.family}")

    logger.info(
        "%s を生成しました: 頂点 %d, 辺 %d",
        spec.family,
        window.graph.vertex_count,
        window.graph.edge_count,
    )
    return Window(
        graph=window.graph,
        interior=window.interior,
        level=window.level,
        meta={**window.meta, "generator": spec.to_dict()},
    )
