"""小さな有限有向グラフの同型・自己同型を厳密に探索するサービス。

色の反復細分化（内外近傍の色の多重集合）で候補を絞り、残りは頂点の
個別化による後戻り探索で決める。返す写像はすべて辺ごとに再検証する。
"""

import logging
from collections import defaultdict
from collections.abc import Hashable, Mapping, Sequence

import networkx as nx
from networkx.utils import UnionFind

from digraph_window_experiments_py.config.env_config import get_iso_vertex_cap
from digraph_window_experiments_py.models.digraph import (
    Digraph,
    Edge,
    Partition,
    Window,
)
from digraph_window_experiments_py.models.errors import SizeCapError
from digraph_window_experiments_py.models.symmetry import (
    IsoResult,
    LayerOrbitDiagnostic,
    OrbitStructure,
)
from digraph_window_experiments_py.services.descent import layers_of

logger = logging.getLogger(__name__)

Pair = tuple[int, ...]


def _check_cap(g: Digraph, cap: int | None) -> None:
    limit = get_iso_vertex_cap() if cap is None else cap
    if g.vertex_count > limit:
        raise SizeCapError(limit, g.vertex_count)


class IsoSearch:
    """2 つの有向グラフの合併上で細分化と後戻り探索を行う探索文脈。

    合併の添字 0..n-1 が g1 の頂点（昇順）、n..2n-1 が g2 の頂点に対応する。

    Attributes:
        g1: 写像の定義域側の有向グラフ
        g2: 写像の値域側の有向グラフ
        nodes_explored: 探索木で訪れたノード数
    """

    def __init__(
        self,
        g1: Digraph,
        g2: Digraph,
        colors1: Mapping[int, Hashable] | None = None,
        colors2: Mapping[int, Hashable] | None = None,
    ) -> None:
        """探索文脈を初期化する。

        Args:
            g1: 定義域側の有向グラフ
            g2: 値域側の有向グラフ
            colors1: g1 の頂点の初期色（写像はこれを保つ）
            colors2: g2 の頂点の初期色
        """
        self.g1 = g1
        self.g2 = g2
        self.nodes_explored = 0
        self.size = g1.vertex_count
        self.ids = g1.sorted_vertices() + g2.sorted_vertices()
        self.side = [0] * self.size + [1] * g2.vertex_count
        index1 = {v: i for i, v in enumerate(g1.sorted_vertices())}
        index2 = {v: self.size + i for i, v in enumerate(g2.sorted_vertices())}
        self.index = (index1, index2)
        self.out_adj = [[index1[x] for x in g1.out_neighbors(v)] for v in index1] + [
            [index2[x] for x in g2.out_neighbors(v)] for v in index2
        ]
        self.in_adj = [[index1[x] for x in g1.in_neighbors(v)] for v in index1] + [
            [index2[x] for x in g2.in_neighbors(v)] for v in index2
        ]

        raw = [repr((colors1 or {}).get(v)) for v in index1] + [
            repr((colors2 or {}).get(v)) for v in index2
        ]
        ranks = {key: r for r, key in enumerate(sorted(set(raw)))}
        self.base_colors = self.refine([ranks[key] for key in raw])

    def refine(self, colors: list[int]) -> list[int]:
        """色が安定するまで（内外近傍の色の多重集合で）細分化する。

        色番号は署名の整列順で振り直すので、両側で比較可能なまま保たれる。
        """
        while True:
            signatures = [
                (
                    colors[i],
                    tuple(sorted(colors[j] for j in self.out_adj[i])),
                    tuple(sorted(colors[j] for j in self.in_adj[i])),
                )
                for i in range(len(colors))
            ]
            ranks = {sig: r for r, sig in enumerate(sorted(set(signatures)))}
            refined = [ranks[sig] for sig in signatures]
            if len(ranks) == len(set(colors)):
                return refined
            colors = refined

    def _cells(self, colors: list[int]) -> dict[int, tuple[list[int], list[int]]]:
        cells: dict[int, tuple[list[int], list[int]]] = defaultdict(lambda: ([], []))
        for i, color in enumerate(colors):
            cells[color][self.side[i]].append(i)
        return cells

    def _verify(self, mapping: dict[int, int]) -> bool:
        if len(mapping) != self.g1.vertex_count:
            return False
        if len(set(mapping.values())) != self.g2.vertex_count:
            return False
        if self.g1.edge_count != self.g2.edge_count:
            return False
        return all((mapping[u], mapping[v]) in self.g2.edges for u, v in self.g1.edges)

    def search(self, colors: list[int]) -> dict[int, int] | None:
        """色を保つ同型写像（頂点 ID の写像）を 1 つ探す。見つからなければ None。"""
        self.nodes_explored += 1
        colors = self.refine(colors)
        cells = self._cells(colors)
        if any(len(left) != len(right) for left, right in cells.values()):
            return None

        open_cells = [
            (len(left), color)
            for color, (left, _) in cells.items()
            if len(left) > 1
        ]
        if not open_cells:
            mapping = {
                self.ids[left[0]]: self.ids[right[0]] for left, right in cells.values()
            }
            return mapping if self._verify(mapping) else None

        _, target = min(open_cells)
        left, right = cells[target]
        v = left[0]
        fresh = max(colors) + 1
        for w in right:
            branch = list(colors)
            branch[v] = fresh
            branch[w] = fresh
            found = self.search(branch)
            if found is not None:
                return found
        return None

    def search_pinned(self, pins: Sequence[tuple[int, int]]) -> dict[int, int] | None:
        """g1 の頂点 a を g2 の頂点 b へ送る制約 (a, b) の下で写像を探す。"""
        colors = list(self.base_colors)
        fresh = max(colors, default=0) + 1
        for offset, (a, b) in enumerate(pins):
            colors[self.index[0][a]] = fresh + offset
            colors[self.index[1][b]] = fresh + offset
        return self.search(colors)


def _pin_colors(
    g: Digraph,
    root: int | None,
    level: Mapping[int, int] | None,
    vertex_colors: Mapping[int, Hashable] | None,
) -> dict[int, Hashable]:
    return {
        v: (
            v == root,
            None if level is None else level.get(v),
            None if vertex_colors is None else vertex_colors.get(v),
        )
        for v in g.vertices
    }


def is_isomorphic(
    g1: Digraph,
    g2: Digraph,
    roots: tuple[int, int] | None = None,
    levels: tuple[Mapping[int, int], Mapping[int, int]] | None = None,
    vertex_colors: tuple[Mapping[int, Hashable], Mapping[int, Hashable]] | None = None,
    cap: int | None = None,
) -> IsoResult:
    """2 つの有向グラフが同型かどうかを厳密に判定する。

    Args:
        g1: 有向グラフ
        g2: 有向グラフ
        roots: 互いに対応させる根の組（任意）
        levels: 保つべきレベル関数の組（任意）
        vertex_colors: 保つべき頂点色の組（任意）
        cap: 頂点数の上限（None なら DIGRAPH_ISO_CAP）

    Returns:
        同型写像（g1 → g2）と探索ノード数

    Raises:
        SizeCapError: どちらかの頂点数が上限を超える場合
    """
    _check_cap(g1, cap)
    _check_cap(g2, cap)
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return IsoResult(mapping=None, nodes_explored=0)

    colors1 = _pin_colors(
        g1,
        roots[0] if roots else None,
        levels[0] if levels else None,
        vertex_colors[0] if vertex_colors else None,
    )
    colors2 = _pin_colors(
        g2,
        roots[1] if roots else None,
        levels[1] if levels else None,
        vertex_colors[1] if vertex_colors else None,
    )
    search = IsoSearch(g1, g2, colors1, colors2)
    mapping = search.search(search.base_colors)
    logger.debug(
        "同型判定: %s（探索ノード %d）", mapping is not None, search.nodes_explored
    )
    return IsoResult(mapping=mapping, nodes_explored=search.nodes_explored)


class _OrbitBuilder:
    """生成系の作用による閉包と、代表元どうしの個別探索で厳密な軌道を求める。"""

    def __init__(
        self, g: Digraph, vertex_colors: Mapping[int, Hashable] | None
    ) -> None:
        self.g = g
        self.search = IsoSearch(g, g, vertex_colors, vertex_colors)
        self.generators: list[dict[int, int]] = []

    def _compatible(self, a: Pair, b: Pair) -> bool:
        colors = self.search.base_colors
        first, second = self.search.index
        return all(
            colors[first[x]] == colors[second[y]] for x, y in zip(a, b, strict=True)
        )

    def orbits(self, items: Sequence[Pair]) -> Partition[Pair]:
        uf: UnionFind = UnionFind(items)
        item_set = set(items)

        def absorb(generator: dict[int, int]) -> None:
            for item in items:
                image = tuple(generator[x] for x in item)
                if image in item_set:
                    uf.union(item, image)

        for generator in self.generators:
            absorb(generator)

        representatives: list[Pair] = []
        for item in items:
            for rep in representatives:
                if uf[rep] == uf[item]:
                    break
                if not self._compatible(rep, item):
                    continue
                found = self.search.search_pinned(list(zip(rep, item, strict=True)))
                if found is not None:
                    self.generators.append(found)
                    absorb(found)
                    break
            else:
                representatives.append(item)
        return Partition.from_classes(uf.to_sets())


def _to_vertex_partition(orbits: Partition[Pair]) -> Partition[int]:
    return Partition.from_classes([item[0] for item in cls] for cls in orbits.classes)


def automorphism_orbits(
    g: Digraph,
    vertex_colors: Mapping[int, Hashable] | None = None,
    cap: int | None = None,
) -> OrbitStructure:
    """自己同型群の生成系と、頂点軌道・辺軌道を求める。

    Args:
        g: 有向グラフ
        vertex_colors: 保つべき頂点色（任意）
        cap: 頂点数の上限

    Raises:
        SizeCapError: 頂点数が上限を超える場合
    """
    _check_cap(g, cap)
    builder = _OrbitBuilder(g, vertex_colors)
    vertex_orbits = _to_vertex_partition(
        builder.orbits([(v,) for v in g.sorted_vertices()])
    )
    edge_orbits: Partition[Edge] = Partition.from_classes(
        [(u, v) for u, v in cls] for cls in builder.orbits(g.sorted_edges()).classes
    )
    logger.debug(
        "自己同型: 生成元 %d, 頂点軌道 %d, 辺軌道 %d",
        len(builder.generators),
        vertex_orbits.class_count,
        edge_orbits.class_count,
    )
    return OrbitStructure(
        generators=tuple(builder.generators),
        vertex_orbits=vertex_orbits,
        edge_orbits=edge_orbits,
    )


def check_edge_transitive(g: Digraph, cap: int | None = None) -> bool:
    """Aut(g) が辺集合上で推移的なら True（辺のないグラフも True）。"""
    return automorphism_orbits(g, cap=cap).edge_orbits.class_count <= 1


def check_distance_transitive(g: Digraph, cap: int | None = None) -> bool:
    """各 s について、有向距離がちょうど s の頂点対が 1 つの軌道をなすなら True。"""
    _check_cap(g, cap)
    by_distance: dict[int, list[Pair]] = defaultdict(list)
    lengths = dict(nx.all_pairs_shortest_path_length(g.to_networkx()))
    for u in g.sorted_vertices():
        for v, distance in sorted(lengths[u].items()):
            by_distance[distance].append((u, v))

    builder = _OrbitBuilder(g, None)
    for distance in sorted(by_distance):
        if builder.orbits(by_distance[distance]).class_count != 1:
            logger.debug("距離 %d の頂点対が複数の軌道に分かれます", distance)
            return False
    return True


def layer_transitivity_diagnostic(
    gamma: Window, cap: int | None = None
) -> LayerOrbitDiagnostic:
    """根・層・内部フラグを保つ窓自己同型による層ごとの軌道数を求める。"""
    layers = layers_of(gamma)
    first_layer: dict[int, int] = {}
    for i, layer in enumerate(layers):
        for v in layer:
            first_layer.setdefault(v, i)
    colors = {v: (first_layer[v], gamma.is_interior(v)) for v in gamma.graph.vertices}
    orbits = automorphism_orbits(gamma.graph, vertex_colors=colors, cap=cap)
    orbit_map = orbits.vertex_orbits.class_map()
    return LayerOrbitDiagnostic(
        orbit_counts=tuple(len({orbit_map[v] for v in layer}) for layer in layers)
    )
