"""窓の JSON 入出力、レポートの JSON 化、DOT 形式での書き出しを行うサービス。

JSON はキーを整列し、集合は昇順リストとして書き出すため、同じ入力からは
常にバイト単位で同じ出力になる。
"""

import dataclasses
import hashlib
import json
import logging
from collections.abc import Mapping
from enum import Enum
from pathlib import Path
from typing import Any

from digraph_window_experiments_py.models.alternet import (
    AlternetGraph,
    ClassCReport,
)
from digraph_window_experiments_py.models.digraph import (
    Digraph,
    Edge,
    Partition,
    Window,
)
from digraph_window_experiments_py.models.errors import (
    DigraphError,
    DigraphFormatError,
)
from digraph_window_experiments_py.models.relation import MonotonicityReport
from digraph_window_experiments_py.models.symmetry import (
    IsoResult,
    LayerOrbitDiagnostic,
)
from digraph_window_experiments_py.models.verdict import PropertyReport, ZLabeling
from digraph_window_experiments_py.services.digraph_ops import build_digraph
from digraph_window_experiments_py.services.reachability import reach_partition
from digraph_window_experiments_py.services.relations import delta_n_partition

logger = logging.getLogger(__name__)

COLOR_BY_CHOICES = ("level", "delta", "alternet")

# JSON に含める派生プロパティ
_DERIVED_PROPERTIES: dict[type, tuple[str, ...]] = {
    AlternetGraph: ("loose_attachment",),
    ClassCReport: ("member",),
    IsoResult: ("isomorphic",),
    LayerOrbitDiagnostic: ("consistent_with_p2",),
    MonotonicityReport: ("passed",),
    PropertyReport: ("block_count",),
    ZLabeling: ("labeled",),
}


def _dump(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dumps_json(data: Any) -> str:
    """JSON 化できる値を正準形の JSON テキストにする。"""
    return _dump(to_jsonable(data))


def window_to_dict(w: Window) -> dict[str, Any]:
    """窓を JSON 有向グラフ形式の辞書に変換する。"""
    vertices = []
    for v in w.graph.sorted_vertices():
        entry: dict[str, Any] = {"id": v, "interior": w.is_interior(v)}
        level = w.level_of(v)
        if level is not None:
            entry["level"] = level
        if v in w.graph.labels:
            entry["label"] = w.graph.labels[v]
        vertices.append(entry)
    return {
        "meta": to_jsonable(dict(w.meta)),
        "vertices": vertices,
        "edges": [list(edge) for edge in w.graph.sorted_edges()],
    }


def dumps_window(w: Window) -> str:
    """窓を正準形の JSON テキストにする。"""
    return _dump(window_to_dict(w))


def input_hash(w: Window) -> str:
    """正準形 JSON テキストの SHA-256 を返す。"""
    return hashlib.sha256(dumps_window(w).encode("utf-8")).hexdigest()


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DigraphFormatError(message)


def window_from_dict(data: Any) -> Window:
    """JSON 有向グラフ形式の辞書から窓を復元する。

    頂点 ID は 0..n-1 の連番でなければならない。

    Raises:
        DigraphFormatError: スキーマに合わない場合
        DigraphError: ループ辺・範囲外の端点・レベル規約違反がある場合
    """
    _require(isinstance(data, dict), "最上位はオブジェクトが必要です")
    vertices = data.get("vertices")
    edges = data.get("edges", [])
    _require(isinstance(vertices, list), "vertices はリストが必要です")
    _require(isinstance(edges, list), "edges はリストが必要です")

    ids = []
    interior: set[int] = set()
    levels: dict[int, int] = {}
    labels: dict[int, str] = {}
    for entry in vertices:
        _require(
            isinstance(entry, dict) and isinstance(entry.get("id"), int),
            f"頂点には整数の id が必要です: {entry}",
        )
        v = entry["id"]
        ids.append(v)
        if entry.get("interior", True):
            interior.add(v)
        if "level" in entry:
            _require(isinstance(entry["level"], int), f"level は整数が必要です: {v}")
            levels[v] = entry["level"]
        if "label" in entry:
            labels[v] = str(entry["label"])
    _require(
        sorted(ids) == list(range(len(ids))),
        "頂点 id は 0..n-1 の連番が必要です",
    )
    for edge in edges:
        _require(
            isinstance(edge, list)
            and len(edge) == 2
            and all(isinstance(x, int) for x in edge),
            f"辺は整数 2 つのリストが必要です: {edge}",
        )
    graph = build_digraph(len(ids), [(u, v) for u, v in edges], labels=labels)
    level = levels if levels else None
    if level is not None and len(levels) != len(ids):
        logger.warning("level のない頂点があります（%d/%d）", len(levels), len(ids))
    meta = data.get("meta", {})
    _require(isinstance(meta, dict), "meta はオブジェクトが必要です")
    return Window(graph=graph, interior=frozenset(interior), level=level, meta=meta)


def loads_window(text: str) -> Window:
    """JSON テキストから窓を読み込む。

    Raises:
        DigraphFormatError: JSON として不正、またはスキーマに合わない場合
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DigraphFormatError(e.msg, e.lineno, e.colno) from e
    return window_from_dict(data)


def read_window(path: str | Path) -> Window:
    """JSON ファイルから窓を読み込む。"""
    return loads_window(Path(path).read_text(encoding="utf-8"))


def write_json(data: Any, path: str | Path) -> None:
    """JSON 化できる値を正準形でファイルに書き出す。"""
    Path(path).write_text(dumps_json(data), encoding="utf-8")


def write_window(w: Window, path: str | Path) -> None:
    Path(path).write_text(dumps_window(w), encoding="utf-8")


def _key(value: Any) -> str:
    if isinstance(value, tuple):
        return ",".join(str(x) for x in value)
    return str(value)


def to_jsonable(obj: Any) -> Any:
    """データモデルを JSON 化できる値に変換する。

    dataclass はフィールド名の辞書、Enum は値、集合は昇順リスト、
    Partition はクラスのリスト、タプルのキーは "a,b" 形式の文字列にする。
    repr=False のフィールド（隣接リストなどの派生データ）は含めない。
    """
    if isinstance(obj, Enum):
        return obj.value
    if obj is None or isinstance(obj, bool | int | float | str):
        return obj
    if isinstance(obj, Window):
        return window_to_dict(obj)
    if isinstance(obj, Digraph):
        return {
            "vertices": obj.sorted_vertices(),
            "edges": [list(edge) for edge in obj.sorted_edges()],
        }
    if isinstance(obj, Partition):
        return [to_jsonable(cls) for cls in obj.classes]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        data = {
            f.name: to_jsonable(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
            if f.repr
        }
        for name in _DERIVED_PROPERTIES.get(type(obj), ()):
            data[name] = to_jsonable(getattr(obj, name))
        return data
    if isinstance(obj, Mapping):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, set | frozenset):
        return [to_jsonable(x) for x in sorted(obj)]
    if isinstance(obj, tuple | list):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"JSON に変換できない値です: {type(obj).__name__}")


def _palette(count: int) -> list[str]:
    """色相を等分した HSV 色を count 個返す。"""
    return [f"{i / max(count, 1):.3f} 0.600 0.900" for i in range(count)]


def _dot_escape(text: object) -> str:
    """DOT の二重引用符つき文字列に入れられるよう \\ と " をエスケープする。"""
    return str(text).replace("\\", "\\\\").replace('"', '\\"')


def dot_coloring(
    w: Window, color_by: str, n: int = 1
) -> tuple[dict[int, int], dict[Edge, int]]:
    """DOT 書き出し用に、頂点または辺を色クラスの番号に割り当てる。

    Args:
        w: 窓
        color_by: "level"（頂点のレベル）、"delta"（δ_n のクラス）、
            "alternet"（辺の 𝒜-クラス）のいずれか
        n: color_by="delta" の場合の n

    Returns:
        頂点 → 色番号、辺 → 色番号 の写像

    Raises:
        DigraphError: 色分けが計算できない場合
    """
    match color_by:
        case "level":
            if w.level is None:
                raise DigraphError("レベルを持たない窓は level で色分けできません")
            distinct = sorted(set(w.level.values()))
            rank = {value: i for i, value in enumerate(distinct)}
            return {v: rank[value] for v, value in w.level.items()}, {}
        case "delta":
            report = delta_n_partition(w, n, w.graph.vertices)
            return report.partition.class_map(), {}
        case "alternet":
            return {}, reach_partition(w).class_map()
        case _:
            raise DigraphError(
                f"未知の色分けです: {color_by}（{', '.join(COLOR_BY_CHOICES)}）"
            )


def to_dot(
    g: Digraph,
    vertex_colors: Mapping[int, int] | None = None,
    edge_colors: Mapping[Edge, int] | None = None,
    boundary: frozenset[int] = frozenset(),
    name: str = "D",
) -> str:
    """有向グラフを DOT 形式の文字列にする。

    頂点と辺は ID の昇順で並べる。色番号ごとに 1 色を割り当て、
    境界頂点は二重枠で描く。
    """
    vertex_colors = vertex_colors or {}
    edge_colors = edge_colors or {}
    count = max([*vertex_colors.values(), *edge_colors.values()], default=-1) + 1
    palette = _palette(count)

    output = ['  node [fontname="sans-serif",fontsize="12"];']
    for v in g.sorted_vertices():
        attributes = [f'label="{_dot_escape(g.labels.get(v, v))}"']
        if v in vertex_colors:
            attributes.append(f'color="{palette[vertex_colors[v]]}"')
            attributes.append("style=filled")
        if v in boundary:
            attributes.append("peripheries=2")
        output.append(f"  {v} [{','.join(attributes)}];")
    for u, v in g.sorted_edges():
        if (u, v) in edge_colors:
            output.append(f'  {u} -> {v} [color="{palette[edge_colors[(u, v)]]}"];')
        else:
            output.append(f"  {u} -> {v};")
    return f'digraph "{_dot_escape(name)}" {{\n' + "\n".join(output) + "\n}\n"


def window_to_dot(w: Window, color_by: str | None = None, n: int = 1) -> str:
    """窓を DOT 形式にする。color_by を指定すると色分けする。"""
    vertex_colors: dict[int, int] = {}
    edge_colors: dict[Edge, int] = {}
    if color_by is not None:
        vertex_colors, edge_colors = dot_coloring(w, color_by, n)
    return to_dot(w.graph, vertex_colors, edge_colors, boundary=w.boundary)
