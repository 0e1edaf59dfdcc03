"""窓に対して降下・関係・到達可能性・構造・対称性の解析を順に実行するパイプライン。"""

import logging
from collections.abc import Callable
from typing import Any

from digraph_window_experiments_py.models.digraph import Window
from digraph_window_experiments_py.models.errors import (
    DigraphError,
    SizeCapError,
    WindowTooSmallError,
)
from digraph_window_experiments_py.models.relation import RhoContext
from digraph_window_experiments_py.models.report import AnalysisReport
from digraph_window_experiments_py.services.descent import (
    descendant_window,
    layer_profile,
    layers_of,
)
from digraph_window_experiments_py.services.reachability import (
    alternet_graph,
    alternets,
    class_C_membership,
    reach_partition,
    universality_signal,
)
from digraph_window_experiments_py.services.relations import (
    R_partition,
    delta_monotonicity_check,
    delta_n_partition,
    rho_partition,
    rho_quotient_tree_check,
)
from digraph_window_experiments_py.services.serialization import (
    input_hash,
    to_jsonable,
)
from digraph_window_experiments_py.services.structure import (
    property_report,
    recognize_dmm,
    z_labeling,
)
from digraph_window_experiments_py.services.symmetry import (
    check_distance_transitive,
    check_edge_transitive,
    layer_transitivity_diagnostic,
)

logger = logging.getLogger(__name__)

# 自動で探す子孫窓の深さの上限
MAX_AUTO_DEPTH = 32


def choose_root(w: Window) -> int | None:
    """子孫窓の根を選ぶ。

    レベルがあれば最小レベルの内部頂点（同じレベルなら最小 ID）、
    なければ最小 ID の内部頂点を返す。内部頂点がなければ None。
    """
    if not w.interior:
        return None
    level = w.level
    if level is not None:
        leveled = [v for v in w.interior if v in level]
        if leveled:
            return min(leveled, key=lambda v: (level[v], v))
    return min(w.interior)


def max_fitting_depth(w: Window, root: int, limit: int = MAX_AUTO_DEPTH) -> int:
    """根 root の子孫窓が切り出せる最大の深さ（最終層が空でない範囲）を返す。

    深さ 1 の窓すら切り出せない場合は 0。
    """
    depth = 0
    for d in range(1, limit + 1):
        try:
            gamma = descendant_window(w, root, d)
        except WindowTooSmallError:
            break
        if not layers_of(gamma)[-1]:
            break
        depth = d
    return depth


def _stage(
    notes: list[str], name: str, func: Callable[..., Any], *args: Any, **kwargs: Any
) -> Any:
    """1 段階を実行し、上限超過や窓の制約による失敗は注記に変える。"""
    logger.info("段階: %s", name)
    try:
        return func(*args, **kwargs)
    except SizeCapError as e:
        notes.append(f"{name}: 上限を超えたため省略しました（{e}）")
    except DigraphError as e:
        notes.append(f"{name}: {e}")
    return None


def _alternet_section(
    w: Window, notes: list[str], iso_cap: int | None
) -> dict[str, Any]:
    nets = alternets(w)
    summaries = []
    cap_noted = False
    for net in nets:
        entry = to_jsonable(net)
        del entry["edges"]
        if net.complete:
            try:
                entry["class_C"] = to_jsonable(class_C_membership(net, iso_cap))
            except SizeCapError as e:
                if not cap_noted:
                    notes.append(f"クラス 𝒞 の判定を一部省略しました（{e}）")
                    cap_noted = True
        summaries.append(entry)
    return {
        "count": len(nets),
        "complete_count": sum(1 for net in nets if net.complete),
        "nets": summaries,
        "universality": to_jsonable(universality_signal(w)),
        "alternet_graph": to_jsonable(alternet_graph(w, nets)),
    }


def analyze_window(
    w: Window,
    delta_n: int = 1,
    depth: int | None = None,
    root: int | None = None,
    pq: tuple[int, int] | None = None,
    iso_cap: int | None = None,
    sample_budget: int | None = None,
) -> AnalysisReport:
    """窓を解析してレポートを作る。

    Args:
        w: 入力の窓
        delta_n: δ_n の n
        depth: 子孫窓の深さ（None なら切り出せる最大の深さ）
        root: 子孫窓の根（None なら choose_root で選ぶ）
        pq: 外次数 p·q の整合性を検査する (p, q)（任意）
        iso_cap: 同型探索の頂点数上限
        sample_budget: P1 の検査頂点数の上限

    Returns:
        解析レポート。上限超過などで省略した段階は notes に記録する

    Raises:
        DigraphError: delta_n が 1 未満、または指定した根が存在しない場合
    """
    if delta_n < 1:
        raise DigraphError(f"n は 1 以上が必要です: n={delta_n}")
    notes = ["窓に基づく判定は、窓の範囲での観察です"]

    if root is not None:
        w.graph.require_vertices([root])
    else:
        root = choose_root(w)
    if root is not None and depth is None:
        depth = max_fitting_depth(w, root)

    gamma = None
    profile = None
    properties = None
    rho: dict[str, Any] = {}
    if root is not None and depth:
        gamma = _stage(notes, "子孫窓", descendant_window, w, root, depth)
    if gamma is not None:
        gamma_depth = len(layers_of(gamma)) - 1
        profile = layer_profile(gamma)
        if gamma_depth >= 2:
            properties = _stage(
                notes,
                "性質レポート",
                property_report,
                gamma,
                pq=pq,
                budget=sample_budget,
                iso_cap=iso_cap,
            )
        if properties is not None and properties.G3 is not None:
            k = properties.G3.k
            if k is not None:
                ctx = RhoContext(k, k)
                rho["partition"] = to_jsonable(rho_partition(gamma, ctx))
                rho["tree"] = to_jsonable(
                    _stage(notes, "ρ の商", rho_quotient_tree_check, gamma, ctx)
                )
    else:
        notes.append("子孫窓を切り出せないため、層に関する解析を省略しました")

    partitions: dict[str, Any] = {
        "delta": to_jsonable(delta_n_partition(w, delta_n, w.interior)),
        "delta_monotonicity": to_jsonable(
            delta_monotonicity_check(w, delta_n, w.interior)
        ),
        "reach": to_jsonable(reach_partition(w)),
        "R": to_jsonable(R_partition(w)),
    }
    if rho:
        partitions["rho"] = rho

    alternet_section = _alternet_section(w, notes, iso_cap)
    recognition = _stage(notes, "D(m, M) の認識", recognize_dmm, w, iso_cap)
    alternet_section["dmm_recognition"] = to_jsonable(recognition)

    symmetry: dict[str, Any] = {}
    if gamma is not None:
        symmetry["layer_orbits"] = to_jsonable(
            _stage(notes, "層の軌道", layer_transitivity_diagnostic, gamma, iso_cap)
        )
    symmetry["edge_transitive"] = _stage(
        notes, "辺推移性", check_edge_transitive, w.graph, iso_cap
    )
    symmetry["distance_transitive"] = _stage(
        notes, "距離推移性", check_distance_transitive, w.graph, iso_cap
    )

    z = z_labeling(w)
    notes.extend(z.notes)
    if properties is not None:
        notes.extend(properties.notes)

    logger.info("解析が完了しました: 注記 %d 件", len(notes))
    return AnalysisReport(
        input={
            "hash": input_hash(w),
            "meta": to_jsonable(dict(w.meta)),
            "vertex_count": w.graph.vertex_count,
            "edge_count": w.graph.edge_count,
            "interior_count": len(w.interior),
        },
        root=root,
        depth=len(layers_of(gamma)) - 1 if gamma is not None else 0,
        layer_profile=to_jsonable(profile) if profile is not None else None,
        partitions=partitions,
        alternets=alternet_section,
        z_labeling=to_jsonable(z),
        properties=to_jsonable(properties) if properties is not None else None,
        symmetry=symmetry,
        notes=notes,
    )
