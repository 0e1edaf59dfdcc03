"""性質 Z・P0/P1/P3/G3・条件 C・ブロック系・外次数 p·q の整合性を判定するサービス。"""

import logging
from collections import deque
from collections.abc import Iterable
from itertools import product
from math import comb

from digraph_window_experiments_py.config.env_config import get_sample_budget
from digraph_window_experiments_py.models.digraph import Window
from digraph_window_experiments_py.models.errors import (
    DigraphError,
    SizeCapError,
    WindowTooSmallError,
)
from digraph_window_experiments_py.models.profile import LayerProfile, P3Status
from digraph_window_experiments_py.models.verdict import (
    ConditionCKind,
    ConditionCVerdict,
    ConflictWalk,
    DmmRecognition,
    P0Verdict,
    P1Verdict,
    PQOutcome,
    PQRecord,
    PropertyReport,
    ZLabeling,
)
from digraph_window_experiments_py.services.descent import (
    descendant_window,
    layer_profile,
    layers_of,
    reach_within,
    root_of,
)
from digraph_window_experiments_py.services.digraph_ops import (
    components_after_removal,
)
from digraph_window_experiments_py.services.generators import (
    gen_sigma,
    sigma_component,
)
from digraph_window_experiments_py.services.reachability import alternets
from digraph_window_experiments_py.services.relations import (
    delta_n_partition,
    delta_quotient,
    find_G3_k,
)
from digraph_window_experiments_py.services.symmetry import is_isomorphic

logger = logging.getLogger(__name__)

# 全分割の総当たりで確認する Γ^1 の大きさの上限
EXHAUSTIVE_SPLIT_LIMIT = 6


def _tree_path(
    parent: dict[int, tuple[int, int] | None], v: int
) -> list[tuple[int, int]]:
    """BFS 木の根から v までの (頂点, 親からの向き) の列を返す。根の向きは 0。"""
    path = []
    current: int | None = v
    while current is not None:
        link = parent[current]
        if link is None:
            path.append((current, 0))
            current = None
        else:
            path.append((current, link[1]))
            current = link[0]
    return list(reversed(path))


def _conflict_walk(
    parent: dict[int, tuple[int, int] | None], u: int, v: int
) -> ConflictWalk:
    """木の経路と辺 u→v からなる閉じた歩道を作る。

    共通の祖先までの経路だけを残す。
    """
    path_u = _tree_path(parent, u)
    path_v = _tree_path(parent, v)
    common = 0
    while (
        common < min(len(path_u), len(path_v))
        and path_u[common][0] == path_v[common][0]
    ):
        common += 1
    meet = common - 1
    # meet から u へ（親からの向きのまま）、u→v（順方向）、v から meet へ（逆向き）
    steps = [direction for _, direction in path_u[meet + 1 :]]
    steps.append(1)
    steps.extend(-direction for _, direction in reversed(path_v[meet + 1 :]))
    vertices = [vertex for vertex, _ in path_u[meet:]]
    vertices.extend(vertex for vertex, _ in reversed(path_v[meet:]))
    return ConflictWalk(
        vertices=tuple(vertices),
        forward=sum(1 for step in steps if step > 0),
        backward=sum(1 for step in steps if step < 0),
    )


def z_labeling(w: Window) -> ZLabeling:
    """f(head) = f(tail) + 1 を満たすラベル付け f、またはその反証を求める。

    基礎無向グラフを BFS でたどり、順方向の辺で +1、逆方向の辺で -1 を割り当てる。
    各連結成分の根（最小頂点）はレベルがあればその値、なければ 0 とする。

    Returns:
        ラベル付け、または前進辺数と後退辺数が異なる閉じた歩道
    """
    graph = w.graph
    labels: dict[int, int] = {}
    parent: dict[int, tuple[int, int] | None] = {}
    components = 0
    for start in graph.sorted_vertices():
        if start in labels:
            continue
        components += 1
        root_level = w.level_of(start)
        labels[start] = root_level if root_level is not None else 0
        parent[start] = None
        queue = deque([start])
        while queue:
            u = queue.popleft()
            neighbors = [(x, 1) for x in graph.out_neighbors(u)]
            neighbors += [(x, -1) for x in graph.in_neighbors(u)]
            for x, direction in neighbors:
                expected = labels[u] + direction
                if x not in labels:
                    labels[x] = expected
                    parent[x] = (u, direction)
                    queue.append(x)
                elif labels[x] != expected:
                    tail, head = (u, x) if direction == 1 else (x, u)
                    walk = _conflict_walk(parent, tail, head)
                    logger.info(
                        "性質 Z の反証: 辺 %s で矛盾（前進 %d, 後退 %d）",
                        (tail, head),
                        walk.forward,
                        walk.backward,
                    )
                    return ZLabeling(
                        labels=None, conflict=walk, components=components
                    )

    notes: tuple[str, ...] = ()
    if components > 1:
        notes = (f"非連結な入力です: {components} 個の成分を個別にラベル付けしました",)
    return ZLabeling(labels=labels, components=components, notes=notes)


def check_P0(gamma: Window) -> P0Verdict:
    """層が互いに素で、内部頂点の外次数 m が一定かを判定する。"""
    root = root_of(gamma)
    layers = layers_of(gamma)
    m = gamma.graph.out_degree(root)

    seen: dict[int, int] = {}
    witness_vertex = None
    witness_layers: tuple[int, ...] = ()
    for i, layer in enumerate(layers):
        for v in sorted(layer):
            if v in seen:
                witness_vertex = v
                witness_layers = (seen[v], i)
                break
            seen[v] = i
        if witness_vertex is not None:
            break

    nonuniform = tuple(
        sorted(v for v in gamma.interior if gamma.graph.out_degree(v) != m)
    )
    return P0Verdict(
        holds=witness_vertex is None and not nonuniform and m > 0,
        out_valency=m if not nonuniform else None,
        witness_vertex=witness_vertex,
        witness_layers=witness_layers,
        nonuniform_vertices=nonuniform,
    )


def _depth_colors(gamma: Window) -> dict[int, int]:
    first: dict[int, int] = {}
    for i, layer in enumerate(layers_of(gamma)):
        for v in layer:
            first.setdefault(v, i)
    return first


def check_P1(
    gamma: Window,
    d: int,
    budget: int | None = None,
    iso_cap: int | None = None,
) -> P1Verdict:
    """深さ d までの Γ(u) と Γ(α) の根付き同型を、内部頂点 u ごとに検査する。

    深さ d の錐が窓に収まらない u は検査しない。

    Args:
        gamma: 根付き子孫窓
        d: 比較する深さ
        budget: 検査する頂点数の上限（None なら P1_SAMPLE_BUDGET）
        iso_cap: 同型探索の頂点数上限

    Returns:
        深さ制限付きの判定。上限に達した場合は partial=True
    """
    limit = get_sample_budget() if budget is None else budget
    root = root_of(gamma)
    reference = descendant_window(gamma, root, d)
    reference_colors = _depth_colors(reference)

    tested: list[int] = []
    partial = False
    for u in sorted(gamma.interior - {root}):
        try:
            candidate = descendant_window(gamma, u, d)
        except WindowTooSmallError:
            continue
        if len(tested) >= limit:
            partial = True
            break
        tested.append(u)
        result = is_isomorphic(
            reference.graph,
            candidate.graph,
            roots=(root, u),
            vertex_colors=(reference_colors, _depth_colors(candidate)),
            cap=iso_cap,
        )
        if not result.isomorphic:
            logger.info("P1 の反例: Γ(%d) は深さ %d で Γ と同型ではありません", u, d)
            return P1Verdict(holds=False, depth=d, tested=tuple(tested), witness=u)

    if partial:
        logger.warning("P1: 予算 %d に達したため一部の頂点のみ検査しました", limit)
    return P1Verdict(holds=True, depth=d, tested=tuple(tested), partial=partial)


def _disjoint_verdict(
    cone: Window, left: Iterable[int], right: Iterable[int], d: int
) -> ConditionCVerdict:
    left_set, right_set = frozenset(left), frozenset(right)
    common = reach_within(cone.graph, left_set) & reach_within(cone.graph, right_set)
    if common:
        return ConditionCVerdict(
            kind=ConditionCKind.INTERSECTS,
            U=tuple(sorted(left_set)),
            V=tuple(sorted(right_set)),
            depth=d,
            witness=min(common),
        )
    return ConditionCVerdict(
        kind=ConditionCKind.DISJOINT_TO_DEPTH,
        U=tuple(sorted(left_set)),
        V=tuple(sorted(right_set)),
        depth=d,
    )


def condition_C(
    gamma: Window,
    x: int,
    d: int,
    split: tuple[Iterable[int], Iterable[int]] | None = None,
) -> ConditionCVerdict:
    """条件 C_Γ(x)（desc(U) ∩ desc(V) = ∅ となる U, V ⊆ Γ^1(x) の存在）を判定する。

    split を指定しない場合は、Γ(x)\\{x} の連結成分で Γ^1(x) をまとめた分割だけを
    探す。split を指定した場合はその分割について判定し、Intersects はその分割に
    対する健全な反証になる。

    Args:
        gamma: 窓（通常は根付き子孫窓）
        x: 内部頂点
        d: 子孫を比較する深さ
        split: 検査する分割 (U, V)（任意）

    Raises:
        WindowTooSmallError: 深さ d の錐が窓に収まらない場合
    """
    cone = descendant_window(gamma, x, d)
    first = layers_of(cone)[1]

    if split is not None:
        left, right = (frozenset(part) for part in split)
        if not left or not right or left & right or not (left | right) <= first:
            raise DigraphError("U, V は Γ^1(x) の互いに素な空でない部分集合が必要です")
        return _disjoint_verdict(cone, left, right, d)

    groups: list[frozenset[int]] = []
    for component in components_after_removal(cone.graph, [x]):
        group = component & first
        if group:
            groups.append(group)
    if len(groups) < 2:
        return ConditionCVerdict(kind=ConditionCKind.NO_SPLIT, depth=d)
    rest = frozenset().union(*groups[1:])
    return _disjoint_verdict(cone, groups[0], rest, d)


def condition_C_exhaustive(gamma: Window, x: int, d: int) -> ConditionCVerdict:
    """Γ^1(x) の互いに素な空でない部分集合の組をすべて調べる総当たり版。

    Raises:
        DigraphError: |Γ^1(x)| が EXHAUSTIVE_SPLIT_LIMIT を超える場合
    """
    cone = descendant_window(gamma, x, d)
    first = sorted(layers_of(cone)[1])
    if len(first) > EXHAUSTIVE_SPLIT_LIMIT:
        raise DigraphError(
            f"総当たりは |Γ^1(x)| <= {EXHAUSTIVE_SPLIT_LIMIT} に限ります: {len(first)}"
        )
    below = {v: reach_within(cone.graph, [v]) for v in first}
    # 各頂点を U(1)・V(2)・どちらでもない(0) に割り当てる
    for assignment in product((0, 1, 2), repeat=len(first)):
        left = [v for v, side in zip(first, assignment, strict=True) if side == 1]
        right = [v for v, side in zip(first, assignment, strict=True) if side == 2]
        if not left or not right:
            continue
        left_desc = frozenset().union(*(below[v] for v in left))
        right_desc = frozenset().union(*(below[v] for v in right))
        if not left_desc & right_desc:
            return ConditionCVerdict(
                kind=ConditionCKind.DISJOINT_TO_DEPTH,
                U=tuple(left),
                V=tuple(right),
                depth=d,
            )
    return ConditionCVerdict(kind=ConditionCKind.NO_SPLIT, depth=d)


def block_system(gamma: Window) -> tuple[tuple[int, ...], ...]:
    """Γ\\{α} の連結成分で Γ^1(α) を分けたブロック ω_1, ..., ω_s を返す。

    Raises:
        DigraphError: 窓の深さが 2 未満の場合
    """
    root = root_of(gamma)
    layers = layers_of(gamma)
    if len(layers) < 3:
        raise DigraphError("ブロック系の計算には深さ 2 以上が必要です")
    blocks = []
    for component in components_after_removal(gamma.graph, [root]):
        block = component & layers[1]
        if block:
            blocks.append(tuple(sorted(block)))
    return tuple(sorted(blocks))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % divisor for divisor in range(2, int(n**0.5) + 1))


def pq_consistency(
    gamma: Window,
    p: int,
    q: int,
    profile: LayerProfile | None = None,
) -> PQRecord:
    """外次数 m = p·q（p <= q は素数）の場合の予測と実測値を照合する。

    p = q なら Γ は木であり、p < q なら Γ は木であるか、s = p 個の大きさ q の
    ブロックを持ち r_i = 1 (i <= N-1)、r_i = p (i >= N) となる。

    Raises:
        DigraphError: m ≠ p·q、p > q、または p, q が素数でない場合
    """
    if not (_is_prime(p) and _is_prime(q)) or p > q:
        raise DigraphError(f"p <= q の素数が必要です: p={p}, q={q}")
    profile = profile if profile is not None else layer_profile(gamma)
    m = profile.out_valency
    if m != p * q:
        raise DigraphError(f"外次数 {m} が p·q = {p * q} と一致しません")

    def inapplicable(reason: str) -> PQRecord:
        return PQRecord(outcome=PQOutcome.INAPPLICABLE, p=p, q=q, reason=reason)

    if profile.p3.status != P3Status.HOLDS_TO_DEPTH:
        return inapplicable("P3 fails")
    if profile.N is None:
        return inapplicable("window too small")
    if profile.N > 1:
        domain = gamma.interior
        delta = delta_n_partition(gamma, profile.N - 1, domain)
        if not delta.partition.is_trivial():
            return inapplicable("δ_{N-1} nontrivial")

    r = profile.in_valencies
    measured: dict[str, object] = {"in_valencies": list(r)}
    if all(value == 1 for value in r):
        return PQRecord(
            outcome=PQOutcome.CONSISTENT,
            p=p,
            q=q,
            branch="tree",
            predicted={"in_valencies": [1] * len(r)},
            measured=measured,
        )
    if p == q:
        return PQRecord(
            outcome=PQOutcome.INCONSISTENT,
            p=p,
            q=q,
            branch="tree",
            reason="in_valencies",
            predicted={"in_valencies": [1] * len(r)},
            measured=measured,
        )

    blocks = block_system(gamma)
    N = profile.N
    predicted_r = [1 if i <= N - 1 else p for i in range(1, len(r) + 1)]
    predicted: dict[str, object] = {
        "s": p,
        "block_sizes": [q] * p,
        "in_valencies": predicted_r,
    }
    measured.update({"s": len(blocks), "block_sizes": [len(b) for b in blocks]})
    mismatch = next(
        (
            key
            for key in ("s", "block_sizes", "in_valencies")
            if predicted[key] != measured[key]
        ),
        None,
    )
    return PQRecord(
        outcome=PQOutcome.CONSISTENT if mismatch is None else PQOutcome.INCONSISTENT,
        p=p,
        q=q,
        branch="blocks",
        reason=mismatch,
        predicted=predicted,
        measured=measured,
    )


def property_report(
    gamma: Window,
    p1_depth: int | None = None,
    pq: tuple[int, int] | None = None,
    budget: int | None = None,
    iso_cap: int | None = None,
) -> PropertyReport:
    """根付き子孫窓の P0・P1・P3・G3・条件 C・ブロック系をまとめて判定する。

    Args:
        gamma: 根付き子孫窓（深さ 2 以上）
        p1_depth: P1 で比較する深さ（None なら窓の深さの半分）
        pq: 外次数 p·q の整合性を検査する (p, q)（任意）
        budget: P1 の検査頂点数の上限
        iso_cap: 同型探索の頂点数上限
    """
    root = root_of(gamma)
    depth = len(layers_of(gamma)) - 1
    notes = ["すべての判定は窓の深さまでの観察です"]
    profile = layer_profile(gamma)

    p1 = None
    try:
        p1 = check_P1(gamma, p1_depth or max(1, depth // 2), budget, iso_cap)
    except SizeCapError as e:
        notes.append(f"P1 を省略しました: {e}")

    g3 = None
    if depth >= 3:
        g3 = find_G3_k(gamma)
        if g3.k is None:
            notes.append("G3: 窓の範囲では k が見つかりません（反証ではありません）")
    else:
        notes.append("G3: 深さ 3 未満のため省略しました")

    pq_record = None
    if pq is not None:
        try:
            pq_record = pq_consistency(gamma, pq[0], pq[1], profile)
        except DigraphError as e:
            notes.append(f"p·q の検査を省略しました: {e}")

    return PropertyReport(
        P0=check_P0(gamma),
        P1=p1,
        P3=profile.p3,
        G3=g3,
        condition_C=condition_C(gamma, root, depth),
        blocks=block_system(gamma),
        pq=pq_record,
        notes=tuple(notes),
    )


def recognize_dmm(w: Window, iso_cap: int | None = None) -> DmmRecognition:
    """窓が D(m, M) の窓と整合的かどうかを判定する。

    完全な alternet から m（始点の外次数）と M（m >= 2 なら |Y|、m = 1 なら |X|）を
    読み取り、各 alternet が Σ(m, M)（m = 1 ならその連結成分）と同型であること、
    性質 Z を持つこと、δ_1 の商が外次数 1・内次数 C(M, m) であることを確認する。
    """
    nets = [net for net in alternets(w) if net.complete]
    if not nets:
        return DmmRecognition(recognized=False, failed_check="complete_alternets")

    out_degrees = {w.graph.out_degree(x) for net in nets for x in net.sources}
    if len(out_degrees) != 1:
        return DmmRecognition(recognized=False, failed_check="source_out_valency")
    m = out_degrees.pop()
    sizes = {len(net.sources) if m == 1 else len(net.sinks) for net in nets}
    if len(sizes) != 1:
        return DmmRecognition(recognized=False, m=m, failed_check="sink_count")
    M = sizes.pop()
    if M < m:
        return DmmRecognition(recognized=False, m=m, M=M, failed_check="sink_count")

    model = sigma_component(m, M) if m == 1 else gen_sigma(m, M)
    for checked, net in enumerate(nets):
        if not is_isomorphic(net.to_digraph(), model.graph, cap=iso_cap).isomorphic:
            return DmmRecognition(
                recognized=False,
                m=m,
                M=M,
                failed_check="alternet_isomorphism",
                alternets_checked=checked,
            )

    if not z_labeling(w).labeled:
        return DmmRecognition(
            recognized=False,
            m=m,
            M=M,
            failed_check="property_z",
            alternets_checked=len(nets),
        )

    report = delta_quotient(w, 1)
    if not report.out_valencies or not report.in_valencies:
        # 外次数・内次数を確かめられるクラスが窓にない
        return DmmRecognition(
            recognized=False,
            m=m,
            M=M,
            failed_check="delta_quotient_window",
            alternets_checked=len(nets),
        )
    k = comb(M, m)
    if any(v != 1 for v in report.out_valencies.values()) or any(
        v != k for v in report.in_valencies.values()
    ):
        return DmmRecognition(
            recognized=False,
            m=m,
            M=M,
            failed_check="delta_quotient",
            alternets_checked=len(nets),
        )
    return DmmRecognition(recognized=True, m=m, M=M, alternets_checked=len(nets))
