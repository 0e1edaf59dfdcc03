#!/usr/bin/env python3
"""無限有向グラフの窓を生成・解析するコマンドラインツール。

実行方法:
    # D(2, 3) の深さ 3 の窓を生成
    python scripts/digraph_tool.py generate dmm --m 2 --M 3 --levels 3 -o g.json

    # 二分木を生成
    python scripts/digraph_tool.py generate tree --b 2 --depth 4 -o t.json

    # 解析してレポートを書き出す
    python scripts/digraph_tool.py analyze g.json --delta 1 --report report.json

    # δ_1 の商を書き出す
    python scripts/digraph_tool.py quotient g.json --delta 1 -o q.json

    # alternet と Al(D) を書き出す
    python scripts/digraph_tool.py reach g.json -o reach.json --dot al.dot

    # 𝒜-クラスで色分けした DOT を書き出す
    python scripts/digraph_tool.py export-dot g.json --color-by alternet -o g.dot

終了コード:
    0: 成功（上限超過による部分的なレポートを含む）
    2: 引数・入力の誤り

関連する環境変数:
    - DIGRAPH_ISO_CAP: 同型探索の頂点数上限（--iso-cap で上書き可能）
    - P1_SAMPLE_BUDGET: P1 検査の頂点数（--sample-budget で上書き可能）
    - GENERATOR_VERTEX_CAP: 生成器の頂点数上限（--vertex-cap で上書き可能）
    - DIGRAPH_LOG_LEVEL: ログレベル
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any

# プロジェクトルートをパスに追加
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from digraph_window_experiments_py.config.env_config import (  # noqa: E402
    get_log_level,
)
from digraph_window_experiments_py.models.digraph import (  # noqa: E402
    Partition,
    Window,
)
from digraph_window_experiments_py.models.errors import DigraphError  # noqa: E402
from digraph_window_experiments_py.models.generator import (  # noqa: E402
    GeneratorFamily,
    GeneratorSpec,
)
from digraph_window_experiments_py.models.report import (  # noqa: E402
    AnalysisReport,
)
from digraph_window_experiments_py.services.analysis import (  # noqa: E402
    analyze_window,
)
from digraph_window_experiments_py.services.digraph_ops import (  # noqa: E402
    quotient,
)
from digraph_window_experiments_py.services.generators import (  # noqa: E402
    generate,
)
from digraph_window_experiments_py.services.reachability import (  # noqa: E402
    alternet_graph,
    alternets,
    universality_signal,
)
from digraph_window_experiments_py.services.relations import (  # noqa: E402
    delta_n_partition,
)
from digraph_window_experiments_py.services.serialization import (  # noqa: E402
    COLOR_BY_CHOICES,
    dumps_json,
    dumps_window,
    input_hash,
    read_window,
    to_dot,
    to_jsonable,
    window_to_dot,
    write_json,
)

# generate のサブコマンド名 → (有向グラフ族, 必須パラメータ)
GENERATORS: dict[str, tuple[GeneratorFamily, tuple[str, ...]]] = {
    "dmm": (GeneratorFamily.DMM, ("m", "M", "levels")),
    "sigma": (GeneratorFamily.SIGMA, ("m", "M")),
    "tree": (GeneratorFamily.ROOTED_OUT_TREE, ("b", "depth")),
    "regular-tree": (
        GeneratorFamily.REGULAR_TREE,
        ("out_valency", "in_valency", "radius"),
    ),
    "line": (GeneratorFamily.LINE_Z, ("length",)),
    "desc-line": (GeneratorFamily.DESC_OF_LINE, ("m", "M", "levels")),
    "random": (GeneratorFamily.RANDOM_LAYERED_DAG, ("levels", "width", "seed")),
}


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--output",
        "-o",
        default=None,
        help="出力ファイル名（省略時は標準出力）",
    )


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """コマンドライン引数をパースする。"""
    parser = argparse.ArgumentParser(
        description="無限有向グラフの窓を生成・解析する", allow_abbrev=False
    )
    parser.add_argument(
        "--log-level",
        default=None,
        help="ログレベル（環境変数DIGRAPH_LOG_LEVELまたはWARNING）",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("generate", help="窓を生成する", allow_abbrev=False)
    families = gen.add_subparsers(dest="family", required=True)
    for name, (_, params) in GENERATORS.items():
        family = families.add_parser(name, allow_abbrev=False)
        for param in params:
            family.add_argument(
                f"--{param.replace('_', '-')}", dest=param, type=int, required=True
            )
        if name == "random":
            family.add_argument(
                "--edge-prob",
                dest="edge_prob",
                default="1/2",
                help="辺の確率（有理数、デフォルト: 1/2）",
            )
        family.add_argument(
            "--vertex-cap",
            type=int,
            default=None,
            help="頂点数の上限（環境変数GENERATOR_VERTEX_CAPで設定可能）",
        )
        _add_output(family)

    analyze = commands.add_parser("analyze", help="窓を解析する", allow_abbrev=False)
    analyze.add_argument("input", help="入力の JSON 有向グラフ")
    analyze.add_argument("--delta", type=int, default=1, help="δ_n の n（既定: 1）")
    analyze.add_argument("--depth", type=int, default=None, help="子孫窓の深さ")
    analyze.add_argument("--root", type=int, default=None, help="子孫窓の根")
    analyze.add_argument("--p", type=int, default=None, help="外次数 p·q の p")
    analyze.add_argument("--q", type=int, default=None, help="外次数 p·q の q")
    analyze.add_argument(
        "--iso-cap",
        type=int,
        default=None,
        help="同型探索の頂点数上限（環境変数DIGRAPH_ISO_CAPで設定可能）",
    )
    analyze.add_argument(
        "--sample-budget",
        type=int,
        default=None,
        help="P1 検査の頂点数（環境変数P1_SAMPLE_BUDGETで設定可能）",
    )
    analyze.add_argument("--report", default=None, help="レポートの出力先（JSON）")

    quot = commands.add_parser(
        "quotient", help="δ_n による商を書き出す", allow_abbrev=False
    )
    quot.add_argument("input", help="入力の JSON 有向グラフ")
    quot.add_argument("--delta", type=int, default=1, help="δ_n の n（デフォルト: 1）")
    _add_output(quot)

    reach = commands.add_parser(
        "reach", help="alternet と Al(D) を書き出す", allow_abbrev=False
    )
    reach.add_argument("input", help="入力の JSON 有向グラフ")
    reach.add_argument("--dot", default=None, help="Al(D) の DOT 出力先")
    _add_output(reach)

    dot = commands.add_parser(
        "export-dot", help="DOT 形式で書き出す", allow_abbrev=False
    )
    dot.add_argument("input", help="入力の JSON 有向グラフ")
    dot.add_argument(
        "--color-by", choices=COLOR_BY_CHOICES, default=None, help="色分けの基準"
    )
    dot.add_argument("--delta", type=int, default=1, help="δ_n の n（デフォルト: 1）")
    _add_output(dot)

    return parser.parse_args(argv)


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")
        print(f"出力ファイル: {Path(output).absolute()}")


def cmd_generate(args: argparse.Namespace) -> None:
    """窓を生成して JSON 有向グラフとして書き出す。"""
    family, params = GENERATORS[args.family]
    values: dict[str, int | str] = {param: getattr(args, param) for param in params}
    if args.family == "random":
        values["edge_prob"] = args.edge_prob
    window = generate(GeneratorSpec(family, values), vertex_cap=args.vertex_cap)
    _emit(dumps_window(window), args.output)
    if args.output is not None:
        print(f"頂点数: {window.graph.vertex_count}, 辺数: {window.graph.edge_count}")


def print_summary(report: AnalysisReport) -> None:
    """解析レポートの要約を表示する。"""
    print("=" * 60)
    print("窓の解析")
    print("=" * 60)
    print()
    print(
        f"頂点数: {report.input['vertex_count']}, 辺数: {report.input['edge_count']}, "
        f"内部頂点数: {report.input['interior_count']}"
    )
    print(f"根: {report.root}, 深さ: {report.depth}")
    print()

    if report.layer_profile is not None:
        print("【層プロファイル】")
        print(f"  層サイズ: {report.layer_profile['layer_sizes']}")
        print(f"  内次数 r_i: {report.layer_profile['in_valencies']}")
        print(f"  N: {report.layer_profile['N']}, r_N: {report.layer_profile['r_N']}")
        p3 = report.layer_profile["p3"]
        print(f"  P3: {p3['status']}" + (f"({p3['index']})" if p3["index"] else ""))
        print()

    print("【性質 Z】")
    z = report.z_labeling
    if z["labeled"]:
        print("  ラベル付け可能")
    else:
        walk = z["conflict"]
        print(
            f"  反証: {walk['vertices']}"
            f"（前進 {walk['forward']}, 後退 {walk['backward']}）"
        )
    print()

    print("【到達可能性】")
    print(f"  𝒜-クラス数: {len(report.partitions['reach'])}")
    print(f"  完全な alternet: {report.alternets['complete_count']}")
    print(f"  普遍性シグナル: {report.alternets['universality']['kind']}")
    print()

    if report.properties is not None:
        props = report.properties
        print("【性質】")
        print(f"  P0: {props['P0']['holds']}")
        if props["P1"] is not None:
            print(f"  P1: {props['P1']['holds']}（深さ {props['P1']['depth']}）")
        if props["G3"] is not None:
            print(f"  G3 の k: {props['G3']['k']}")
        print(f"  条件 C: {props['condition_C']['kind']}")
        print(f"  ブロック数 s: {props['block_count']}")
        if props["pq"] is not None:
            print(f"  p·q: {props['pq']['outcome']}")
        print()

    if report.notes:
        print("【注記】")
        for note in report.notes:
            print(f"  - {note}")
        print()


def cmd_analyze(args: argparse.Namespace) -> None:
    """窓を解析し、要約を表示してレポートを書き出す。"""
    if (args.p is None) != (args.q is None):
        raise DigraphError("--p と --q は同時に指定してください")
    window = read_window(args.input)
    report = analyze_window(
        window,
        delta_n=args.delta,
        depth=args.depth,
        root=args.root,
        pq=(args.p, args.q) if args.p is not None else None,
        iso_cap=args.iso_cap,
        sample_budget=args.sample_budget,
    )
    print_summary(report)
    if args.report is not None:
        write_json(report, args.report)
        print(f"レポート: {Path(args.report).absolute()}")


def cmd_quotient(args: argparse.Namespace) -> None:
    """δ_n による商を書き出す。分類できない頂点は一点クラスとして残す。"""
    window = read_window(args.input)
    report = delta_n_partition(window, args.delta, window.graph.vertices)
    classes = [*report.partition.classes, *([v] for v in sorted(report.excluded))]
    partition = Partition.from_classes(classes)
    result = quotient(window.graph, partition)
    quotient_window = Window.whole(
        result.graph,
        meta={
            "quotient": {
                "input_hash": input_hash(window),
                "n": args.delta,
                "classes": partition.as_lists(),
                "dropped_self_edges": result.dropped_self_edges,
            }
        },
    )
    _emit(dumps_window(quotient_window), args.output)


def cmd_reach(args: argparse.Namespace) -> None:
    """alternet・普遍性シグナル・Al(D) を書き出す。"""
    window = read_window(args.input)
    nets = alternets(window)
    al = alternet_graph(window, nets)
    data: dict[str, Any] = {
        "alternets": to_jsonable(nets),
        "universality": to_jsonable(universality_signal(window)),
        "alternet_graph": to_jsonable(al),
    }
    _emit(dumps_json(data), args.output)
    if args.dot is not None:
        Path(args.dot).write_text(to_dot(al.to_digraph(), name="Al"), encoding="utf-8")


def cmd_export_dot(args: argparse.Namespace) -> None:
    """窓を DOT 形式で書き出す。"""
    window = read_window(args.input)
    _emit(window_to_dot(window, args.color_by, args.delta), args.output)


COMMANDS = {
    "generate": cmd_generate,
    "analyze": cmd_analyze,
    "quotient": cmd_quotient,
    "reach": cmd_reach,
    "export-dot": cmd_export_dot,
}


def main(argv: list[str] | None = None) -> int:
    """メイン関数。終了コードを返す。"""
    args = parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or get_log_level()).upper(),
        format="[%(levelname)s] %(message)s",
        stream=sys.stderr,
    )
    try:
        COMMANDS[args.command](args)
    except (ValueError, OSError) as e:
        print(f"エラー: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
