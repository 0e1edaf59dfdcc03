"""解析レポートのデータモデル。"""

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class AnalysisReport:
    """analyze コマンドが書き出すレポート。

    各セクションは JSON 化済みの辞書で保持し、窓に基づく判定には
    必ず notes に制限の注記を付ける。

    Attributes:
        input: 入力のメタデータとハッシュ
        root: 子孫窓の根
        depth: 子孫窓の深さ
        layer_profile: 層プロファイル
        partitions: δ_n, ρ, R, 𝒜 の分割
        alternets: alternet の要約と Al(D)
        z_labeling: 性質 Z の判定
        properties: 性質レポート
        symmetry: 対称性の診断
        notes: 窓による制限の注記
    """

    input: dict[str, Any]
    root: int | None
    depth: int
    layer_profile: dict[str, Any] | None = None
    partitions: dict[str, Any] = field(default_factory=dict)
    alternets: dict[str, Any] = field(default_factory=dict)
    z_labeling: dict[str, Any] = field(default_factory=dict)
    properties: dict[str, Any] | None = None
    symmetry: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
