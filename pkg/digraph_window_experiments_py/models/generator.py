"""生成パラメータと二部有向グラフのデータモデル。"""

from dataclasses import asdict, dataclass, field
from enum import StrEnum
from typing import Any

from digraph_window_experiments_py.models.digraph import Digraph


class GeneratorFamily(StrEnum):
    """生成できる有向グラフ族。"""

    DMM = "DmM"
    SIGMA = "SigmaMM"
    ROOTED_OUT_TREE = "RootedOutTree"
    REGULAR_TREE = "RegularTree"
    LINE_Z = "LineZ"
    DESC_OF_LINE = "DescOfLine"
    RANDOM_LAYERED_DAG = "RandomLayeredDag"


@dataclass(frozen=True)
class GeneratorSpec:
    """生成器の呼び出しパラメータ。

    Attributes:
        family: 有向グラフ族
        params: 族ごとの整数パラメータ（m, M, levels, b, depth, seed など）。
            edge_prob のみ "1/2" のような有理数文字列を許す
    """

    family: GeneratorFamily
    params: dict[str, int | str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["family"] = str(self.family)
        return data


@dataclass(frozen=True)
class BipartiteDigraph:
    """全辺が sources から sinks へ向かう二部有向グラフ。

    Attributes:
        graph: 有向グラフ本体
        sources: 始点側の頂点集合 X
        sinks: 終点側の頂点集合 Y
    """

    graph: Digraph
    sources: frozenset[int]
    sinks: frozenset[int]
