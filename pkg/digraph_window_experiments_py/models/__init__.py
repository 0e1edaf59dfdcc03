"""データモデル定義モジュール。"""

from digraph_window_experiments_py.models.alternet import (
    Alternet,
    AlternetGraph,
    ClassCReport,
    UniversalityKind,
    UniversalitySignal,
)
from digraph_window_experiments_py.models.digraph import (
    Digraph,
    Edge,
    Partition,
    QuotientDigraph,
    Window,
)
from digraph_window_experiments_py.models.errors import (
    DigraphError,
    DigraphFormatError,
    GeneratorParameterError,
    LevelContractError,
    LoopEdgeError,
    PartitionError,
    SizeCapError,
    UnknownVertexError,
    VertexRangeError,
    WindowTooSmallError,
)
from digraph_window_experiments_py.models.generator import (
    BipartiteDigraph,
    GeneratorFamily,
    GeneratorSpec,
)
from digraph_window_experiments_py.models.profile import (
    ConeResult,
    LayerProfile,
    P3Status,
    P3Verdict,
)
from digraph_window_experiments_py.models.relation import (
    DeltaQuotientReport,
    G3Result,
    MonotonicityReport,
    PartitionReport,
    RhoContext,
    RhoTreeReport,
)
from digraph_window_experiments_py.models.report import AnalysisReport
from digraph_window_experiments_py.models.symmetry import (
    IsoResult,
    LayerOrbitDiagnostic,
    OrbitStructure,
)
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

__all__ = [
    "Alternet",
    "AlternetGraph",
    "AnalysisReport",
    "BipartiteDigraph",
    "ClassCReport",
    "ConditionCKind",
    "ConditionCVerdict",
    "ConeResult",
    "ConflictWalk",
    "DeltaQuotientReport",
    "Digraph",
    "DigraphError",
    "DigraphFormatError",
    "DmmRecognition",
    "Edge",
    "G3Result",
    "GeneratorFamily",
    "GeneratorParameterError",
    "GeneratorSpec",
    "IsoResult",
    "LayerOrbitDiagnostic",
    "LayerProfile",
    "LevelContractError",
    "LoopEdgeError",
    "MonotonicityReport",
    "OrbitStructure",
    "P0Verdict",
    "P1Verdict",
    "P3Status",
    "P3Verdict",
    "PQOutcome",
    "PQRecord",
    "Partition",
    "PartitionError",
    "PartitionReport",
    "PropertyReport",
    "QuotientDigraph",
    "RhoContext",
    "RhoTreeReport",
    "SizeCapError",
    "UniversalityKind",
    "UniversalitySignal",
    "UnknownVertexError",
    "VertexRangeError",
    "WindowTooSmallError",
    "ZLabeling",
]
