"""サービス層モジュール。"""

from digraph_window_experiments_py.services.analysis import analyze_window
from digraph_window_experiments_py.services.descent import (
    anc_s,
    desc_s,
    descendant_window,
    layer_profile,
)
from digraph_window_experiments_py.services.digraph_ops import (
    build_digraph,
    components_after_removal,
    induced_subdigraph,
    quotient,
)
from digraph_window_experiments_py.services.generators import (
    gen_desc_of_line,
    gen_DmM,
    gen_line_z,
    gen_random_layered_dag,
    gen_regular_tree,
    gen_rooted_out_tree,
    gen_sigma,
    generate,
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
    delta_quotient,
    find_G3_k,
    rho_partition,
    rho_quotient_tree_check,
)
from digraph_window_experiments_py.services.structure import (
    block_system,
    check_P0,
    check_P1,
    condition_C,
    pq_consistency,
    property_report,
    recognize_dmm,
    z_labeling,
)
from digraph_window_experiments_py.services.symmetry import (
    automorphism_orbits,
    check_distance_transitive,
    check_edge_transitive,
    is_isomorphic,
)

__all__ = [
    "R_partition",
    "alternet_graph",
    "alternets",
    "analyze_window",
    "anc_s",
    "automorphism_orbits",
    "block_system",
    "build_digraph",
    "check_P0",
    "check_P1",
    "check_distance_transitive",
    "check_edge_transitive",
    "class_C_membership",
    "components_after_removal",
    "condition_C",
    "delta_monotonicity_check",
    "delta_n_partition",
    "delta_quotient",
    "desc_s",
    "descendant_window",
    "find_G3_k",
    "gen_DmM",
    "gen_desc_of_line",
    "gen_line_z",
    "gen_random_layered_dag",
    "gen_regular_tree",
    "gen_rooted_out_tree",
    "gen_sigma",
    "generate",
    "induced_subdigraph",
    "is_isomorphic",
    "layer_profile",
    "pq_consistency",
    "property_report",
    "quotient",
    "reach_partition",
    "recognize_dmm",
    "rho_partition",
    "rho_quotient_tree_check",
    "universality_signal",
    "z_labeling",
]
