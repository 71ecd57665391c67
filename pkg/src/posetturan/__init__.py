"""Workbench for generalized Turan problems on posets in the Boolean lattice."""

from .lattice import (
    ComparabilityComponents,
    SetFamily,
    chains_meeting,
    comparability_components,
    complement_family,
    containment_pairs,
    convex_hull,
    count_k_chains,
    full_lattice,
    interval_family,
    level_family,
)
from .posets import (
    Poset,
    PosetError,
    dual_poset,
    named_poset,
    path_hasse_family,
    poset_from_relations,
    poset_isomorphic,
)
from .embedding import (
    EmbeddingWitness,
    count_copies,
    find_embedding,
    is_free,
)
from .constructions import (
    middle_two_levels,
    n_free_construction,
    p5_construction,
    p6_construction,
)
from .formulas import (
    chain_count_in_levels,
    closed_formula,
    la_chain_levels_max,
)
from .search import SearchReport, cached_la_exact, la_exact, la_levels, verify_witness
from .proofcheck import (
    Coloring,
    check_one_critical_pair_per_chain,
    classify_nfree_components,
    color_family,
    erdos_gallai_check,
    p5_component_report,
    zigzag_find_WM,
)
from .dsl import parse_poset_dsl, parse_single_poset, poset_to_dsl
from .familyio import format_family, parse_family, read_family

__version__ = "0.1.0"
