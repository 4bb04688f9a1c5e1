"""Crown-decomposition kernels for vertex integrity and component order connectivity."""

from .bcd import (
    BCD,
    Packing,
    carve_connected_piece,
    clawfree_bcd,
    compute_bcd,
    compute_bcd_seeded,
    maximum_matching,
    packing_from_bcd,
    verify_bcd,
    verify_packing,
)
from .dbe import (
    DBE,
    compute_dbe,
    compute_fractional_dbe,
    extract_crown,
    round_fractional,
    verify_crown,
    verify_dbe,
)
from .graph import (
    WeightedGraph,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_cliques,
    drop_light_components,
    generate_instance,
    line_graph,
    parse_graph,
    path_graph,
    random_gnp,
    render_graph,
    star_graph,
)
from .kernels import (
    CocInstance,
    Instance,
    KernelOutcome,
    ReductionRecord,
    ViInstance,
    WcocInstance,
    WviInstance,
    apply_record,
    find_reducible_structure,
    kernelize_coc2,
    kernelize_coc_fpt,
    kernelize_vi,
    kernelize_wcoc,
    kernelize_wvi,
)
from .maxflow import FlowNetwork, max_flow
from .oracle import brute_coc, brute_vi, brute_wcoc, brute_wvi, check_equivalence, solve_instance

__all__ = [name for name in dir() if not name.startswith("_")]
