"""Graph states of k-regular graphs: construction, exact simulation, rank width."""

from ._core import (
    Graph,
    WidthReport,
    build_double_torus,
    build_hard_family,
    build_lattice,
    build_regular_easy,
    complement,
    cut_rank,
    delete_vertex,
    duality_reduction,
    entanglement_entropy,
    entanglement_width,
    exact_rank_width,
    gale_ryser_check,
    hard_family_reduction,
    heuristic_rank_width,
    is_k_regular,
    local_complement,
    phase_scan,
    probability,
    probability_complete,
    probability_rankdp,
    random_graph,
    ryser_realize,
    sample,
    sample_rankdp,
)

__all__ = [name for name in dir() if not name.startswith("_")]
