"""Disjoint compatibility graphs of non-crossing perfect matchings."""

from ._core import (
    Graph,
    Matching,
    MatchingError,
    ResourceError,
    are_disjoint_compatible,
    big_component_order,
    build_graph,
    catalan,
    classify,
    degree,
    edge_series,
    enumerate_matchings,
    fuss_series,
    is_I,
    is_L,
    max_k,
    neighbors,
    neighbors_bruteforce,
    rank,
    reflect,
    rings,
    riordan,
    rotate,
    run_suite,
    unrank,
)

__all__ = [name for name in dir() if not name.startswith("_")]
