"""Shortest recolouring sequences between proper graph colourings."""

from .fpt import CandidateSet, FptOutcome, compute_candidate_set, disagreement_set, fpt_solve
from .graph import (
    Colouring,
    ColouringError,
    Graph,
    GraphError,
    ReconfigInstance,
    RecolouringSequence,
    SpanningTree,
    Verification,
    bfs_spanning_tree,
    components,
    is_proper,
    new_graph,
    verify_recolouring,
)
from .hardness import (
    GadgetInstance,
    HittingSetError,
    HittingSetInstance,
    brute_force_hitting_set,
    constructive_witness,
    generate,
    preprocess,
)
from .oracle import (
    OracleResult,
    StateLimitExceeded,
    StateSpaceLimits,
    oracle_component,
    oracle_distance,
    oracle_fixed_vertices,
)
from .solver3 import (
    ConditionError,
    ConditionReport,
    Distance3Result,
    FixedSet,
    HeightProfile,
    check_necessary_conditions,
    distance3,
    edge_weight,
    fixed_vertices,
    focal_vertex,
    min_total_height,
    relative_heights,
    solve_small_k,
    walk_weight,
    witness3,
)

__all__ = [
    name
    for name, obj in dict(globals()).items()
    if not name.startswith("_") and getattr(obj, "__module__", "").startswith(__name__ + ".")
]
