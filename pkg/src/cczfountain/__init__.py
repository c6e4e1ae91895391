"""Magic-friendly triples, greedy packing and constant-depth CCZ scheduling for CSS codes."""

from .code import CommutationError, CssCode, DistanceReport, distance_exact, new_css, num_logicals
from .f2la import (
    BitMatrix,
    BitVector,
    inner,
    nullspace_basis,
    quotient_independent,
    rank,
    support,
    triple_overlap,
)
from .fountain import (
    FountainReport,
    GatePattern,
    ScalingFit,
    gates_for_triple,
    lightcone_distance_bound,
    run_pipeline,
    scaling_fit,
    throughput_bound,
)
from .hypergraph import (
    EdgeColoring,
    Hypergraph3,
    Schedule,
    build_hypergraph,
    greedy_color,
    max_degree,
    schedule_from_coloring,
    verify_coloring,
)
from .packing import PackingResult, greedy_pack, verify_packing
from .phaseverify import (
    DiagonalCircuit,
    check_coset_constancy,
    check_wirewise_phase,
    diagonal_phase,
    extract_logical_action,
    lightcone_support_check,
    wirewise_circuit,
)
from .triples import (
    CollectionStats,
    MagicFriendlyTriple,
    SearchBudget,
    collection_stats,
    enumerate_triples,
    sample_triples,
    verify_magic_friendly,
)

__version__ = "0.1.0"
