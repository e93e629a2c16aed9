"""Bipartite girth extraction toolkit.

Finds, at configurable scale, either a complete-bipartite witness or an
induced subgraph of prescribed average degree and girth, via randomized
regularization, (r,t)-partitions, the girth-6 dichotomy and random
sparsification.  Every randomized pipeline is seed-reproducible and audits
its own outputs before returning them.
"""

from .detect import (
    BicliqueWitness,
    CycleCensus,
    count_short_cycles,
    enumerate_short_cycles,
    find_biclique,
    girth,
    kst_edge_bound,
    verify_biclique,
)
from .errors import (
    AuditError,
    BipgirthError,
    EnumerationCapExceeded,
    GenerationError,
    GraphConstructionError,
    GraphFormatError,
    NeitherError,
    ParameterError,
    PartitionStructureError,
    PartitionUnavailableError,
    PreconditionError,
    SearchBudgetExceeded,
    SelectionError,
)
from .generate import (
    NeighbourhoodRegularSpec,
    Seed,
    gen_biregular,
    gen_complete,
    gen_neighbourhood_regular,
    gen_projective_incidence,
    gen_random,
)
from .girth6 import (
    BicliqueOutcome,
    DedupeResult,
    FunnelOutcome,
    GirthSixOutcome,
    HubResult,
    IndependentSetResult,
    IterationResult,
    NeighbourlyGraph,
    SearchBudgets,
    RTPartition,
    RTVerifyReport,
    ScheduleRow,
    dedupe_neighbourhoods,
    find_rt_partition,
    independent_set_or_hub,
    iterate_extraction,
    neighbourly_graph,
    dichotomy_step,
    extraction_schedule,
    verify_rt_partition,
)
from .graph import (
    BipartiteGraph,
    DegreeStats,
    InducedSelection,
    Side,
    VertexRef,
    average_degree,
    build_graph,
    check_invariants,
    degree_stats,
    graph_to_text,
    induced_subgraph,
    is_r_regular_side,
    make_selection,
    parse_graph,
    parse_selection,
    write_graph,
    write_selection,
)
from .regularize import (
    RegularizeOutcome,
    RegularizeParams,
    ThresholdReport,
    degree_band_extract,
    extract_regular_side,
    regularization_threshold,
    partition_B_uniform,
)
from .sparsify import (
    ExpectationReport,
    SparsifyDiagnostics,
    SparsifyParams,
    SparsifyResult,
    expectation_diagnostics,
    naive_cycle_bound,
    sparsify_high_girth,
)

__version__ = "0.1.0"
