"""Secret-key capacities, rate regions, and XOR discussion schemes for
minimally connected hypergraphical sources.

Everything is exact: weights and rates are rationals, partition functionals
are minimized by enumeration, schemes are verified by GF(2) rank, and the
simulation kit can exhaustively sweep small state spaces.
"""

from .errors import (
    Disconnected,
    DuplicateEdgeId,
    EmptyResult,
    EmptyVertexSet,
    GenerationBudgetExhausted,
    GroundTooLarge,
    HyperkeyError,
    InvalidPartition,
    KeyRateExceedsCapacity,
    NegativeRate,
    NonpositiveWeight,
    NotCycleFree,
    NotFundamentalBlock,
    NotMCH,
    ParseError,
    RankDefect,
    SchemeUnverified,
    SemiLatticeViolation,
    StateSpaceTooLarge,
    SubsetOutsideBlock,
    SubsetTooLarge,
    UnknownVertex,
    VertexNotInBlock,
    WeightsNotConvex,
)
from .hypergraph import BergeCycle, Edge, Hypergraph, removal_component_counts
from .partitions import (
    ConnectivityReport,
    Partition,
    chain_order,
    crossing_count,
    entropy,
    enumerate_partitions,
    mmi,
    partition_connectivity,
)
from .capacity import (
    RateTuple,
    RegionCheck,
    RegionSpec,
    communication_complexity,
    constrained_capacity,
    in_region,
    outer_bound_deficit,
    region_spec,
    require_mch,
    unconstrained_capacity,
)
from .polymatroid import (
    ContraPolymatroidReport,
    DecompositionResult,
    ExtremePoint,
    RankFunction,
    decompose,
    extreme_point_for_order,
    extreme_points,
    rank,
    verify_contra_polymatroid,
)
from .scheme import (
    BlockTrace,
    CompositeScheme,
    DiscussionScheme,
    IterationRecord,
    RowAttribution,
    VerificationReport,
    compose_time_shared,
    rates_of,
    representatives,
    shared_representatives,
    synthesize,
    verify,
)
from .simkit import (
    GenerationStats,
    ProtocolRun,
    QuantizedShape,
    SecrecyReport,
    brute_force_secrecy,
    quantize,
    random_mch,
    random_mch_with_stats,
    run,
    secrecy_by_rank,
)
from .properties import lemma_violations, scheme_round_trip_violations
from .hgio import parse, serialize

__version__ = "0.1.0"

__all__ = [
    "BergeCycle",
    "BlockTrace",
    "CompositeScheme",
    "ConnectivityReport",
    "ContraPolymatroidReport",
    "DecompositionResult",
    "Disconnected",
    "DiscussionScheme",
    "DuplicateEdgeId",
    "Edge",
    "EmptyResult",
    "EmptyVertexSet",
    "ExtremePoint",
    "GenerationBudgetExhausted",
    "GenerationStats",
    "GroundTooLarge",
    "Hypergraph",
    "HyperkeyError",
    "InvalidPartition",
    "IterationRecord",
    "KeyRateExceedsCapacity",
    "NegativeRate",
    "NonpositiveWeight",
    "NotCycleFree",
    "NotFundamentalBlock",
    "NotMCH",
    "ParseError",
    "Partition",
    "ProtocolRun",
    "QuantizedShape",
    "RankDefect",
    "RankFunction",
    "RateTuple",
    "RegionCheck",
    "RegionSpec",
    "RowAttribution",
    "SchemeUnverified",
    "SecrecyReport",
    "SemiLatticeViolation",
    "StateSpaceTooLarge",
    "SubsetOutsideBlock",
    "SubsetTooLarge",
    "UnknownVertex",
    "VerificationReport",
    "VertexNotInBlock",
    "WeightsNotConvex",
    "brute_force_secrecy",
    "chain_order",
    "communication_complexity",
    "compose_time_shared",
    "constrained_capacity",
    "crossing_count",
    "decompose",
    "entropy",
    "enumerate_partitions",
    "extreme_point_for_order",
    "extreme_points",
    "in_region",
    "lemma_violations",
    "mmi",
    "outer_bound_deficit",
    "parse",
    "partition_connectivity",
    "quantize",
    "random_mch",
    "random_mch_with_stats",
    "rank",
    "rates_of",
    "region_spec",
    "removal_component_counts",
    "representatives",
    "require_mch",
    "run",
    "scheme_round_trip_violations",
    "secrecy_by_rank",
    "serialize",
    "shared_representatives",
    "synthesize",
    "unconstrained_capacity",
    "verify",
    "verify_contra_polymatroid",
]
