"""
rrdist - Restricted rotation distance between rooted binary trees
"""

from .tree import (
    NodeCategory,
    NodeRef,
    Tree,
    catalan,
    common_sibling_leaf_pairs,
    inorder_internal_nodes,
    node_category,
    parse_encoding,
    serialize,
)
from .transform import (
    Direction,
    Move,
    ReducedTreePair,
    TreePair,
    applicable_moves,
    apply_move,
    apply_word,
    move_word,
    parse_move,
    reduce_pair,
    remove_common_pair,
    rotate,
)
from .metric import (
    DistanceResult,
    FordhamType,
    WEIGHTS,
    classify,
    distance,
    pair_weight,
    rrd,
)
from .sampling import SampleConfig, Seed, derive_seed, sample_pair, sample_tree, sample_trees
from .oracle import (
    RrgGraph,
    build_rrg,
    enumerate_trees,
    extremal_distances,
    oracle_distance,
    verify_fordham,
)
from .config import BatchConfig, HistogramConfig
from .experiments import (
    BucketRow,
    FitResult,
    Histogram,
    Mode,
    PairRecord,
    aggregate,
    deviation_report,
    histogram_for_reduced_size,
    linear_fit,
    reduction_profile,
    run_batch,
    type_pair_census,
)
from .registry import make, register, list_presets

# Import presets module to trigger preset registrations
from . import presets

__version__ = "0.1.0"
__all__ = [
    "NodeCategory",
    "NodeRef",
    "Tree",
    "catalan",
    "common_sibling_leaf_pairs",
    "inorder_internal_nodes",
    "node_category",
    "parse_encoding",
    "serialize",
    "Direction",
    "Move",
    "ReducedTreePair",
    "TreePair",
    "applicable_moves",
    "apply_move",
    "apply_word",
    "move_word",
    "parse_move",
    "reduce_pair",
    "remove_common_pair",
    "rotate",
    "DistanceResult",
    "FordhamType",
    "WEIGHTS",
    "classify",
    "distance",
    "pair_weight",
    "rrd",
    "SampleConfig",
    "Seed",
    "derive_seed",
    "sample_pair",
    "sample_tree",
    "sample_trees",
    "RrgGraph",
    "build_rrg",
    "enumerate_trees",
    "extremal_distances",
    "oracle_distance",
    "verify_fordham",
    "BatchConfig",
    "HistogramConfig",
    "BucketRow",
    "FitResult",
    "Histogram",
    "Mode",
    "PairRecord",
    "aggregate",
    "deviation_report",
    "histogram_for_reduced_size",
    "linear_fit",
    "reduction_profile",
    "run_batch",
    "type_pair_census",
    "make",
    "register",
    "list_presets",
    "presets",
]
