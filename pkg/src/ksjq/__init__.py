"""k-dominant skyline join queries over two relations."""

from .core import dominance_counts, k_dominant_skyline, k_dominates, skyline_mask
from .data import DatasetSpec, flight_fixture, generate, read_csv, write_csv
from .engine import (JoinedTuple, QueryConfig, SkylineAnswer, check_target, join_pair, ksjq_cartesian,
                     ksjq_dominator, ksjq_grouping, ksjq_naive, run_query)
from .kfinder import (KSearchResult, count_bounds, find_k_at_most, find_k_binary, find_k_naive,
                      find_k_range)
from .partition import (Condition, PartitionLabels, augment, check_uvp, classify, classify_nonequality,
                        dominator_sets, group_by_join_key)
from .relation import Relation, Schema, Tuple

__version__ = "0.1.0"

__all__ = [
    "Condition", "DatasetSpec", "JoinedTuple", "KSearchResult", "PartitionLabels", "QueryConfig",
    "Relation", "Schema", "SkylineAnswer", "Tuple", "augment", "check_target", "check_uvp", "classify",
    "classify_nonequality", "count_bounds", "dominance_counts", "dominator_sets", "find_k_at_most",
    "find_k_binary", "find_k_naive", "find_k_range", "flight_fixture", "generate", "group_by_join_key",
    "join_pair", "k_dominant_skyline", "k_dominates", "ksjq_cartesian", "ksjq_dominator",
    "ksjq_grouping", "ksjq_naive", "read_csv", "run_query", "skyline_mask", "write_csv",
]
