"""Pattern-replacement (K-)equivalence on permutations."""

from .engine import ClassReport, class_of, enumerate_classes, pq_targets, verify_reachability
from .partitions import (ReplacementPartition, hits, make_custom, make_cyclic, make_first_fixed,
                         make_first_last, neighbors, parse_partition)
from .perm import left_harpoon, parity, rank, right_harpoon, rot, standardize, unrank

__version__ = "0.1.0"
