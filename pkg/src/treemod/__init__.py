"""Spanning-tree modulus, strength, denseness and partition duality.

Exact rational arithmetic is the authority for every reported quantity;
numeric engines exist for speed and are cross-checked against the exact
results.
"""

__version__ = "0.1.0"

from .graph_core import (  # noqa: F401
    Density,
    Multigraph,
    Partition,
    UsageVector,
    build_graph,
    induced_subgraph,
    is_finer,
    is_vertex_biconnected,
    make_partition,
    parse_graph,
    partition_from_names,
    partition_weight,
    serialize_graph,
    shrink,
    singletons_partition,
)
from .tree_ops import (  # noqa: F401
    PackingCertificate,
    count_spanning_trees,
    enumerate_spanning_trees,
    max_disjoint_tree_packing,
    minimum_spanning_tree,
    restrict,
    tree_length,
    witness_trees,
)
