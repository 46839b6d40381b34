"""Solvers for balanced connected 2-partition of vertices (BCP2) and edges
(BCEP2): a treewidth dynamic program, a BFS-ball/contraction engine for
planar-style inputs, a grid-cell engine for unit-disk instances, a
representative-family matroid engine for the edge variant, brute-force
oracles, instance generators, and a CLI tying them together.
"""

from .graph import (
    BcepSemantics,
    Graph,
    GraphError,
    bfs_ball,
    connected_components,
    contract_outside,
    is_connected,
    verify_bcep2,
    verify_bcp2,
)
from .dp import merge_partitions, run_dp, solve_bcp2_tw
from .edge_solver import solve_bcep2
from .oracle import (
    OracleLimitError,
    enumerate_connected_vertex_sets,
    solve_bcep2_oracle,
    solve_bcp2_oracle,
)
from .planar import solve_bcp2_planar, solve_restricted_planar
from .treedecomp import make_nice, min_fill_decomposition, validate_nice
from .udg import build_disk_graph, solve_bcp2_udg

__all__ = [
    "BcepSemantics",
    "Graph",
    "GraphError",
    "OracleLimitError",
    "bfs_ball",
    "build_disk_graph",
    "connected_components",
    "contract_outside",
    "enumerate_connected_vertex_sets",
    "is_connected",
    "make_nice",
    "merge_partitions",
    "min_fill_decomposition",
    "run_dp",
    "solve_bcep2",
    "solve_bcep2_oracle",
    "solve_bcp2_oracle",
    "solve_bcp2_planar",
    "solve_bcp2_tw",
    "solve_bcp2_udg",
    "solve_restricted_planar",
    "validate_nice",
    "verify_bcep2",
    "verify_bcp2",
]

__version__ = "0.1.0"
