"""Combinatorics of weighted resolution graphs of normal surface singularities.

Negative-definiteness, blow-down calculus, automorphisms, graph coverings,
and a rule engine certifying essential divisors in the image of the Nash map.
"""

__version__ = "0.1.0"

from .calculus import (  # noqa: E402
    SMOOTH_POINT,
    blow_down,
    blow_up_edge,
    blow_up_free,
    build_g3,
    essential_vertices,
    minimalize,
    trivial_arrows,
)
from .constraints import (  # noqa: E402
    KnownArrowSet,
    certify,
    derive_constraints,
    enumerate_consistent_digraphs,
    is_extremal,
    transfer_subgraph,
    transfer_weight_decrease,
)
from .graph import (  # noqa: E402
    Vertex,
    WeightedGraph,
    are_isomorphic,
    automorphisms,
    incidence_matrix,
    is_negative_definite,
    is_simple,
)
from .topology import (  # noqa: E402
    Loop,
    cyclic_cover_along_loop,
    enumerate_simple_loops,
    fiber_product,
    girth_nontrivial,
    indice_cover,
    verify_covering,
)

__all__ = [
    "SMOOTH_POINT",
    "KnownArrowSet",
    "Loop",
    "Vertex",
    "WeightedGraph",
    "are_isomorphic",
    "automorphisms",
    "blow_down",
    "blow_up_edge",
    "blow_up_free",
    "build_g3",
    "certify",
    "cyclic_cover_along_loop",
    "derive_constraints",
    "enumerate_consistent_digraphs",
    "enumerate_simple_loops",
    "essential_vertices",
    "fiber_product",
    "girth_nontrivial",
    "incidence_matrix",
    "indice_cover",
    "is_extremal",
    "is_negative_definite",
    "is_simple",
    "minimalize",
    "transfer_subgraph",
    "transfer_weight_decrease",
    "trivial_arrows",
    "verify_covering",
]
