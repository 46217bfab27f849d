"""Finite commutative rings, their automorphism groups, and orbit graphs.

Build a ring from a small expression AST (or the CLI grammar), enumerate
its automorphisms by fingerprint-pruned backtracking, partition the
carrier into orbits, and interrogate the resulting disjoint-union-of-
cliques graph.  `classify` sweeps a deduplicated catalog of small rings
and checks the classification statements exhaustively.
"""

from .autsearch import (
    DEFAULT_SEARCH_BUDGET,
    AutGroup,
    RingMorphism,
    aut_group_order,
    aut_orbits,
    automorphisms,
    compose,
    identity_automorphism,
    inverse,
    is_homomorphism,
    isomorphism,
    subgroup_closure,
)
from .classify import (
    Catalog,
    CatalogEntry,
    VerificationReport,
    build_catalog,
    verify_all,
    verify_field_extension_connectivity,
    verify_involution_and_order_bounds,
    verify_m_connected_classification,
    verify_residue_field_remark,
    verify_trivial_aut_classification,
    verify_type_formulas,
    verify_units_connected_classification,
)
from .cli import emit_dot, emit_json, parse_ring_expr, ring_summary
from .errors import (
    IndexOutOfRange,
    InvalidModulus,
    NotAutomorphism,
    NotBijective,
    NotComposable,
    NotLocal,
    OrderLimitExceeded,
    ParseError,
    RingGraphError,
    SearchBudgetExceeded,
    SemanticError,
)
from .expr import GF, Prod, PolyQuot, RingExpr, SquareZero, Zn, expr_order, gf
from .orbitgraph import OrbitGraph, aut_embeds_in_graph_aut, aut_orbit_graph, build_graph
from .rings import (
    DEFAULT_MAX_ORDER,
    FiniteRing,
    LocalStructure,
    annihilator,
    decompose_local,
    element_fingerprint,
    euler_phi,
    generating_set,
    idempotents,
    local_structure,
    make_ring,
    product_ring,
    socle,
)

__version__ = "0.1.0"
