"""Crossing-critical graph families, drawings and exact crossing numbers."""

__version__ = "0.1.0"

from .drawing import (
    CrossingPoint,
    Drawing,
    canonical_drawing,
    canonical_family_drawing,
    export_drawing,
    import_drawing,
    is_certificate,
    is_good_drawing,
    planarize,
    realize,
    weighted_crossing_count,
    witness_drawing_template,
)
from .errors import (
    BudgetExceeded,
    CrossingCritError,
    InvalidAnchor,
    InvalidDrawing,
    InvalidParams,
    NotFound,
)
from .families import (
    FamilyParams,
    build_g13,
    build_g13_family,
    build_g13_k,
    build_k33,
    build_kochol,
    shrink_wedge,
    shrink_wedge_graph,
    theorem3_build,
    theorem3_construct,
    transform_degree3,
    transform_degree_split,
)
from .graphcore import (
    EdgeBundle,
    EdgeColor,
    GraphBuilder,
    WeightedMultigraph,
    contract_edge,
    degree_profile,
    delete_edge,
    is_isomorphic,
    subdivide_edge,
    subdivide_to_simple,
    zip_product,
)
from .heuristic import planarize_heuristic
from .planarity import Embedding, enumerate_small_embeddings, is_planar, kuratowski_subgraph, trace_faces
from .proofcheck import enumerate_table1, lemma3_case_bounds, table1_matches_golden, verify_path_catalog
from .solver import SolveResult, SolverBudget, Status, euler_lower_bound, exact_cr, improve_below, skewness_lb
from .verify import (
    CriticalityReport,
    verify_criticality,
    verify_g13_lowerbound_pipeline,
    verify_theorem3,
    verify_upper,
)
