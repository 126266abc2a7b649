"""Exact spanning-tree counts and degree-product bounds for bipartite graphs.

The toolkit proves, at desk scale and in exact arithmetic, that a connected
bipartite graph has at most (1/mn) * prod(deg) spanning trees, with equality
exactly for the staircase graphs whose Y-neighborhoods nest.  Everything on
the certified path runs over integers or Fractions; floating point appears
only in the eigensolver, always beside an exact cross-check.
"""

from .errors import (
    CapExceeded,
    DimensionError,
    DisconnectedGraph,
    FerrersError,
    GraphFormatError,
    IdentityViolation,
    InvalidPartition,
    IsolatedVertex,
    NonConvergence,
    TheoremViolation,
)
from .graphs import (
    BipartiteGraph,
    DegreeData,
    PartitionSpec,
    bit_indices,
    canonical_form,
    degrees,
    effective_cap,
    enumerate_connected,
    ferrers_from_partition,
    from_biadjacency,
    graph_from_mask,
    is_connected,
    is_ferrers,
    parse_graph,
    write_graph,
)
from .linalg import (
    Rational,
    RationalMatrix,
    bareiss_det,
    laplacian,
    matrix_M,
    projection_P,
    projection_Q,
    rat_str,
    schur_LX,
)
from .spectral import (
    SpectralReport,
    Spectrum,
    eigen_sym,
    kyfan_check,
    majorization_report,
    overlap_defect,
    overlap_trace,
    report_dict,
)
from .trees import (
    SpanningTree,
    bozkurt_bound,
    check_reduction,
    ferrers_invariant,
    tau_brute_force,
    tau_matrix_tree,
)
from .verify import (
    CampaignSummary,
    VerificationRecord,
    corollary_check,
    equality_flag_diagonalization,
    record_dict,
    summary_dict,
    verify_graph,
    verify_pairs,
    verify_range,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "CampaignSummary",
    "CapExceeded",
    "DegreeData",
    "DimensionError",
    "DisconnectedGraph",
    "FerrersError",
    "GraphFormatError",
    "IdentityViolation",
    "InvalidPartition",
    "IsolatedVertex",
    "NonConvergence",
    "PartitionSpec",
    "Rational",
    "RationalMatrix",
    "SpanningTree",
    "SpectralReport",
    "Spectrum",
    "TheoremViolation",
    "VerificationRecord",
    "bareiss_det",
    "bit_indices",
    "bozkurt_bound",
    "canonical_form",
    "check_reduction",
    "corollary_check",
    "degrees",
    "effective_cap",
    "eigen_sym",
    "enumerate_connected",
    "equality_flag_diagonalization",
    "ferrers_from_partition",
    "ferrers_invariant",
    "from_biadjacency",
    "graph_from_mask",
    "is_connected",
    "is_ferrers",
    "kyfan_check",
    "laplacian",
    "majorization_report",
    "matrix_M",
    "overlap_defect",
    "overlap_trace",
    "parse_graph",
    "projection_P",
    "projection_Q",
    "rat_str",
    "record_dict",
    "report_dict",
    "schur_LX",
    "summary_dict",
    "tau_brute_force",
    "tau_matrix_tree",
    "verify_graph",
    "verify_pairs",
    "verify_range",
    "write_graph",
]
