"""Minimum circulant rank certificates for circulant graphs.

Compute, construct, and independently verify the minimum semidefinite
circulant rank parameters of circulant graphs: explicit PSD circulant
matrices, cyclically symmetric orthogonal representations, and sparse
nonnegative polynomial certificates realizing them.
"""

from .algebra import (
    CirculantMatrix,
    Tolerance,
    a_matrix,
    diagonalize_circulant,
    fourier_matrix,
    gram,
    graph_of_matrix,
    is_psd,
    orbit,
    rank_with_tol,
    u_matrix,
)
from .construct import (
    CertificateBundle,
    RootSet,
    caratheodory_polynomial,
    consecutive_certificate,
    consecutive_polynomial,
    prime_certificate,
    rank_spectrum_consecutive,
    real_consecutive_certificate,
    shifted_real_polynomial,
)
from .graph import (
    CirculantGraph,
    format_graph,
    is_consecutive,
    mr_lower_bound,
    new_graph,
    parse_graph,
    zero_forcing_consecutive,
)
from .polycert import (
    NonnegPolynomial,
    check_condition_C,
    check_condition_R_weight,
    eval_at_root,
    is_balanced,
    ncv,
    poly_of_vector,
    reduce_mod,
    weight,
)
from .search import (
    BALANCED,
    COMPLEX,
    WEIGHT,
    min_terms_search,
    parameter_report,
    sampling_oracle,
    support_feasibility,
)
from .verify import VerificationReport, verify_certificate, verify_matrix_claim

__version__ = "0.1.0"

__all__ = [
    "BALANCED",
    "COMPLEX",
    "CertificateBundle",
    "CirculantGraph",
    "CirculantMatrix",
    "NonnegPolynomial",
    "RootSet",
    "Tolerance",
    "VerificationReport",
    "WEIGHT",
    "a_matrix",
    "caratheodory_polynomial",
    "check_condition_C",
    "check_condition_R_weight",
    "consecutive_certificate",
    "consecutive_polynomial",
    "diagonalize_circulant",
    "eval_at_root",
    "format_graph",
    "fourier_matrix",
    "gram",
    "graph_of_matrix",
    "is_balanced",
    "is_consecutive",
    "is_psd",
    "min_terms_search",
    "mr_lower_bound",
    "ncv",
    "new_graph",
    "orbit",
    "parameter_report",
    "parse_graph",
    "poly_of_vector",
    "prime_certificate",
    "rank_spectrum_consecutive",
    "rank_with_tol",
    "real_consecutive_certificate",
    "reduce_mod",
    "sampling_oracle",
    "shifted_real_polynomial",
    "support_feasibility",
    "u_matrix",
    "verify_certificate",
    "verify_matrix_claim",
    "weight",
    "zero_forcing_consecutive",
]
