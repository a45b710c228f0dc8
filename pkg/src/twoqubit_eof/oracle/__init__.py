"""Independent brute-force verification of the closed-form formula."""

from twoqubit_eof.oracle.averages import average_concurrence, average_entanglement
from twoqubit_eof.oracle.sampling import (
    RandomSpec,
    SamplingMethod,
    haar_isometry,
    random_decomposition,
    random_density_matrices,
    random_density_matrix,
)
from twoqubit_eof.oracle.search import (
    SearchTrace,
    minimize_over_decompositions,
    search_decompositions,
)
from twoqubit_eof.oracle.verify import (
    VerificationReport,
    VerificationSummary,
    merge_reports,
    verify_formula,
)

__all__ = [
    "RandomSpec",
    "SamplingMethod",
    "SearchTrace",
    "VerificationReport",
    "VerificationSummary",
    "average_concurrence",
    "average_entanglement",
    "haar_isometry",
    "merge_reports",
    "minimize_over_decompositions",
    "random_decomposition",
    "random_density_matrices",
    "random_density_matrix",
    "search_decompositions",
    "verify_formula",
]
