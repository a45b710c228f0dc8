"""Fixed small-dimension complex linear algebra."""

from twoqubit_eof.linalg.hermitian import HermitianEig, herm_eig, sqrt_psd
from twoqubit_eof.linalg.takagi import TakagiFactorization, takagi
from twoqubit_eof.linalg.types import ComplexMatrix, as_complex_matrix

__all__ = [
    "ComplexMatrix",
    "HermitianEig",
    "TakagiFactorization",
    "as_complex_matrix",
    "herm_eig",
    "sqrt_psd",
    "takagi",
]
