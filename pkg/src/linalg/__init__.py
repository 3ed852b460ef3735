"""Dense and diagonal symmetric linear algebra."""
from src.linalg.decompositions import (
    SpdFactorization,
    SpectralDecomposition,
    operator_power,
    solve,
    spd_factorize,
    spectral_decompose,
    spectral_radius,
)
from src.linalg.operators import (
    Matrix,
    SymmetricOperator,
    as_operator,
    dim_of,
    is_diagonal,
    matvec,
    to_dense,
)

__all__ = [
    "SymmetricOperator", "Matrix", "as_operator", "dim_of", "is_diagonal",
    "matvec", "to_dense",
    "SpdFactorization", "SpectralDecomposition",
    "spd_factorize", "spectral_decompose", "solve", "spectral_radius",
    "operator_power",
]
