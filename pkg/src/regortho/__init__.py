"""Exact generation and decomposition of regular rational orthogonal matrices."""
from .cayley import (
    RegularCayleyDecomposition,
    SignDiagonalDecomposition,
    SkewZeroRowSum,
    cayley_forward,
    cayley_inverse,
    decompose_regular,
    find_regularizing_permutation,
    liebeck_osborn_decompose,
    random_regular_orthogonal,
    random_skew_zero_rowsum,
)
from .exact import (
    Matrix,
    charpoly,
    det,
    inverse,
    is_orthogonal,
    is_permutation_matrix,
    is_regular,
    is_skew,
    mat_mul,
    submatrix_det,
)
from .perms import Permutation, restricted_sign

__version__ = "0.1.0"
