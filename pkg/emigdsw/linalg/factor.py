"""
    Exact factorizations of symmetric positive definite matrices
"""
from abc import ABC, abstractmethod

import numpy as np
import scipy.sparse as sp
from scipy.linalg import cho_solve
from scipy.linalg.lapack import dpotrf
from scipy.sparse.linalg import splu

from emigdsw.errors import AssemblyError, NotPositiveDefiniteError


def as_sparse_sym(matrix, tol: float = 0.0) -> sp.csr_matrix:
    """
        Convert to CSR and check the matrix is square, finite and symmetric

        Args:
            matrix - Any scipy sparse matrix or dense array
            tol    - Largest accepted |A - A^T| entry

        Returns:
            The matrix as csr_matrix
    """
    matrix = sp.csr_matrix(matrix, dtype=float)
    if matrix.shape[0] != matrix.shape[1]:
        raise AssemblyError(f"Expected a square matrix, got {matrix.shape}")
    if not np.all(np.isfinite(matrix.data)):
        raise AssemblyError("The matrix has non-finite entries")

    asymmetry = abs(matrix - matrix.T)
    if asymmetry.nnz and asymmetry.max() > tol:
        raise AssemblyError(f"The matrix is not symmetric (max |A - A^T| = {asymmetry.max()})")
    return matrix


class Factorization(ABC):
    """
        A factorized SPD matrix. Immutable, so concurrent solves are safe.
    """

    n: int

    @abstractmethod
    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """
            Solve A x = rhs for one vector or the columns of a dense array
        """
        raise NotImplementedError()

    def __call__(self, rhs: np.ndarray) -> np.ndarray:
        return self.solve(rhs)


class SparseFactorization(Factorization):
    """
        SuperLU with a symmetric fill-reducing ordering and no row pivoting,
        which is a Cholesky factorization in LU form for SPD input

        Properties:
            lu - The scipy SuperLU object.
            n  - Dimension.
    """

    def __init__(self, lu, n: int):
        self.lu = lu
        self.n = n

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        if self.n == 0:
            return np.zeros_like(rhs, dtype=float)
        return self.lu.solve(np.asarray(rhs, dtype=float))

    @property
    def nnz(self) -> int:
        return self.lu.L.nnz + self.lu.U.nnz


class DenseCholesky(Factorization):
    """
        LAPACK Cholesky of a small dense matrix

        Properties:
            factor - The upper triangular factor.
            n      - Dimension.
    """

    def __init__(self, factor: np.ndarray):
        self.factor = factor
        self.n = factor.shape[0]

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        if self.n == 0:
            return np.zeros_like(rhs, dtype=float)
        return cho_solve((self.factor, False), np.asarray(rhs, dtype=float))


def factorize(matrix) -> SparseFactorization:
    """
        Factorize a sparse SPD matrix

        Args:
            matrix - The sparse symmetric matrix

        Returns:
            A SparseFactorization

        Raises:
            NotPositiveDefiniteError with the offending row when a pivot is
            zero or negative
    """
    matrix = sp.csc_matrix(matrix, dtype=float)
    n = matrix.shape[0]
    if n == 0:
        return SparseFactorization(None, 0)

    try:
        lu = splu(
            matrix,
            permc_spec="MMD_AT_PLUS_A",
            diag_pivot_thresh=0.0,
            options={"SymmetricMode": True},
        )
    except RuntimeError as exception:
        raise NotPositiveDefiniteError(f"Sparse factorization failed: {exception}")

    diagonal = lu.U.diagonal()
    bad = np.flatnonzero(~(diagonal > 0))
    if len(bad):
        # Column k of the factor is original column i where perm_c[i] == k
        pivot = int(np.flatnonzero(lu.perm_c == bad[0])[0])
        raise NotPositiveDefiniteError(
            f"Non-positive pivot {diagonal[bad[0]]:.3e} at row {pivot}", pivot=pivot
        )

    return SparseFactorization(lu, n)


def factorize_dense(matrix, error=NotPositiveDefiniteError) -> DenseCholesky:
    """
        Cholesky factorize a small dense SPD matrix

        Args:
            matrix - Dense (or sparse, densified) symmetric matrix
            error  - The NotPositiveDefiniteError subclass to raise

        Returns:
            A DenseCholesky
    """
    if sp.issparse(matrix):
        matrix = matrix.toarray()
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return DenseCholesky(np.zeros((0, 0)))

    factor, info = dpotrf(matrix, lower=False, clean=True)
    if info > 0:
        raise error(f"Cholesky failed at column {info - 1}", pivot=info - 1)
    if info < 0:
        raise error(f"Invalid argument {-info} passed to the Cholesky factorization")
    return DenseCholesky(factor)
