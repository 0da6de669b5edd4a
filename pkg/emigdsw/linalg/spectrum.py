"""
    Condition number estimates: Lanczos from PCG coefficients and dense oracles
"""
import numpy as np
import scipy.linalg as la
import scipy.sparse as sp

from emigdsw.errors import NotPositiveDefiniteError


def lanczos_tridiagonal(alphas, betas) -> tuple:
    """
        The Lanczos tridiagonal matrix implied by m CG steps

        Args:
            alphas - alpha_0 .. alpha_{m-1}
            betas  - beta_0 .. beta_{m-2} (extra entries are ignored)

        Returns:
            (diagonal, off_diagonal)
    """
    alphas = np.asarray(alphas, dtype=float)
    m = len(alphas)
    betas = np.asarray(betas, dtype=float)[: max(m - 1, 0)]

    diagonal = 1.0 / alphas
    diagonal[1:] += betas / alphas[:-1]
    off_diagonal = np.sqrt(betas) / alphas[:-1]
    return diagonal, off_diagonal


def lanczos_condition(stats) -> float:
    """
        k2 = lambda_max / lambda_min of the Lanczos tridiagonal of a solve

        Args:
            stats - The SolveStats of a PCG run

        Returns:
            The estimate, 1.0 with fewer than two iterations
    """
    if len(stats.alphas) < 2:
        return 1.0

    diagonal, off_diagonal = lanczos_tridiagonal(stats.alphas, stats.betas)
    eigenvalues = la.eigvalsh_tridiagonal(diagonal, off_diagonal)
    return float(eigenvalues[-1] / eigenvalues[0])


def dense_spectrum(A, B=None) -> tuple:
    """
        Extreme eigenvalues of A, or of the pencil (A, B)

        Args:
            A - Symmetric matrix
            B - Optional SPD metric

        Returns:
            (lambda_min, lambda_max)
    """
    A = A.toarray() if sp.issparse(A) else np.asarray(A, dtype=float)
    if B is not None:
        B = B.toarray() if sp.issparse(B) else np.asarray(B, dtype=float)
        try:
            eigenvalues = la.eigh(A, B, eigvals_only=True)
        except la.LinAlgError as exception:
            raise NotPositiveDefiniteError(f"The metric is not positive definite: {exception}")
    else:
        eigenvalues = la.eigvalsh(A)
    return float(eigenvalues[0]), float(eigenvalues[-1])


def dense_condition(A, precond=None, kernel=None) -> float:
    """
        k2 of the preconditioned operator by a dense eigensolve. Only meant for
        a few thousand unknowns.

        Args:
            A       - The SPD system matrix
            precond - Callable r -> P r (None for the identity)
            kernel  - Unit vector deflated from both operators

        Returns:
            lambda_max / lambda_min of P A on the complement of the kernel
    """
    A = A.toarray() if sp.issparse(A) else np.asarray(A, dtype=float)
    n = A.shape[0]
    if precond is None:
        P = np.eye(n)
    else:
        P = np.column_stack([precond(column) for column in np.eye(n)])
    P = (P + P.T) * 0.5

    if kernel is not None:
        basis = la.null_space(np.asarray(kernel).reshape(1, -1))
        A = basis.T @ A @ basis
        P = basis.T @ P @ basis

    try:
        lower = la.cholesky(P, lower=True)
    except la.LinAlgError as exception:
        raise NotPositiveDefiniteError(f"The preconditioner is not positive definite: {exception}")

    lambda_min, lambda_max = dense_spectrum(lower.T @ A @ lower)
    return lambda_max / lambda_min
