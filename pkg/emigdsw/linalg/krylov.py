"""
    Preconditioned conjugate gradients with Lanczos coefficient harvesting
"""
from dataclasses import dataclass, field

import numpy as np

from emigdsw.conf import DEFAULT_TOL, create_logger
from emigdsw.errors import BreakdownError
from emigdsw.linalg.spectrum import lanczos_condition

LOGGER = create_logger(__name__, "INFO")


@dataclass
class SolveStats:
    """
        Record of one PCG solve

        Properties:
            iterations - CG steps taken.
            residuals  - ||z_k|| / ||P b|| after every step, starting with k = 0.
            alphas     - Step lengths alpha_k.
            betas      - Direction updates beta_k.
            converged  - Whether the tolerance was reached.
            k2         - Condition number estimate of the preconditioned operator.
    """

    iterations: int = 0
    residuals: list = field(default_factory=list)
    alphas: list = field(default_factory=list)
    betas: list = field(default_factory=list)
    converged: bool = False
    k2: float = 1.0

    @property
    def final_residual(self) -> float:
        return self.residuals[-1] if self.residuals else 0.0


def _project(vector: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    if kernel is None:
        return vector
    return vector - kernel * (kernel @ vector)


def pcg(A, b, precond=None, tol: float = DEFAULT_TOL, maxit: int = 5000, x0=None, kernel=None) -> tuple:
    """
        Solve A x = b by preconditioned conjugate gradients

        The iteration stops once ||z_k|| <= tol * ||P b|| with z_k = P r_k, the
        preconditioned residual. With x0 = 0 the reference is ||z_0||.

        Args:
            A       - SPD matrix or anything supporting A @ x
            b       - Right-hand side
            precond - Callable r -> P r (None for plain CG)
            tol     - Relative tolerance on the preconditioned residual
            maxit   - Iteration cap
            x0      - Initial guess (default 0)
            kernel  - Unit vector spanning the kernel of A, deflated from every
                      iterate and residual

        Returns:
            (x, SolveStats). x is the best iterate when maxit is reached.
    """
    if precond is None:
        precond = np.copy

    b = _project(np.asarray(b, dtype=float), kernel)
    stats = SolveStats()

    if x0 is None:
        x = np.zeros_like(b)
        r = b.copy()
        z = _project(precond(r), kernel)
        reference = np.linalg.norm(z)
    else:
        x = _project(np.array(x0, dtype=float), kernel)
        r = b - A @ x
        z = _project(precond(r), kernel)
        reference = np.linalg.norm(_project(precond(b), kernel))

    if reference == 0:
        stats.converged = True
        stats.residuals.append(0.0)
        return np.zeros_like(b), stats

    residual = np.linalg.norm(z) / reference
    stats.residuals.append(residual)
    best_x, best_residual = x.copy(), residual

    if residual <= tol:
        stats.converged = True
        return x, stats

    p = z.copy()
    rz = r @ z

    for _ in range(maxit):
        q = A @ p
        curvature = p @ q
        if not curvature > 0:
            raise BreakdownError(f"Non-positive curvature p'Ap = {curvature:.3e} at step {stats.iterations}")

        alpha = rz / curvature
        x += alpha * p
        r -= alpha * q
        z = _project(precond(r), kernel)
        stats.iterations += 1
        stats.alphas.append(alpha)

        residual = np.linalg.norm(z) / reference
        stats.residuals.append(residual)
        if residual < best_residual:
            best_x, best_residual = x.copy(), residual
        if residual <= tol:
            stats.converged = True
            break

        rz_next = r @ z
        beta = rz_next / rz
        stats.betas.append(beta)
        p = z + beta * p
        rz = rz_next

    stats.k2 = lanczos_condition(stats)
    LOGGER.debug(
        f"PCG: {stats.iterations} iterations, residual {residual:.2e}, k2 {stats.k2:.2f}"
    )

    if not stats.converged:
        LOGGER.warning(f"PCG stopped at maxit={maxit} with residual {residual:.2e}")
        return best_x, stats
    return x, stats
