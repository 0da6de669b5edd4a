"""
    Subdomain stiffness assembly and the composite operator K = tau * sum(A_i) + M
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from emigdsw.assembly.element import element_stiffness_q1
from emigdsw.conf import create_logger
from emigdsw.errors import AssemblyError, SingularSystemError

LOGGER = create_logger(__name__, "INFO")


def assemble_subdomain_stiffness(sub, h: float, n_dofs: int) -> sp.csr_matrix:
    """
        Assemble A_i, the Q1 stiffness of one subdomain, in the global numbering

        Args:
            sub    - The Subdomain
            h      - Element edge length
            n_dofs - Global DOF count

        Returns:
            A sparse matrix supported on the subdomain's DOFs only
    """
    block = element_stiffness_q1(h, h, sub.sigma)
    conn = sub.elements + sub.dof_offset

    rows = np.repeat(conn, 4, axis=1).ravel()
    cols = np.tile(conn, (1, 4)).ravel()
    data = np.tile(block.ravel(), len(conn))
    return sp.csr_matrix((data, (rows, cols)), shape=(n_dofs, n_dofs))


def assemble_stiffness_blocks(topology, workers: int = 1) -> list:
    """
        Assemble every A_i. Subdomains own disjoint DOF ranges, so the blocks
        can be built concurrently.

        Args:
            topology - The MeshTopology
            workers  - Threads to use

        Returns:
            The list of A_i, frame first
    """
    h, n_dofs = topology.config.h, topology.n_dofs

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(
                pool.map(lambda sub: assemble_subdomain_stiffness(sub, h, n_dofs), topology.subdomains)
            )
    return [assemble_subdomain_stiffness(sub, h, n_dofs) for sub in topology.subdomains]


@dataclass(frozen=True, eq=False)
class CompositeOperator:
    """
        K = tau * A + M restricted to the free DOFs

        The full-size stiffness A = sum(A_i) and jump mass M are retained so the
        operator can be rebuilt for another tau without reassembly.

        Properties:
            matrix    - K over the free DOFs (Dirichlet rows and columns removed).
            stiffness - sum(A_i), all DOFs.
            mass      - M, all DOFs.
            tau       - Time step (ms).
            free      - Global ids of the free DOFs.
            dirichlet - Global ids of the Dirichlet DOFs.
            kernel    - Unit vector spanning the kernel of K when the zero-mean
                        option replaces the Dirichlet condition, else None.
    """

    matrix: sp.csr_matrix = field(repr=False)
    stiffness: sp.csr_matrix = field(repr=False)
    mass: sp.csr_matrix = field(repr=False)
    tau: float
    free: np.ndarray = field(repr=False)
    dirichlet: np.ndarray = field(repr=False)
    kernel: np.ndarray = field(default=None, repr=False)

    @property
    def n_dofs(self) -> int:
        return self.stiffness.shape[0]

    @property
    def n_free(self) -> int:
        return len(self.free)

    @property
    def free_index(self) -> np.ndarray:
        """
            Map from a global DOF to its free index (-1 on Dirichlet DOFs)
        """
        index = np.full(self.n_dofs, -1, dtype=int)
        index[self.free] = np.arange(self.n_free)
        return index

    def restrict(self, vector: np.ndarray) -> np.ndarray:
        return vector[self.free]

    def prolong(self, vector: np.ndarray) -> np.ndarray:
        """
            Extend a free-DOF vector by zero on the Dirichlet DOFs
        """
        full = np.zeros(self.n_dofs)
        full[self.free] = vector
        return full

    def energy(self, u: np.ndarray) -> float:
        """
            u^T (tau A + M) u for a vector over all DOFs
        """
        return float(self.tau * (u @ (self.stiffness @ u)) + u @ (self.mass @ u))

    def rescale(self, tau: float) -> "CompositeOperator":
        """
            The same operator for another time step, from the retained blocks
        """
        return assemble_system(
            tau, self.stiffness, self.mass, self.dirichlet, zero_mean=self.kernel is not None
        )


def assemble_system(
    tau: float, stiffness_blocks, mass: sp.spmatrix, dirichlet, zero_mean: bool = False
) -> CompositeOperator:
    """
        Assemble K = tau * sum(A_i) + M and eliminate the Dirichlet DOFs symmetrically

        Args:
            tau              - Time step, > 0
            stiffness_blocks - A list of A_i or their sum
            mass             - The jump mass M
            dirichlet        - Global ids of the Dirichlet DOFs
            zero_mean        - Allow an empty Dirichlet set; the constant vector is
                               then carried as the kernel of K

        Returns:
            The CompositeOperator
    """
    if not tau > 0:
        raise AssemblyError(f"The time step must be positive, got {tau}")

    if isinstance(stiffness_blocks, (list, tuple)):
        stiffness = sum(stiffness_blocks[1:], stiffness_blocks[0])
    else:
        stiffness = stiffness_blocks
    stiffness = sp.csr_matrix(stiffness)
    mass = sp.csr_matrix(mass)

    if stiffness.shape != mass.shape:
        raise AssemblyError(f"Stiffness {stiffness.shape} and mass {mass.shape} differ in size")

    n_dofs = stiffness.shape[0]
    dirichlet = np.unique(np.asarray(dirichlet, dtype=int))
    kernel = None

    if len(dirichlet) == 0:
        if not zero_mean:
            raise SingularSystemError(
                "No Dirichlet DOFs and no zero-mean handling: the operator is singular"
            )
        kernel = np.full(n_dofs, 1.0 / np.sqrt(n_dofs))
    elif zero_mean:
        LOGGER.warning("Dirichlet DOFs present, ignoring the zero-mean option")

    mask = np.ones(n_dofs, dtype=bool)
    mask[dirichlet] = False
    free = np.flatnonzero(mask)

    full = (tau * stiffness + mass).tocsr()
    matrix = full[free][:, free]
    matrix = ((matrix + matrix.T) * 0.5).tocsr()

    return CompositeOperator(
        matrix=matrix,
        stiffness=stiffness,
        mass=mass,
        tau=tau,
        free=free,
        dirichlet=dirichlet,
        kernel=kernel,
    )
