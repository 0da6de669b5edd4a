"""
    Right-hand side of one IMEX step
"""
import numpy as np

from emigdsw.errors import AssemblyError


class RhsAssembler:
    """
        Builds f = M u_prev - tau * B F where B = J^T W applies the signed edge
        mass to nodal reaction samples. The reaction samples come from the
        membrane model (emigdsw.ionic.membrane_step).

        Args:
            coupling - The InterfaceCoupling of the mesh.
            c_m      - Membrane capacitance.
            tau      - Time step.
    """

    def __init__(self, coupling, c_m: float, tau: float):
        self.coupling = coupling
        self.c_m = c_m
        self.tau = tau

    def assemble(self, u_prev: np.ndarray, f_nodal: np.ndarray) -> np.ndarray:
        """
            Assemble the right-hand side over all DOFs

            Args:
                u_prev  - Potential of the previous step (all DOFs)
                f_nodal - Reaction samples F at every station

            Returns:
                f, zero away from the interface
        """
        coupling = self.coupling
        if len(u_prev) != coupling.n_dofs:
            raise AssemblyError(
                f"Potential has {len(u_prev)} entries, the mesh has {coupling.n_dofs} DOFs"
            )
        if len(f_nodal) != coupling.n_stations:
            raise AssemblyError(
                f"Got {len(f_nodal)} reaction samples for {coupling.n_stations} stations"
            )

        # M u = c_m J^T W J u, so both terms share J^T W
        return coupling.load(self.c_m * coupling.jumps(u_prev) - self.tau * np.asarray(f_nodal))


def assemble_rhs(coupling, u_prev: np.ndarray, f_nodal: np.ndarray, tau: float, c_m: float) -> np.ndarray:
    """
        One-shot form of RhsAssembler.assemble
    """
    return RhsAssembler(coupling, c_m, tau).assemble(u_prev, f_nodal)
