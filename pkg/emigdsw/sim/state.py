"""
    The state carried from one time step to the next
"""
from dataclasses import dataclass, field

import numpy as np

from emigdsw.ionic import MembraneState
from emigdsw.mesh import CELL


@dataclass(frozen=True, eq=False)
class SimState:
    """
        Properties:
            u        - Potential at every DOF (mV), zero on Dirichlet DOFs.
            membrane - The MembraneState; its jumps match u after every step.
            step     - Number of steps taken.
            time     - Current time (ms).
            stats    - SolveStats of every step taken.
    """

    u: np.ndarray = field(repr=False)
    membrane: MembraneState = field(repr=False)
    step: int = 0
    time: float = 0.0
    stats: tuple = field(default=(), repr=False)


def compute_jumps(u: np.ndarray, edges) -> np.ndarray:
    """
        Nodal jumps u[p_i] - u[p_j] at every station, edges in order

        Args:
            u     - Potential at every DOF
            edges - The InterfaceEdge objects

        Returns:
            One value per station, the cell side (or lower id) minus the other
    """
    if not edges:
        return np.zeros(0)
    return np.concatenate([u[edge.pairs[:, 0]] - u[edge.pairs[:, 1]] for edge in edges])


def initial_state(config, topology, coupling, dirichlet) -> SimState:
    """
        Cells at v_init, the frame at v_extracellular_init, Dirichlet DOFs at 0

        Args:
            config    - The SimConfig
            topology  - The MeshTopology
            coupling  - The InterfaceCoupling
            dirichlet - Global ids of the Dirichlet DOFs

        Returns:
            The SimState at t = 0
    """
    is_cell = np.array([sub.kind == CELL for sub in topology.subdomains])[topology.owner]
    u = np.where(is_cell, config.v_init, config.v_extracellular_init).astype(float)
    u[dirichlet] = 0.0

    jumps = compute_jumps(u, topology.edges)
    membrane = MembraneState.from_jumps(jumps, coupling.is_membrane, config.w_init)
    return SimState(u=u, membrane=membrane)
