"""
    The interface coupling: jump operator, station quadrature and the jump mass M
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from emigdsw.assembly.element import edge_mass_1d
from emigdsw.mesh.interfaces import MEMBRANE


@dataclass(frozen=True, eq=False)
class InterfaceCoupling:
    """
        Quadrature stations on the interface edges

        Every edge contributes one station per matched pair, in edge order, so an
        endpoint shared by two edges is sampled once per edge.

        Properties:
            station_edge - Edge id of each station.
            station_pair - (p_i, p_j) DOFs of each station.
            is_membrane  - True on membrane stations, False on gap junction stations.
            jump         - J, the (stations x DOFs) map u -> u_i - u_j.
            weights      - W, the unit-capacitance edge mass over stations.
    """

    station_edge: np.ndarray = field(repr=False)
    station_pair: np.ndarray = field(repr=False)
    is_membrane: np.ndarray = field(repr=False)
    jump: sp.csr_matrix = field(repr=False)
    weights: sp.csr_matrix = field(repr=False)

    @property
    def n_stations(self) -> int:
        return len(self.station_edge)

    @property
    def n_dofs(self) -> int:
        return self.jump.shape[1]

    def jumps(self, u: np.ndarray) -> np.ndarray:
        """
            Nodal jumps u[p_i] - u[p_j] at every station
        """
        return self.jump @ u

    def load(self, samples: np.ndarray) -> np.ndarray:
        """
            J^T W samples: integrate nodal samples against the signed test jumps
        """
        return self.jump.T @ (self.weights @ samples)

    def mass(self, c_m: float) -> sp.csr_matrix:
        """
            The jump mass c_m J^T W J
        """
        mass = (c_m * (self.jump.T @ self.weights @ self.jump)).tocsr()
        return ((mass + mass.T) * 0.5).tocsr()

    def edge_stations(self, edge_id: int) -> np.ndarray:
        return np.flatnonzero(self.station_edge == edge_id)


def build_coupling(edges, n_dofs: int, lumped: bool = False) -> InterfaceCoupling:
    """
        Build the stations, J and W of a set of interface edges

        Args:
            edges  - The InterfaceEdge objects
            n_dofs - Global DOF count
            lumped - Lump the edge mass

        Returns:
            The InterfaceCoupling
    """
    station_edge, station_pair, segments, lengths = [], [], [], []
    offset = 0
    for edge in edges:
        n = edge.n_nodes
        station_edge.append(np.full(n, edge.id))
        station_pair.append(edge.pairs)
        first = offset + np.arange(n - 1)
        segments.append(np.column_stack([first, first + 1]))
        lengths.append(np.full(n - 1, edge.h))
        offset += n

    if not edges:
        empty = sp.csr_matrix((0, n_dofs))
        return InterfaceCoupling(
            station_edge=np.zeros(0, dtype=int),
            station_pair=np.zeros((0, 2), dtype=int),
            is_membrane=np.zeros(0, dtype=bool),
            jump=empty,
            weights=sp.csr_matrix((0, 0)),
        )

    station_edge = np.concatenate(station_edge)
    station_pair = np.concatenate(station_pair)
    segments = np.concatenate(segments)
    lengths = np.concatenate(lengths)
    n_stations = len(station_edge)

    kinds = np.array([edge.kind == MEMBRANE for edge in edges])
    is_membrane = kinds[station_edge]

    rows = np.repeat(np.arange(n_stations), 2)
    cols = station_pair.ravel()
    signs = np.tile([1.0, -1.0], n_stations)
    jump = sp.csr_matrix((signs, (rows, cols)), shape=(n_stations, n_dofs))

    # All segments share one reference block scaled by their length
    block = edge_mass_1d(1.0, 1.0, lumped=lumped)
    rows = np.repeat(segments, 2, axis=1).ravel()
    cols = np.tile(segments, (1, 2)).ravel()
    data = (lengths[:, None] * block.ravel()[None, :]).ravel()
    weights = sp.csr_matrix((data, (rows, cols)), shape=(n_stations, n_stations))

    return InterfaceCoupling(
        station_edge=station_edge,
        station_pair=station_pair,
        is_membrane=is_membrane,
        jump=jump,
        weights=weights,
    )


def assemble_interface_mass(edges, c_m: float, n_dofs: int, lumped: bool = False) -> sp.csr_matrix:
    """
        Assemble the jump mass M: every edge segment adds +M_e on the (i, i) and
        (j, j) blocks and -M_e on the cross blocks, M_e = edge_mass_1d(h, c_m).
        Each geometric edge is assembled once.

        Args:
            edges  - The InterfaceEdge objects
            c_m    - Membrane capacitance
            n_dofs - Global DOF count
            lumped - Lump the edge mass

        Returns:
            The symmetric positive semidefinite sparse M
    """
    return build_coupling(edges, n_dofs, lumped=lumped).mass(c_m)
