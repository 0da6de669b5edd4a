"""
    Interface edges and interface vertices between subdomains
"""
from dataclasses import dataclass, field

import numpy as np

from emigdsw.errors import MeshError

GAP_JUNCTION = "gap_junction"
MEMBRANE = "membrane"

# Relative tolerance on the coordinates of a matched pair
MATCH_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class InterfaceEdge:
    """
        A shared side E_ij of two subdomains with its duplicated nodes

        Properties:
            id    - Position in MeshTopology.edges.
            pair  - (i, j): the cell side first for membranes, the lower id
                    first for gap junctions. Jumps are u_i - u_j.
            kind  - GAP_JUNCTION or MEMBRANE.
            side  - Which side of subdomain i the edge lies on.
            grid  - Grid coordinates of the nodes, in increasing order along the edge.
            pairs - (n, 2) global DOFs [p_i, p_j] at each node.
            h     - Length of every segment of the edge.
    """

    id: int
    pair: tuple
    kind: str
    side: str
    grid: np.ndarray = field(repr=False)
    pairs: np.ndarray = field(repr=False)
    h: float = 1.0

    @property
    def n_nodes(self) -> int:
        return len(self.pairs)

    @property
    def length(self) -> float:
        return (self.n_nodes - 1) * self.h

    @property
    def interior_pairs(self) -> np.ndarray:
        """
            The matched pairs without the two endpoints
        """
        return self.pairs[1:-1]


@dataclass(frozen=True, eq=False)
class InterfaceVertex:
    """
        A geometric vertex V^l of the interface, shared by two or more subdomains

        Properties:
            grid    - Integer grid coordinates.
            sharers - Ids of the subdomains sharing the vertex, ascending.
            dofs    - One DOF per sharer, same order.
    """

    grid: tuple
    sharers: tuple
    dofs: tuple


def _match_edge(topology, edge_id: int, sub_i, sub_j, kind: str, side: str, gx, gy):
    """
        Pair up the nodes of two subdomains along a run of grid points
    """
    pairs = np.column_stack([sub_i.dof_at(gx, gy), sub_j.dof_at(gx, gy)])
    if np.any(pairs < 0):
        raise MeshError(
            f"Unmatched interface node between subdomains {sub_i.id} and {sub_j.id}"
        )

    h = topology.config.h
    coords = topology.coords
    mismatch = np.abs(coords[pairs[:, 0]] - coords[pairs[:, 1]]).max()
    if mismatch > MATCH_TOL * h:
        raise MeshError(
            f"Interface nodes of subdomains {sub_i.id} and {sub_j.id} are {mismatch} apart"
        )

    return InterfaceEdge(
        id=edge_id,
        pair=(sub_i.id, sub_j.id),
        kind=kind,
        side=side,
        grid=np.column_stack([gx, gy]),
        pairs=pairs,
        h=h,
    )


def enumerate_interfaces(topology) -> list:
    """
        Enumerate the interface edges: gap junctions between adjacent cells and
        membranes between perimeter cells and the frame. Cells are visited
        row-major, and for each cell its sides in the order bottom, left, right, top.

        Args:
            topology - The MeshTopology (subdomains numbered)

        Returns:
            A list of InterfaceEdge objects
    """
    config = topology.config
    frame = topology.frame
    n_x, n_y = config.n_cells_x, config.n_cells_y
    edges = []

    for cell in topology.cells:
        ox, oy = cell.origin
        long_run = np.arange(ox, ox + config.elems_long + 1)
        short_run = np.arange(oy, oy + config.elems_short + 1)
        bottom = (long_run, np.full_like(long_run, oy))
        top = (long_run, np.full_like(long_run, oy + config.elems_short))
        left = (np.full_like(short_run, ox), short_run)
        right = (np.full_like(short_run, ox + config.elems_long), short_run)

        sides = []
        if cell.row == 0:
            sides.append((frame, MEMBRANE, "bottom", bottom))
        if cell.col == 0:
            sides.append((frame, MEMBRANE, "left", left))
        if cell.col < n_x - 1:
            neighbor = topology.cell_at(cell.row, cell.col + 1)
            sides.append((neighbor, GAP_JUNCTION, "right", right))
        else:
            sides.append((frame, MEMBRANE, "right", right))
        if cell.row < n_y - 1:
            neighbor = topology.cell_at(cell.row + 1, cell.col)
            sides.append((neighbor, GAP_JUNCTION, "top", top))
        else:
            sides.append((frame, MEMBRANE, "top", top))

        for other, kind, side, (gx, gy) in sides:
            edges.append(_match_edge(topology, len(edges), cell, other, kind, side, gx, gy))

    return edges


def enumerate_vertices(topology) -> list:
    """
        Enumerate the interface vertices: the cell corners, each with the set
        of subdomains that share it

        Args:
            topology - The MeshTopology (subdomains numbered)

        Returns:
            A list of InterfaceVertex objects, row-major over the corner grid
    """
    config = topology.config
    n_x, n_y = config.n_cells_x, config.n_cells_y
    vertices = []

    for row in range(n_y + 1):
        for col in range(n_x + 1):
            gx = config.frame_elems + col * config.elems_long
            gy = config.frame_elems + row * config.elems_short

            sharers = []
            if row in (0, n_y) or col in (0, n_x):
                sharers.append(0)
            for cell_row in (row - 1, row):
                for cell_col in (col - 1, col):
                    if 0 <= cell_row < n_y and 0 <= cell_col < n_x:
                        sharers.append(topology.cell_id(cell_row, cell_col))
            sharers.sort()

            dofs = tuple(int(topology.subdomains[s].dof_at(gx, gy)) for s in sharers)
            if len(sharers) < 2 or min(dofs) < 0:
                raise MeshError(f"Vertex at grid point {(gx, gy)} is not shared")
            vertices.append(InterfaceVertex(grid=(gx, gy), sharers=tuple(sharers), dofs=dofs))

    return vertices
