"""
    The 2D multicompartment geometry: an extracellular frame around a block of
    elongated cells, each subdomain carrying its own copy of its boundary nodes.
"""
from dataclasses import dataclass, field, replace

import numpy as np
from colorama import Fore

from emigdsw.conf import DEFAULT_SIGMA, create_logger
from emigdsw.errors import MeshError

LOGGER = create_logger(__name__, "INFO")

EXTRACELLULAR = "extracellular"
CELL = "cell"


@dataclass(frozen=True)
class GeometryConfig:
    """
        Sizes of the structured multicompartment grid

        Properties:
            n_cells_x   - Number of cells along x.
            n_cells_y   - Number of cells along y.
            elems_short - Elements along the short (y) side of a cell.
            elems_long  - Elements along the long (x) side of a cell. Defaults
                          to 6 * elems_short.
            frame_elems - Element layers of the extracellular frame. Defaults
                          to elems_short.
            h           - Element edge length; every element is an h x h square.
    """

    n_cells_x: int = 2
    n_cells_y: int = 2
    elems_short: int = 4
    elems_long: int = None
    frame_elems: int = None
    h: float = 1.0

    def __post_init__(self):
        if self.elems_long is None:
            object.__setattr__(self, "elems_long", 6 * self.elems_short)
        if self.frame_elems is None:
            object.__setattr__(self, "frame_elems", self.elems_short)

        if self.n_cells_x < 1 or self.n_cells_y < 1:
            raise MeshError(
                f"Need at least one cell, got {self.n_cells_x}x{self.n_cells_y}"
            )
        if not self.h > 0:
            raise MeshError(f"Element size must be positive, got h={self.h}")
        if self.elems_short < 1 or self.elems_long < 1:
            raise MeshError("Cells need at least one element per side")
        if self.frame_elems < 1:
            raise MeshError("The extracellular frame needs at least one element layer")

    @property
    def n_cells(self) -> int:
        return self.n_cells_x * self.n_cells_y

    @property
    def block_elems(self) -> tuple:
        """
            Element extents (x, y) of the cell block
        """
        return self.n_cells_x * self.elems_long, self.n_cells_y * self.elems_short

    @property
    def box_elems(self) -> tuple:
        """
            Element extents (x, y) of the whole domain, frame included
        """
        block_x, block_y = self.block_elems
        return block_x + 2 * self.frame_elems, block_y + 2 * self.frame_elems


@dataclass(frozen=True, eq=False)
class Subdomain:
    """
        One compartment of the geometry with its own node numbering

        Properties:
            id         - 0 for the extracellular frame, 1..N for the cells (row-major).
            kind       - EXTRACELLULAR or CELL.
            sigma      - Scalar conductivity.
            row, col   - Position of a cell inside the block (None for the frame).
            origin     - Grid coordinates of the lower-left corner of the bounding box.
            lookup     - Bounding box array lookup[gy, gx] of local node ids, -1 where
                         the subdomain has no node.
            grid       - Integer grid coordinates of each local node.
            elements   - Local node ids of each element, lexicographic corner order
                         (0,0), (1,0), (0,1), (1,1).
            dof_offset - First global DOF of this subdomain.
    """

    id: int
    kind: str
    sigma: float
    row: int
    col: int
    origin: tuple
    lookup: np.ndarray = field(repr=False)
    grid: np.ndarray = field(repr=False)
    elements: np.ndarray = field(repr=False)
    dof_offset: int = 0

    @property
    def dof_count(self) -> int:
        return len(self.grid)

    @property
    def dofs(self) -> np.ndarray:
        return np.arange(self.dof_offset, self.dof_offset + self.dof_count)

    def dof_at(self, gx, gy) -> np.ndarray:
        """
            Global DOFs at the given grid points, -1 where this subdomain has no node

            Args:
                gx, gy - Integer grid coordinates (scalars or arrays)
        """
        shape = np.shape(gx)
        gx = np.atleast_1d(gx).ravel() - self.origin[0]
        gy = np.atleast_1d(gy).ravel() - self.origin[1]
        ny, nx = self.lookup.shape
        inside = (gx >= 0) & (gx < nx) & (gy >= 0) & (gy < ny)
        local = np.full(gx.shape, -1, dtype=int)
        local[inside] = self.lookup[gy[inside], gx[inside]]
        return np.where(local >= 0, local + self.dof_offset, -1).reshape(shape)


@dataclass(frozen=True, eq=False)
class MeshTopology:
    """
        The built geometry. Immutable once build_geometry returns it.

        Properties:
            config      - The GeometryConfig it was built from.
            subdomains  - Frame first, then the cells row-major.
            edges       - The InterfaceEdge objects.
            vertices    - The InterfaceVertex objects.
            grid        - Integer grid coordinates of every global DOF.
            owner       - Subdomain id of every global DOF.
    """

    config: GeometryConfig
    subdomains: tuple
    grid: np.ndarray = field(repr=False)
    owner: np.ndarray = field(repr=False)
    edges: tuple = ()
    vertices: tuple = ()

    @property
    def n_dofs(self) -> int:
        return len(self.owner)

    @property
    def n_cells(self) -> int:
        return self.config.n_cells

    @property
    def frame(self) -> Subdomain:
        return self.subdomains[0]

    @property
    def cells(self) -> tuple:
        return self.subdomains[1:]

    @property
    def coords(self) -> np.ndarray:
        return self.grid * self.config.h

    def cell_id(self, row: int, col: int) -> int:
        return 1 + row * self.config.n_cells_x + col

    def cell_at(self, row: int, col: int) -> Subdomain:
        return self.subdomains[self.cell_id(row, col)]

    def edges_of(self, sub_id: int) -> list:
        """
            All interface edges that touch the given subdomain
        """
        return [edge for edge in self.edges if sub_id in edge.pair]


def _element_connectivity(lookup: np.ndarray, element_mask: np.ndarray) -> np.ndarray:
    """
        Build the element to local node table of a structured lookup array

        Args:
            lookup       - lookup[gy, gx] local node ids (-1 for no node)
            element_mask - element_mask[j, i] True for elements that exist

        Returns:
            An (n_elements, 4) array in lexicographic corner order
    """
    corners = np.stack(
        [lookup[:-1, :-1], lookup[:-1, 1:], lookup[1:, :-1], lookup[1:, 1:]], axis=-1
    )
    return corners[element_mask].reshape(-1, 4)


def _lexicographic_lookup(node_mask: np.ndarray) -> tuple:
    """
        Number the True entries of a node mask row by row

        Returns:
            The lookup array and the (n, 2) integer grid coordinates relative
            to the bounding box
    """
    lookup = np.full(node_mask.shape, -1, dtype=int)
    lookup[node_mask] = np.arange(np.count_nonzero(node_mask))
    gy, gx = np.nonzero(node_mask)
    return lookup, np.column_stack([gx, gy])


def _build_frame(config: GeometryConfig, sigma: float) -> Subdomain:
    """
        The extracellular frame: every node of the box except the strict
        interior of the cell block
    """
    box_x, box_y = config.box_elems
    block_x, block_y = config.block_elems
    frame = config.frame_elems

    gy, gx = np.mgrid[0 : box_y + 1, 0 : box_x + 1]
    in_hole = (gx > frame) & (gx < frame + block_x) & (gy > frame) & (gy < frame + block_y)
    lookup, grid = _lexicographic_lookup(~in_hole)

    ey, ex = np.mgrid[0:box_y, 0:box_x]
    element_in_block = (
        (ex >= frame) & (ex < frame + block_x) & (ey >= frame) & (ey < frame + block_y)
    )
    elements = _element_connectivity(lookup, ~element_in_block)

    return Subdomain(
        id=0,
        kind=EXTRACELLULAR,
        sigma=sigma,
        row=None,
        col=None,
        origin=(0, 0),
        lookup=lookup,
        grid=grid,
        elements=elements,
    )


def _build_cell(config: GeometryConfig, row: int, col: int, sigma: float) -> Subdomain:
    """
        One elongated cell of the block
    """
    origin = (
        config.frame_elems + col * config.elems_long,
        config.frame_elems + row * config.elems_short,
    )
    node_mask = np.ones((config.elems_short + 1, config.elems_long + 1), dtype=bool)
    lookup, grid = _lexicographic_lookup(node_mask)
    element_mask = np.ones((config.elems_short, config.elems_long), dtype=bool)

    return Subdomain(
        id=1 + row * config.n_cells_x + col,
        kind=CELL,
        sigma=sigma,
        row=row,
        col=col,
        origin=origin,
        lookup=lookup,
        grid=grid + np.asarray(origin),
        elements=_element_connectivity(lookup, element_mask),
    )


def _cell_sigmas(config: GeometryConfig, cell_sigma) -> np.ndarray:
    """
        Broadcast the cell conductivities to a (n_cells_y, n_cells_x) array
    """
    if cell_sigma is None:
        cell_sigma = DEFAULT_SIGMA

    sigmas = np.asarray(cell_sigma, dtype=float)
    if sigmas.ndim == 0:
        sigmas = np.full((config.n_cells_y, config.n_cells_x), float(sigmas))
    sigmas = sigmas.reshape(config.n_cells_y, config.n_cells_x)

    if not np.all(sigmas > 0):
        raise MeshError("Cell conductivities must be positive")
    return sigmas


def build_geometry(
    config: GeometryConfig, cell_sigma=None, sigma_extracellular: float = DEFAULT_SIGMA
) -> MeshTopology:
    """
        Build the frame, the cells, their interfaces and interface vertices

        Args:
            config              - The geometry sizes.
            cell_sigma          - A scalar or one conductivity per cell (row-major
                                  or shaped (n_cells_y, n_cells_x)).
            sigma_extracellular - The conductivity of the frame.

        Returns:
            The immutable MeshTopology
    """
    from emigdsw.mesh.interfaces import enumerate_interfaces, enumerate_vertices

    if not sigma_extracellular > 0:
        raise MeshError("The extracellular conductivity must be positive")
    sigmas = _cell_sigmas(config, cell_sigma)

    subdomains = [_build_frame(config, sigma_extracellular)]
    for row in range(config.n_cells_y):
        for col in range(config.n_cells_x):
            subdomains.append(_build_cell(config, row, col, sigmas[row, col]))

    # Number the DOFs subdomain by subdomain
    offset = 0
    numbered = []
    for sub in subdomains:
        numbered.append(replace(sub, dof_offset=offset))
        offset += sub.dof_count

    grid = np.concatenate([sub.grid for sub in numbered])
    owner = np.concatenate([np.full(sub.dof_count, sub.id) for sub in numbered])
    topology = MeshTopology(config=config, subdomains=tuple(numbered), grid=grid, owner=owner)

    topology = replace(
        topology,
        edges=tuple(enumerate_interfaces(topology)),
        vertices=tuple(enumerate_vertices(topology)),
    )

    LOGGER.debug(
        f"Built {Fore.CYAN}{config.n_cells_x}x{config.n_cells_y}{Fore.RESET} cells "
        f"({config.elems_long}x{config.elems_short} elements): {topology.n_dofs} DOFs, "
        f"{len(topology.edges)} interface edges, {len(topology.vertices)} vertices"
    )
    return topology
