"""
    The GDSW coarse space: vertex and edge functions extended harmonically
"""
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
import scipy.sparse as sp
from colorama import Fore

from emigdsw.conf import create_logger
from emigdsw.errors import CoarseSpaceError, ConfigError
from emigdsw.linalg import factorize_dense
from emigdsw.schwarz.harmonic import harmonic_extend

LOGGER = create_logger(__name__, "INFO")

VERTEX = "vertex"
VERTEX_AND_EDGE = "vertex_and_edge"

COARSE_MODES = {
    "vertex": VERTEX,
    "vertex_only": VERTEX,
    "vertex_and_edge": VERTEX_AND_EDGE,
    "vertex-edge": VERTEX_AND_EDGE,
    "vertex_edge": VERTEX_AND_EDGE,
}


def coarse_mode(name: str) -> str:
    """
        Normalize a coarse mode name from the config or the command line
    """
    try:
        return COARSE_MODES[name.lower()]
    except (KeyError, AttributeError):
        raise ConfigError(f"Unknown coarse mode {name!r}, choose from {sorted(COARSE_MODES)}")


@dataclass(frozen=True, eq=False)
class CoarseSpace:
    """
        Properties:
            mode     - VERTEX or VERTEX_AND_EDGE.
            basis    - Phi, (n_free, n_columns), one coarse function per column.
            operator - K0 = Phi^T K Phi, dense (plus the rank-one term in
                       zero-mean mode).
            factor   - Cholesky factorization of K0.
            labels   - What each column is, e.g. "vertex (10, 4) of subdomain 2".
            n_vertex - Number of vertex columns; the edge columns follow them.
    """

    mode: str
    basis: sp.csc_matrix = field(repr=False)
    operator: np.ndarray = field(repr=False)
    factor: object = field(repr=False)
    labels: tuple = field(repr=False)
    n_vertex: int = 0

    @property
    def n_columns(self) -> int:
        return self.basis.shape[1]

    @property
    def n_edge(self) -> int:
        return self.n_columns - self.n_vertex

    def apply(self, residual: np.ndarray) -> np.ndarray:
        """
            Phi K0^-1 Phi^T r
        """
        return self.basis @ self.factor.solve(self.basis.T @ residual)

    def to_frame(self, operator) -> pd.DataFrame:
        """
            The basis as (dof, column, value) rows with global DOF ids
        """
        coo = self.basis.tocoo()
        return pd.DataFrame(
            {"dof": operator.free[coo.row], "column": coo.col, "value": coo.data}
        ).sort_values(["column", "dof"], ignore_index=True)


def _edge_ramps(edge, side: int, index, column: dict) -> tuple:
    """
        Linear interpolation between the two endpoint vertex functions of one
        side of an edge

        Returns:
            (rows, cols, data) for the interior nodes of that side
    """
    owner = edge.pair[side]
    start = column[(tuple(int(g) for g in edge.grid[0]), owner)]
    end = column[(tuple(int(g) for g in edge.grid[-1]), owner)]

    weight = np.arange(1, edge.n_nodes - 1) / (edge.n_nodes - 1)
    dofs = index[edge.interior_pairs[:, side]]
    return (
        np.concatenate([dofs, dofs]),
        np.concatenate([np.full(len(dofs), start), np.full(len(dofs), end)]),
        np.concatenate([1.0 - weight, weight]),
    )


def interface_values(operator, topology, mode: str = VERTEX) -> tuple:
    """
        The interface values of the coarse functions before extension. Both
        modes sum to one at every interface DOF.

        VERTEX: the function of vertex V owned by subdomain k is 1 at k's copy
        of V and falls linearly to 0 along k's side of every edge ending at V.
        VERTEX_AND_EDGE: vertex functions are 1 at their vertex only and every
        edge with interior nodes adds a function that is 1 on both sides of it.

        Args:
            operator - The CompositeOperator
            topology - The MeshTopology
            mode     - VERTEX or VERTEX_AND_EDGE

        Returns:
            (values, labels, n_vertex) where values is a sparse (n_free, m) matrix
    """
    index = operator.free_index
    rows, cols, data, labels = [], [], [], []
    column = {}

    for vertex in topology.vertices:
        for sharer, dof in zip(vertex.sharers, vertex.dofs):
            column[(tuple(vertex.grid), sharer)] = len(labels)
            rows.append([index[dof]])
            cols.append([len(labels)])
            data.append([1.0])
            labels.append(f"vertex {vertex.grid} of subdomain {sharer}")
    n_vertex = len(labels)

    for edge in topology.edges:
        # A single-element edge has no interior nodes
        if len(edge.interior_pairs) == 0:
            continue
        if mode == VERTEX:
            for side in (0, 1):
                side_rows, side_cols, side_data = _edge_ramps(edge, side, index, column)
                rows.append(side_rows)
                cols.append(side_cols)
                data.append(side_data)
        else:
            dofs = index[edge.interior_pairs.ravel()]
            rows.append(dofs)
            cols.append(np.full(len(dofs), len(labels)))
            data.append(np.ones(len(dofs)))
            labels.append(f"{edge.kind} edge {edge.id} between {edge.pair}")

    rows = np.concatenate(rows) if rows else np.zeros(0, dtype=int)
    cols = np.concatenate(cols) if cols else np.zeros(0, dtype=int)
    data = np.concatenate(data) if data else np.zeros(0)
    if np.any(rows < 0):
        raise CoarseSpaceError("A coarse function is supported on a Dirichlet DOF")

    values = sp.csr_matrix((data, (rows, cols)), shape=(operator.n_free, len(labels)))
    return values, tuple(labels), n_vertex


def build_coarse(operator, topology, partition, mode: str = VERTEX) -> CoarseSpace:
    """
        Build and factorize the GDSW coarse space

        Args:
            operator  - The CompositeOperator
            topology  - The MeshTopology
            partition - The DofPartition
            mode      - VERTEX or VERTEX_AND_EDGE

        Returns:
            The CoarseSpace

        Raises:
            CoarseSpaceError naming the first column where K0 loses rank
    """
    mode = coarse_mode(mode)
    values, labels, n_vertex = interface_values(operator, topology, mode)
    basis = harmonic_extend(operator, partition, values)

    coarse = (basis.T @ (operator.matrix @ basis)).toarray()
    coarse = (coarse + coarse.T) * 0.5

    if operator.kernel is not None:
        # Lift the constant direction out of the kernel of K0
        constant = basis.T @ operator.restrict(operator.kernel)
        norm = constant @ constant
        if norm > 0:
            shift = np.trace(coarse) / norm
            coarse += shift * np.outer(constant, constant)

    try:
        factor = factorize_dense(coarse, error=CoarseSpaceError)
    except CoarseSpaceError as exception:
        column = exception.pivot
        label = labels[column] if column is not None else "unknown"
        raise CoarseSpaceError(
            f"Coarse operator is rank deficient at column {column} ({label})", pivot=column
        )

    LOGGER.debug(
        f"Coarse space {Fore.CYAN}{mode}{Fore.RESET}: {n_vertex} vertex and "
        f"{len(labels) - n_vertex} edge columns"
    )
    return CoarseSpace(
        mode=mode,
        basis=basis,
        operator=coarse,
        factor=factor,
        labels=labels,
        n_vertex=n_vertex,
    )
