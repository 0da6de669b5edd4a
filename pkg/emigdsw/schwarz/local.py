"""
    Overlapping local spaces with exact solvers
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import binary_dilation

from emigdsw.linalg import factorize


@dataclass(frozen=True, eq=False)
class LocalSpace:
    """
        Properties:
            subdomain - Id of the subdomain the space grows from.
            dofs      - Sorted free indices of the overlapping subdomain.
            factor    - Factorization of K restricted to dofs.
    """

    subdomain: int
    dofs: np.ndarray = field(repr=False)
    factor: object = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.dofs)

    def solve(self, residual: np.ndarray) -> np.ndarray:
        """
            K_i^-1 R_i r, still in the local numbering
        """
        return self.factor.solve(residual[self.dofs])


def overlap_dofs(topology, sub, overlap: int = 1) -> np.ndarray:
    """
        Global DOFs within `overlap` element layers of a subdomain's closure,
        every copy of a node included

        Args:
            topology - The MeshTopology
            sub      - The Subdomain
            overlap  - Element layers (0 keeps the subdomain's own DOFs)

        Returns:
            Sorted global DOF ids
    """
    if overlap == 0:
        return sub.dofs

    box_x, box_y = topology.config.box_elems
    mask = np.zeros((box_y + 1, box_x + 1), dtype=bool)
    mask[sub.grid[:, 1], sub.grid[:, 0]] = True

    # A 3x3 element neighbourhood per layer
    grown = binary_dilation(mask, structure=np.ones((3, 3), dtype=bool), iterations=overlap)
    inside = grown[topology.grid[:, 1], topology.grid[:, 0]]
    return np.flatnonzero(inside)


def _build_one(operator, topology, sub, overlap: int) -> LocalSpace:
    index = operator.free_index
    dofs = index[overlap_dofs(topology, sub, overlap)]
    dofs = np.sort(dofs[dofs >= 0])
    block = operator.matrix[dofs][:, dofs]
    return LocalSpace(subdomain=sub.id, dofs=dofs, factor=factorize(block))


def build_local(operator, topology, overlap: int = 1, workers: int = 1) -> list:
    """
        Build and factorize one overlapping local space per subdomain

        Args:
            operator - The CompositeOperator
            topology - The MeshTopology
            overlap  - Overlap depth in element layers
            workers  - Threads used for the factorizations

        Returns:
            The LocalSpace objects, in subdomain order
    """
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(
                pool.map(lambda sub: _build_one(operator, topology, sub, overlap), topology.subdomains)
            )
    return [_build_one(operator, topology, sub, overlap) for sub in topology.subdomains]
