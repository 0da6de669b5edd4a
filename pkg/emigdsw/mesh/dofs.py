"""
    Classification of the global DOFs into interior, interface and Dirichlet sets
"""
from dataclasses import dataclass, field

import numpy as np

from emigdsw.errors import MeshError

OUTER_SIDES = ("left", "right", "bottom", "top")


@dataclass(frozen=True, eq=False)
class DofPartition:
    """
        I (per subdomain), Gamma and D covering every DOF exactly once

        Properties:
            interior  - One sorted array of interior DOFs per subdomain.
            gamma     - Every DOF on some interface edge, both copies.
            dirichlet - DOFs of the frame on the Dirichlet part of the outer boundary.
            n_dofs    - Total DOF count.
    """

    interior: tuple = field(repr=False)
    gamma: np.ndarray = field(repr=False)
    dirichlet: np.ndarray = field(repr=False)
    n_dofs: int = 0

    @property
    def interior_all(self) -> np.ndarray:
        return np.sort(np.concatenate(self.interior))

    @property
    def free(self) -> np.ndarray:
        mask = np.ones(self.n_dofs, dtype=bool)
        mask[self.dirichlet] = False
        return np.flatnonzero(mask)

    def check(self) -> None:
        """
            Raise a MeshError unless I, Gamma and D cover every DOF exactly once
        """
        counts = np.bincount(
            np.concatenate([self.interior_all, self.gamma, self.dirichlet]),
            minlength=self.n_dofs,
        )
        if len(counts) != self.n_dofs or np.any(counts != 1):
            raise MeshError("Interior, interface and Dirichlet sets do not partition the DOFs")


def outer_boundary_dofs(topology, sides) -> np.ndarray:
    """
        The frame DOFs lying on the given sides of the outer boundary

        Args:
            topology - The MeshTopology
            sides    - Any of "left", "right", "bottom", "top"
    """
    unknown = set(sides) - set(OUTER_SIDES)
    if unknown:
        raise MeshError(f"Unknown outer boundary side(s): {sorted(unknown)}")

    frame = topology.frame
    box_x, box_y = topology.config.box_elems
    gx, gy = frame.grid[:, 0], frame.grid[:, 1]
    on_side = {
        "left": gx == 0,
        "right": gx == box_x,
        "bottom": gy == 0,
        "top": gy == box_y,
    }

    mask = np.zeros(frame.dof_count, dtype=bool)
    for side in sides:
        mask |= on_side[side]
    return frame.dof_offset + np.flatnonzero(mask)


def classify_dofs(topology, dirichlet_sides=("left",)) -> DofPartition:
    """
        Split the DOFs into interior, interface and Dirichlet sets. Outer
        boundary DOFs that are not Dirichlet are insulated and count as interior.

        Args:
            topology        - The MeshTopology
            dirichlet_sides - Outer sides of the frame carrying u_0 = 0. An empty
                              selection is allowed here; the operator assembly
                              decides whether the system is then singular.

        Returns:
            The DofPartition (checked)
    """
    dirichlet = outer_boundary_dofs(topology, dirichlet_sides)

    if topology.edges:
        gamma = np.unique(np.concatenate([edge.pairs.ravel() for edge in topology.edges]))
    else:
        gamma = np.zeros(0, dtype=int)

    excluded = np.zeros(topology.n_dofs, dtype=bool)
    excluded[gamma] = True
    excluded[dirichlet] = True

    interior = tuple(sub.dofs[~excluded[sub.dofs]] for sub in topology.subdomains)
    partition = DofPartition(
        interior=interior, gamma=gamma, dirichlet=np.sort(dirichlet), n_dofs=topology.n_dofs
    )
    partition.check()
    return partition
