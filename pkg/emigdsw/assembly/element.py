"""
    Element matrices: bilinear (Q1) stiffness on rectangles, linear mass on segments
"""
import numpy as np

from emigdsw.errors import AssemblyError


def _stiffness_1d(length: float) -> np.ndarray:
    return np.array([[1.0, -1.0], [-1.0, 1.0]]) / length


def _mass_1d(length: float) -> np.ndarray:
    return np.array([[2.0, 1.0], [1.0, 2.0]]) * length / 6.0


def element_stiffness_q1(hx: float, hy: float, sigma: float) -> np.ndarray:
    """
        Exact stiffness of sigma * grad(phi_a) . grad(phi_b) over an hx x hy rectangle

        The local nodes are in lexicographic order (0,0), (1,0), (0,1), (1,1), so the
        bilinear element is the tensor product of two linear ones.

        Args:
            hx, hy - Side lengths
            sigma  - Scalar conductivity

        Returns:
            A symmetric 4x4 block with zero row sums
    """
    if not (hx > 0 and hy > 0 and sigma > 0):
        raise AssemblyError(f"Need hx, hy, sigma > 0, got {hx}, {hy}, {sigma}")

    # kron(y-factor, x-factor) keeps x as the fastest index
    block = np.kron(_mass_1d(hy), _stiffness_1d(hx)) + np.kron(_stiffness_1d(hy), _mass_1d(hx))
    return sigma * block


def edge_mass_1d(length: float, c_m: float, lumped: bool = False) -> np.ndarray:
    """
        Consistent mass of c_m * phi_a * phi_b over a segment

        Args:
            length - Segment length
            c_m    - Capacitance (or 1 for a plain quadrature weight)
            lumped - Put the row sums on the diagonal instead

        Returns:
            A symmetric 2x2 block
    """
    if not length > 0 or c_m < 0:
        raise AssemblyError(f"Need length > 0 and c_m >= 0, got {length}, {c_m}")

    block = c_m * _mass_1d(length)
    if lumped:
        block = np.diag(block.sum(axis=1))
    return block
