"""
    Per-cell conductivity distributions for the robustness experiments
"""
from dataclasses import dataclass

import numpy as np

from emigdsw.conf import DEFAULT_SIGMA
from emigdsw.errors import ConfigError

NORMAL = "normal"
CHECKBOARD = "checkboard"
CAPSULE = "capsule"
RANDOM = "random"

DISTRIBUTIONS = (NORMAL, CHECKBOARD, CAPSULE, RANDOM)

# Side of the inner block of the capsule distribution
CAPSULE_SIZE = 4

# Upper bound of the uniform noise of the random distribution
RANDOM_NOISE = 1e-3


@dataclass(frozen=True)
class SigmaDistribution:
    """
        Properties:
            kind  - normal, checkboard, capsule or random.
            sigma - The base conductivity.
            alpha - Scaling factor of the modified cells.
            seed  - Seed of the random distribution.
    """

    kind: str = NORMAL
    sigma: float = DEFAULT_SIGMA
    alpha: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in DISTRIBUTIONS:
            raise ConfigError(f"Unknown distribution {self.kind!r}, choose from {DISTRIBUTIONS}")
        if not (self.sigma > 0 and self.alpha > 0):
            raise ConfigError(f"sigma and alpha must be positive, got {self.sigma}, {self.alpha}")


def sigma_map(dist: SigmaDistribution, n_cells_x: int, n_cells_y: int = None) -> np.ndarray:
    """
        One conductivity per cell

        Args:
            dist      - The SigmaDistribution
            n_cells_x - Cells along x
            n_cells_y - Cells along y (defaults to n_cells_x)

        Returns:
            A (n_cells_y, n_cells_x) array, row 0 at the bottom
    """
    n_cells_y = n_cells_x if n_cells_y is None else n_cells_y
    if n_cells_x < 1 or n_cells_y < 1:
        raise ConfigError(f"Need at least one cell, got {n_cells_x}x{n_cells_y}")

    sigmas = np.full((n_cells_y, n_cells_x), dist.sigma)
    scaled = dist.alpha * dist.sigma

    if dist.kind == CHECKBOARD:
        rows, cols = np.indices(sigmas.shape)
        sigmas[(rows + cols) % 2 == 1] = scaled

    elif dist.kind == CAPSULE:
        if min(n_cells_x, n_cells_y) < CAPSULE_SIZE:
            raise ConfigError(
                f"The capsule distribution needs at least {CAPSULE_SIZE}x{CAPSULE_SIZE} cells"
            )
        row = (n_cells_y - CAPSULE_SIZE) // 2
        col = (n_cells_x - CAPSULE_SIZE) // 2
        sigmas[row : row + CAPSULE_SIZE, col : col + CAPSULE_SIZE] = scaled

    elif dist.kind == RANDOM:
        rng = np.random.default_rng(dist.seed)
        noise = rng.uniform(0.0, RANDOM_NOISE, size=sigmas.shape)
        sigmas = dist.alpha * (dist.sigma + noise)

    return sigmas
