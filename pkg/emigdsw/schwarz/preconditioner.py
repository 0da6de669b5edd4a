"""
    Preconditioners for the composite operator and the factory that builds them
"""
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from colorama import Fore

from emigdsw.conf import create_logger
from emigdsw.errors import ConfigError
from emigdsw.schwarz.coarse import VERTEX, build_coarse
from emigdsw.schwarz.local import build_local

LOGGER = create_logger(__name__, "INFO")

NONE = "none"
ADDITIVE_SCHWARZ = "as"
GDSW = "gdsw"

PRECONDITIONER_KINDS = {
    "none": NONE,
    "cg": NONE,
    "as": ADDITIVE_SCHWARZ,
    "additive_schwarz": ADDITIVE_SCHWARZ,
    "gdsw": GDSW,
}


def preconditioner_kind(name: str) -> str:
    try:
        return PRECONDITIONER_KINDS[name.lower()]
    except (KeyError, AttributeError):
        raise ConfigError(
            f"Unknown preconditioner {name!r}, choose from {sorted(PRECONDITIONER_KINDS)}"
        )


class Preconditioner(ABC):
    """
        An SPD operator on the free DOFs. Instances are callables r -> P r so
        they can be handed straight to pcg.
    """

    kind: str = None

    @abstractmethod
    def apply(self, residual: np.ndarray) -> np.ndarray:
        """
            Apply the preconditioner to a residual over the free DOFs
        """
        raise NotImplementedError()

    def __call__(self, residual: np.ndarray) -> np.ndarray:
        return self.apply(residual)

    def close(self):
        """
            Release worker threads, if any
        """


class IdentityPreconditioner(Preconditioner):
    """
        Plain CG
    """

    kind = NONE

    def apply(self, residual: np.ndarray) -> np.ndarray:
        return np.array(residual, dtype=float)


class AdditiveSchwarz(Preconditioner):
    """
        One-level additive Schwarz: sum of exact solves on the overlapping
        local spaces

        Args:
            local_spaces - The LocalSpace objects.
            n_free       - Size of the free space.
            workers      - Threads used for the local solves. The results are
                           summed in subdomain order either way.
    """

    kind = ADDITIVE_SCHWARZ

    def __init__(self, local_spaces: list, n_free: int, workers: int = 1):
        self.local_spaces = list(local_spaces)
        self.n_free = n_free
        self.workers = workers
        self._pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    def _local_solutions(self, residual: np.ndarray):
        if self._pool is not None:
            return self._pool.map(lambda space: space.solve(residual), self.local_spaces)
        return (space.solve(residual) for space in self.local_spaces)

    def apply(self, residual: np.ndarray) -> np.ndarray:
        result = np.zeros(self.n_free)
        for space, solution in zip(self.local_spaces, self._local_solutions(residual)):
            result[space.dofs] += solution
        return result

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None


class GDSWPreconditioner(AdditiveSchwarz):
    """
        Two-level GDSW: the additive Schwarz sum plus the coarse correction
        Phi K0^-1 Phi^T r
    """

    kind = GDSW

    def __init__(self, local_spaces: list, coarse, n_free: int, workers: int = 1):
        super().__init__(local_spaces, n_free, workers)
        self.coarse = coarse

    def apply(self, residual: np.ndarray) -> np.ndarray:
        return super().apply(residual) + self.coarse.apply(residual)


def create_preconditioner(
    kind: str,
    operator,
    topology,
    partition,
    coarse: str = VERTEX,
    overlap: int = 1,
    workers: int = 1,
) -> Preconditioner:
    """
        Preconditioner factory. Builds the preconditioner named by kind for an
        assembled operator.

        Args:
            kind      - "none", "as" or "gdsw"
            operator  - The CompositeOperator
            topology  - The MeshTopology
            partition - The DofPartition
            coarse    - Coarse mode for gdsw
            overlap   - Overlap depth in element layers
            workers   - Threads for factorizations and local solves

        Returns:
            The Preconditioner
    """
    kind = preconditioner_kind(kind)
    if kind == NONE:
        return IdentityPreconditioner()

    if overlap < 0:
        raise ConfigError(f"The overlap must be non-negative, got {overlap}")

    local_spaces = build_local(operator, topology, overlap=overlap, workers=workers)
    LOGGER.debug(
        f"Built {len(local_spaces)} local spaces, "
        f"{sum(space.size for space in local_spaces)} DOFs for {operator.n_free} free"
    )

    if kind == ADDITIVE_SCHWARZ:
        return AdditiveSchwarz(local_spaces, operator.n_free, workers)

    coarse_space = build_coarse(operator, topology, partition, coarse)
    LOGGER.debug(f"{Fore.CYAN}GDSW{Fore.RESET} coarse space with {coarse_space.n_columns} columns")
    return GDSWPreconditioner(local_spaces, coarse_space, operator.n_free, workers)


def apply(precond: Preconditioner, residual: np.ndarray) -> np.ndarray:
    """
        z = P r for any preconditioner
    """
    return precond.apply(residual)
