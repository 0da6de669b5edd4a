"""
    The IMEX time loop: ionic update, right-hand side, PCG solve, jump recovery
"""
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from colorama import Fore

from emigdsw.assembly import (RhsAssembler, assemble_stiffness_blocks,
                              assemble_system, build_coupling)
from emigdsw.conf import create_logger
from emigdsw.errors import ConvergenceError
from emigdsw.ionic import membrane_step
from emigdsw.linalg import dense_condition, pcg
from emigdsw.mesh import MEMBRANE, build_geometry, classify_dofs
from emigdsw.schwarz import create_preconditioner
from emigdsw.sim.state import SimState, compute_jumps, initial_state

LOGGER = create_logger(__name__, "INFO")

# Largest system the dense k2 method is run on
DENSE_K2_LIMIT = 3000


@dataclass(frozen=True, eq=False)
class SimSystem:
    """
        Everything assembled once per run

        Properties:
            config    - The SimConfig.
            topology  - The MeshTopology.
            partition - The DofPartition.
            coupling  - The InterfaceCoupling.
            operator  - The CompositeOperator for config.tau.
            precond   - The Preconditioner.
            rhs       - The RhsAssembler.
            stimulus  - True on the stimulated stations.
    """

    config: object
    topology: object = field(repr=False)
    partition: object = field(repr=False)
    coupling: object = field(repr=False)
    operator: object = field(repr=False)
    precond: object = field(repr=False)
    rhs: RhsAssembler = field(repr=False)
    stimulus: np.ndarray = field(repr=False)

    @property
    def frame_dofs(self) -> np.ndarray:
        return self.topology.frame.dofs

    @property
    def restricted_kernel(self):
        kernel = self.operator.kernel
        return None if kernel is None else self.operator.restrict(kernel)


def stimulus_stations(topology, coupling, cells: int = 1) -> np.ndarray:
    """
        Membrane stations on the edges of the bottom-left cells

        Args:
            topology - The MeshTopology
            coupling - The InterfaceCoupling
            cells    - Side of the stimulated block of cells

        Returns:
            A boolean mask over the stations
    """
    stimulated = {
        topology.cell_id(row, col)
        for row in range(min(cells, topology.config.n_cells_y))
        for col in range(min(cells, topology.config.n_cells_x))
    }
    edge_ids = [
        edge.id for edge in topology.edges if edge.kind == MEMBRANE and edge.pair[0] in stimulated
    ]
    return np.isin(coupling.station_edge, edge_ids) & coupling.is_membrane


def build_system(config) -> SimSystem:
    """
        Build the mesh, assemble the operator and set up the preconditioner

        Args:
            config - The SimConfig

        Returns:
            The SimSystem
    """
    topology = build_geometry(config.geometry, config.cell_sigma, config.sigma_extracellular)
    partition = classify_dofs(topology, config.dirichlet)
    coupling = build_coupling(topology.edges, topology.n_dofs, lumped=config.lumped_mass)

    operator = assemble_system(
        config.tau,
        assemble_stiffness_blocks(topology, workers=config.workers),
        coupling.mass(config.c_m),
        partition.dirichlet,
        zero_mean=config.zero_mean,
    )
    precond = create_preconditioner(
        config.precond,
        operator,
        topology,
        partition,
        coarse=config.coarse,
        overlap=config.overlap,
        workers=config.workers,
    )

    return SimSystem(
        config=config,
        topology=topology,
        partition=partition,
        coupling=coupling,
        operator=operator,
        precond=precond,
        rhs=RhsAssembler(coupling, config.c_m, config.tau),
        stimulus=stimulus_stations(topology, coupling, config.stim_cells),
    )


def time_step(state: SimState, system: SimSystem, precond=None) -> SimState:
    """
        Advance one step: ionic model from the previous jumps, then the
        linear solve for the new potential

        Args:
            state   - The current SimState
            system  - The SimSystem
            precond - Preconditioner overriding system.precond

        Returns:
            The next SimState

        Raises:
            ConvergenceError with the step index and residual history
    """
    config = system.config
    operator = system.operator
    precond = precond if precond is not None else system.precond
    tau = operator.tau

    stim_on = state.time < config.stim_duration - 1e-9 * tau
    stim = system.stimulus * config.stim_amplitude if stim_on else 0.0

    membrane, f_nodal = membrane_step(state.membrane, tau, stim, config.ionic)
    rhs = operator.restrict(system.rhs.assemble(state.u, f_nodal))
    x0 = operator.restrict(state.u) if config.warm_start else None

    x, stats = pcg(
        operator.matrix,
        rhs,
        precond,
        tol=config.tol,
        maxit=config.maxit,
        x0=x0,
        kernel=system.restricted_kernel,
    )
    if not stats.converged:
        raise ConvergenceError(
            f"PCG did not converge at step {state.step} "
            f"(residual {stats.final_residual:.2e} after {stats.iterations} iterations)",
            step=state.step,
            residuals=stats.residuals,
        )

    u = operator.prolong(x)
    if operator.kernel is not None:
        u -= u[system.frame_dofs].mean()

    step = state.step + 1
    LOGGER.debug(f"Step {step}: {stats.iterations} iterations, k2 {stats.k2:.2f}")
    return SimState(
        u=u,
        membrane=membrane.with_jumps(compute_jumps(u, system.topology.edges)),
        step=step,
        time=step * tau,
        stats=state.stats + (stats,),
    )


def snapshot_frame(topology, u: np.ndarray) -> pd.DataFrame:
    """
        The potential as (x, y, subdomain, u) rows
    """
    coords = topology.coords
    return pd.DataFrame(
        {"x": coords[:, 0], "y": coords[:, 1], "subdomain": topology.owner, "u": u}
    )


class ActivationTracker:
    """
        Records, per membrane edge, the first time its mean jump reaches the
        threshold

        Args:
            topology  - The MeshTopology.
            coupling  - The InterfaceCoupling.
            threshold - Activation threshold (mV).
    """

    def __init__(self, topology, coupling, threshold: float):
        self.topology = topology
        self.threshold = threshold
        self.station_edge = coupling.station_edge
        n_edges = len(topology.edges)
        self.counts = np.bincount(self.station_edge, minlength=n_edges)
        self.is_membrane = np.array([edge.kind == MEMBRANE for edge in topology.edges], dtype=bool)
        self.times = np.full(n_edges, np.nan)

    def update(self, state: SimState):
        if len(self.times) == 0:
            return
        means = np.bincount(self.station_edge, weights=state.membrane.v, minlength=len(self.times))
        means = means / np.maximum(self.counts, 1)
        fresh = np.isnan(self.times) & self.is_membrane & (means >= self.threshold)
        self.times[fresh] = state.time

    def to_frame(self) -> pd.DataFrame:
        h = self.topology.config.h
        rows = []
        for edge in self.topology.edges:
            if edge.kind != MEMBRANE:
                continue
            middle = edge.grid.mean(axis=0) * h
            rows.append(
                {
                    "edge": edge.id,
                    "cell": edge.pair[0],
                    "side": edge.side,
                    "x": middle[0],
                    "y": middle[1],
                    "activation_time": self.times[edge.id],
                }
            )
        return pd.DataFrame(rows, columns=["edge", "cell", "side", "x", "y", "activation_time"])


@dataclass(eq=False)
class RunResult:
    """
        Properties:
            series     - Per-step (step, time, iterations, k2, residual, converged).
            final      - SolveStats of the last step, the headline numbers.
            activation - Per membrane edge activation time (NaN if never).
            snapshots  - Requested time -> snapshot_frame.
            state      - The final SimState.
            system     - The SimSystem the run used.
    """

    series: pd.DataFrame
    final: object
    activation: pd.DataFrame
    snapshots: dict = field(default_factory=dict)
    state: SimState = None
    system: SimSystem = None

    @property
    def iterations(self) -> int:
        return self.final.iterations

    @property
    def k2(self) -> float:
        return self.final.k2


def _due_snapshots(config, taken: dict, time: float) -> list:
    return [
        requested
        for requested in config.snapshot_times
        if requested not in taken and abs(time - requested) <= 0.5 * config.tau
    ]


def run(config, system: SimSystem = None) -> RunResult:
    """
        Run the whole time loop

        Args:
            config - The SimConfig
            system - A prebuilt SimSystem (built from config when None)

        Returns:
            The RunResult
    """
    own_system = system is None
    if own_system:
        system = build_system(config)

    topology, operator = system.topology, system.operator
    LOGGER.info(
        f"Running {Fore.CYAN}{config.precond}{Fore.RESET} on "
        f"{topology.config.n_cells_x}x{topology.config.n_cells_y} cells: "
        f"{operator.n_free} free DOFs, {config.n_steps} steps"
    )

    try:
        state = initial_state(config, topology, system.coupling, operator.dirichlet)
        tracker = ActivationTracker(topology, system.coupling, config.activation_threshold)
        snapshots = {}
        for requested in _due_snapshots(config, snapshots, state.time):
            snapshots[requested] = snapshot_frame(topology, state.u)

        for _ in range(config.n_steps):
            state = time_step(state, system)
            tracker.update(state)
            for requested in _due_snapshots(config, snapshots, state.time):
                snapshots[requested] = snapshot_frame(topology, state.u)

        final = state.stats[-1]
        if config.k2_method == "dense":
            if operator.n_free <= DENSE_K2_LIMIT:
                final.k2 = dense_condition(operator.matrix, system.precond, system.restricted_kernel)
            else:
                LOGGER.warning(
                    f"{operator.n_free} free DOFs is too large for the dense k2, keeping the Lanczos estimate"
                )
    finally:
        if own_system:
            system.precond.close()

    series = pd.DataFrame(
        {
            "step": np.arange(1, len(state.stats) + 1),
            "time": [(k + 1) * config.tau for k in range(len(state.stats))],
            "iterations": [stats.iterations for stats in state.stats],
            "k2": [stats.k2 for stats in state.stats],
            "residual": [stats.final_residual for stats in state.stats],
            "converged": [stats.converged for stats in state.stats],
        }
    )

    LOGGER.info(
        f"{Fore.CYAN}{config.precond}{Fore.RESET} final step: "
        f"{Fore.YELLOW}{final.iterations}{Fore.RESET} iterations, k2 {Fore.YELLOW}{final.k2:.1f}{Fore.RESET}"
    )
    return RunResult(
        series=series,
        final=final,
        activation=tracker.to_frame(),
        snapshots=snapshots,
        state=state,
        system=system,
    )
