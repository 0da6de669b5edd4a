"""
    The experiment harness: build the sweep points of an experiment family,
    run every point once per preconditioner and collect one table row each
"""
import copy
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
import psutil
from colorama import Fore

from emigdsw.conf import create_logger, default_run_config, render_run_config
from emigdsw.errors import ConfigError
from emigdsw.experiments.sigma import RANDOM, SigmaDistribution, sigma_map
from emigdsw.schwarz import preconditioner_kind
from emigdsw.sim import SimConfig, run

LOGGER = create_logger(__name__, "INFO")

SINGLE = "single"
SCALABILITY = "scalability"
OPTIMALITY = "optimality"
TAU_SWEEP = "tau_sweep"
ROBUSTNESS = "robustness"

EXPERIMENT_KINDS = (SINGLE, SCALABILITY, OPTIMALITY, TAU_SWEEP, ROBUSTNESS)

# Fixed sizes of each family: (cells per side, elems_short); elems_long is 6x
SCALABILITY_ELEMS = 4
OPTIMALITY_CELLS = 4
TAU_SWEEP_CELLS = 12
TAU_SWEEP_ELEMS = 4
ROBUSTNESS_CELLS = 8
ROBUSTNESS_ELEMS = 8

# Sweep key columns of each family, in table order
SWEEP_KEYS = {
    SINGLE: [],
    SCALABILITY: ["cells"],
    OPTIMALITY: ["lcy", "h_ratio"],
    TAU_SWEEP: ["tau"],
    ROBUSTNESS: ["distribution", "alpha"],
}

METRIC_COLUMNS = [
    "preconditioner",
    "n_free",
    "k2",
    "iterations",
    "wall_time_s",
    "converged",
    "error",
    "rss_mb",
]


def experiment_kind(name: str) -> str:
    """
        Normalize an experiment name, "tau-sweep" and "tau_sweep" alike
    """
    kind = name.strip().lower().replace("-", "_")
    if kind not in EXPERIMENT_KINDS:
        raise ConfigError(f"Unknown experiment {name!r}, choose from {EXPERIMENT_KINDS}")
    return kind


@dataclass(frozen=True)
class ExperimentSpec:
    """
        One experiment family and its sweep lists

        Properties:
            kind            - single, scalability, optimality, tau_sweep or robustness.
            cells           - Cells per side of the scalability sweep.
            lcy             - Elements along the short cell side of the optimality sweep.
            taus            - Time steps of the tau sweep.
            alphas          - Conductivity scaling factors of the robustness sweep.
            distributions   - Conductivity distributions of the robustness sweep.
            preconditioners - Preconditioners each point runs with.
            seed            - Seed of the random distribution.
            max_cells       - Cap on cells per side, points beyond it are skipped
                              (scalability) or shrunk (fixed size families).
            workers         - Sweep points run at once (0 = physical cores).
            sections        - The resolved run config every point starts from.
    """

    kind: str = SINGLE
    cells: tuple = (2, 4, 8, 12, 16)
    lcy: tuple = (2, 3, 4, 5, 6)
    taus: tuple = (0.005, 0.01, 0.02, 0.05, 0.1)
    alphas: tuple = (1.0, 1e-1, 1e-2, 1e-3, 1e-4)
    distributions: tuple = ("checkboard", "capsule", "random")
    preconditioners: tuple = ("gdsw", "as", "none")
    seed: int = 0
    max_cells: int = 16
    workers: int = 0
    sections: dict = field(default_factory=default_run_config, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", experiment_kind(self.kind))
        object.__setattr__(
            self, "preconditioners", tuple(preconditioner_kind(p) for p in self.preconditioners)
        )
        for name in ("cells", "lcy", "taus", "alphas", "distributions", "preconditioners"):
            if not getattr(self, name):
                raise ConfigError(f"The {name} sweep list is empty")
        if self.max_cells < 1:
            raise ConfigError(f"max_cells must be at least 1, got {self.max_cells}")
        if self.workers < 0:
            raise ConfigError(f"workers must be non-negative, got {self.workers}")
        for dist in self.distributions:
            SigmaDistribution(kind=dist)

    @classmethod
    def from_sections(cls, sections: dict, **overrides) -> "ExperimentSpec":
        """
            Build the ExperimentSpec from a run config dictionary

            Args:
                sections  - Output of conf.load_run_config
                overrides - Command line values replacing the [experiment] ones
                            (None values are ignored)

            Returns:
                The ExperimentSpec
        """
        experiment = dict(sections["experiment"])
        experiment.update({key: value for key, value in overrides.items() if value is not None})

        try:
            return cls(
                kind=experiment["kind"],
                cells=tuple(int(n) for n in experiment["cells"]),
                lcy=tuple(int(n) for n in experiment["lcy"]),
                taus=tuple(float(t) for t in experiment["taus"]),
                alphas=tuple(float(a) for a in experiment["alphas"]),
                distributions=tuple(str(d) for d in experiment["distributions"]),
                preconditioners=tuple(str(p) for p in experiment["preconditioners"]),
                seed=int(experiment["seed"]),
                max_cells=int(experiment["max_cells"]),
                workers=int(experiment["workers"]),
                sections=copy.deepcopy(sections),
            )
        except (TypeError, ValueError) as exception:
            if isinstance(exception, ConfigError):
                raise
            raise ConfigError(f"Bad [experiment] value: {exception}")

    @property
    def resolved_sections(self) -> dict:
        """
            The run config with the [experiment] section reflecting this spec
        """
        sections = copy.deepcopy(self.sections)
        sections["experiment"].update(
            kind=self.kind,
            cells=[str(n) for n in self.cells],
            lcy=[str(n) for n in self.lcy],
            taus=[f"{t:g}" for t in self.taus],
            alphas=[f"{a:g}" for a in self.alphas],
            distributions=list(self.distributions),
            preconditioners=list(self.preconditioners),
            seed=self.seed,
            max_cells=self.max_cells,
            workers=self.workers,
        )
        return sections


@dataclass(frozen=True)
class SweepPoint:
    """
        Properties:
            key        - Sweep key column -> value.
            sections   - The run config of this point.
            cell_sigma - Per-cell conductivities (None for the config's scalar).
            error      - Why the point cannot be run, reported as a failed row.
    """

    key: dict
    sections: dict
    cell_sigma: np.ndarray = None
    error: Exception = None


def _with_geometry(sections: dict, cells: int, elems_short: int, derive_h: bool = False) -> dict:
    sections = copy.deepcopy(sections)
    geometry = sections["geometry"]
    geometry.update(
        n_cells_x=cells, n_cells_y=cells, elems_short=elems_short, elems_long=6 * elems_short
    )
    if derive_h:
        geometry["h"] = None
    return sections


def _capped(spec: ExperimentSpec, cells: int) -> int:
    if cells > spec.max_cells:
        LOGGER.info(f"Shrinking {cells}x{cells} cells to the {spec.max_cells}x{spec.max_cells} cap")
        return spec.max_cells
    return cells


def sweep_points(spec: ExperimentSpec) -> list:
    """
        Every point of the experiment in sweep order

        Args:
            spec - The ExperimentSpec

        Returns:
            A list of SweepPoint
    """
    base = spec.sections

    if spec.kind == SINGLE:
        return [SweepPoint(key={}, sections=copy.deepcopy(base))]

    if spec.kind == SCALABILITY:
        points = []
        for cells in spec.cells:
            if cells > spec.max_cells:
                LOGGER.info(f"Skipping {cells}x{cells} cells, above the {spec.max_cells} cap")
                continue
            points.append(
                SweepPoint(key={"cells": cells}, sections=_with_geometry(base, cells, SCALABILITY_ELEMS))
            )
        if not points:
            raise ConfigError(f"Every scalability point is above max_cells = {spec.max_cells}")
        return points

    if spec.kind == OPTIMALITY:
        cells = _capped(spec, OPTIMALITY_CELLS)
        return [
            SweepPoint(
                key={"lcy": lcy, "h_ratio": 6 * lcy},
                sections=_with_geometry(base, cells, lcy, derive_h=True),
            )
            for lcy in spec.lcy
        ]

    if spec.kind == TAU_SWEEP:
        cells = _capped(spec, TAU_SWEEP_CELLS)
        points = []
        for tau in spec.taus:
            sections = _with_geometry(base, cells, TAU_SWEEP_ELEMS)
            sections["simulation"]["tau"] = tau
            points.append(SweepPoint(key={"tau": tau}, sections=sections))
        return points

    cells = _capped(spec, ROBUSTNESS_CELLS)
    sigma = base["simulation"]["sigma"]
    points = []
    for kind in spec.distributions:
        for alpha in spec.alphas:
            # The random family has no unscaled entry
            if kind == RANDOM and alpha == 1.0:
                continue
            dist = SigmaDistribution(kind=kind, sigma=sigma, alpha=alpha, seed=spec.seed)
            cell_sigma, error = None, None
            try:
                cell_sigma = sigma_map(dist, cells)
            except ConfigError as exception:
                LOGGER.warning(f"{kind} at alpha {alpha} on {cells}x{cells} cells: {exception}")
                error = exception
            points.append(
                SweepPoint(
                    key={"distribution": kind, "alpha": alpha},
                    sections=_with_geometry(base, cells, ROBUSTNESS_ELEMS),
                    cell_sigma=cell_sigma,
                    error=error,
                )
            )
    return points


def _rss_mb() -> float:
    return psutil.Process().memory_info().rss / 2 ** 20


def run_point(point: SweepPoint, precond: str) -> (dict, Exception):
    """
        Run one sweep point with one preconditioner

        Returns:
            The table row and the exception of a failed run (None on success).
            A failed run has NaN metrics and the error message in its row.
    """
    row = dict(point.key)
    row["preconditioner"] = precond

    sections = copy.deepcopy(point.sections)
    sections["solver"]["precond"] = precond

    start = time.perf_counter()
    try:
        if point.error is not None:
            raise point.error
        config = SimConfig.from_sections(sections, cell_sigma=point.cell_sigma)
        result = run(config)
    except Exception as exception:
        row.update(
            n_free=np.nan,
            k2=np.nan,
            iterations=np.nan,
            wall_time_s=time.perf_counter() - start,
            converged=False,
            error=f"{type(exception).__name__}: {exception}",
            rss_mb=_rss_mb(),
        )
        return row, exception

    row.update(
        n_free=result.system.operator.n_free,
        k2=result.k2,
        iterations=result.iterations,
        wall_time_s=time.perf_counter() - start,
        converged=bool(result.final.converged),
        error="",
        rss_mb=_rss_mb(),
    )
    return row, None


def sweep_workers(requested: int) -> int:
    """
        Threads used for the sweep, 0 meaning one per physical core
    """
    if requested > 0:
        return requested
    return psutil.cpu_count(logical=False) or 1


def run_experiment(spec: ExperimentSpec, results_db=None) -> (pd.DataFrame, int):
    """
        Run every sweep point once per preconditioner

        Args:
            spec       - The ExperimentSpec
            results_db - A ResultsDatabase receiving every run and failure

        Returns:
            The table in sweep order and the number of failed runs
    """
    points = sweep_points(spec)
    jobs = [(point, precond) for point in points for precond in spec.preconditioners]
    workers = min(sweep_workers(spec.workers), len(jobs))

    LOGGER.info(
        f"{Fore.CYAN}{spec.kind}{Fore.RESET}: {len(points)} points x "
        f"{len(spec.preconditioners)} preconditioners on {workers} workers"
    )

    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(run_point, point, precond) for point, precond in jobs]
        outcomes = [future.result() for future in futures]

    rows = []
    failures = 0
    for row, exception in outcomes:
        rows.append(row)
        label = ", ".join(f"{key}={row[key]}" for key in SWEEP_KEYS[spec.kind])
        if exception is not None:
            failures += 1
            LOGGER.warning(
                f"{Fore.RED}{row['preconditioner']} failed{Fore.RESET} at [{label}]: {row['error']}"
            )
            if results_db is not None:
                context = {key: row[key] for key in SWEEP_KEYS[spec.kind]}
                context.update(experiment=spec.kind, preconditioner=row["preconditioner"])
                results_db.insert_error(exception, context)
        else:
            LOGGER.info(
                f"[{label}] {Fore.CYAN}{row['preconditioner']}{Fore.RESET}: "
                f"it = {Fore.YELLOW}{row['iterations']}{Fore.RESET}, k2 = {row['k2']:.4g}"
            )
        if results_db is not None:
            results_db.insert_run({"experiment": spec.kind, **row})

    table = pd.DataFrame(rows, columns=SWEEP_KEYS[spec.kind] + METRIC_COLUMNS)
    return table, failures


def table_header(spec: ExperimentSpec) -> str:
    """
        The resolved run config embedded at the top of every table
    """
    return render_run_config(spec.resolved_sections)
