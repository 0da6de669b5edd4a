"""
    Typed run settings built from the run config sections
"""
from dataclasses import dataclass, field, replace

import numpy as np

from emigdsw.conf import (DEFAULT_C_M, DEFAULT_SIGMA, DEFAULT_STIM_AMPLITUDE,
                          DEFAULT_STIM_DURATION, DEFAULT_T_END, DEFAULT_TAU,
                          DEFAULT_TOL, DEFAULT_V_INIT, default_run_config)
from emigdsw.errors import ConfigError
from emigdsw.ionic import IonicParams
from emigdsw.mesh import GeometryConfig
from emigdsw.schwarz import coarse_mode, preconditioner_kind

K2_METHODS = ("lanczos", "dense")


@dataclass(frozen=True, eq=False)
class SimConfig:
    """
        Everything a single run needs

        Properties:
            geometry             - The GeometryConfig (h resolved).
            tau, t_end           - Time step and horizon (ms).
            c_m                  - Membrane capacitance.
            v_init               - Initial intracellular potential (mV).
            v_extracellular_init - Initial extracellular potential (mV).
            w_init               - Initial gating value.
            stim_amplitude       - Applied current on the stimulus stations.
            stim_duration        - The stimulus is on while t < stim_duration.
            stim_cells           - Side of the bottom-left block of stimulated cells.
            cell_sigma           - Scalar or (n_cells_y, n_cells_x) conductivities.
            sigma_extracellular  - Conductivity of the frame.
            dirichlet            - Outer sides of the frame with u_0 = 0.
            zero_mean            - Fix the extracellular mean instead (needs no Dirichlet).
            lumped_mass          - Lump the edge mass.
            snapshot_times       - Times (ms) to record the potential at.
            activation_threshold - Jump (mV) marking an activated membrane edge.
            ionic                - The IonicParams.
            precond, coarse      - Preconditioner kind and coarse mode.
            tol, maxit           - PCG stopping rule.
            overlap              - Overlap depth in element layers.
            k2_method            - "lanczos" or "dense".
            warm_start           - Start PCG from the previous potential.
            workers              - Threads for assembly and local solves.
    """

    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    tau: float = DEFAULT_TAU
    t_end: float = DEFAULT_T_END
    c_m: float = DEFAULT_C_M
    v_init: float = DEFAULT_V_INIT
    v_extracellular_init: float = 0.0
    w_init: float = 0.0
    stim_amplitude: float = DEFAULT_STIM_AMPLITUDE
    stim_duration: float = DEFAULT_STIM_DURATION
    stim_cells: int = 1
    cell_sigma: object = DEFAULT_SIGMA
    sigma_extracellular: float = DEFAULT_SIGMA
    dirichlet: tuple = ("left",)
    zero_mean: bool = False
    lumped_mass: bool = False
    snapshot_times: tuple = ()
    activation_threshold: float = -20.0
    ionic: IonicParams = field(default_factory=IonicParams)
    precond: str = "gdsw"
    coarse: str = "vertex"
    tol: float = DEFAULT_TOL
    maxit: int = 5000
    overlap: int = 1
    k2_method: str = "lanczos"
    warm_start: bool = False
    workers: int = 1

    def __post_init__(self):
        if not self.tau > 0:
            raise ConfigError(f"tau must be positive, got {self.tau}")
        if self.t_end < self.tau:
            raise ConfigError(f"t_end = {self.t_end} is shorter than one step of {self.tau}")
        if not self.tol > 0:
            raise ConfigError(f"tol must be positive, got {self.tol}")
        if self.maxit < 1:
            raise ConfigError(f"maxit must be at least 1, got {self.maxit}")
        if self.stim_cells < 0:
            raise ConfigError(f"stim_cells must be non-negative, got {self.stim_cells}")
        if self.k2_method not in K2_METHODS:
            raise ConfigError(f"Unknown k2 method {self.k2_method!r}, choose from {K2_METHODS}")
        if not self.dirichlet and not self.zero_mean:
            raise ConfigError("Without Dirichlet sides the zero-mean option must be on")

        object.__setattr__(self, "precond", preconditioner_kind(self.precond))
        object.__setattr__(self, "coarse", coarse_mode(self.coarse))
        object.__setattr__(self, "dirichlet", tuple(self.dirichlet))
        object.__setattr__(self, "snapshot_times", tuple(float(t) for t in self.snapshot_times))

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.tau))

    def with_overrides(self, **changes) -> "SimConfig":
        return replace(self, **changes)

    @classmethod
    def from_sections(cls, sections: dict = None, cell_sigma=None) -> "SimConfig":
        """
            Build the settings from a run config dictionary

            Args:
                sections   - Output of conf.load_run_config (None for defaults)
                cell_sigma - Per-cell conductivities overriding simulation.sigma

            Returns:
                The SimConfig with every derived value resolved
        """
        sections = sections if sections is not None else default_run_config()
        geometry = dict(sections["geometry"])
        simulation = dict(sections["simulation"])
        ionic = dict(sections["ionic"])
        solver = dict(sections["solver"])

        elems_short = geometry["elems_short"]
        elems_long = geometry["elems_long"] or 6 * elems_short
        h = geometry["h"]
        if h is None:
            if not geometry["cell_length"] > 0:
                raise ConfigError("cell_length must be positive")
            h = geometry["cell_length"] / elems_long

        try:
            geometry_config = GeometryConfig(
                n_cells_x=geometry["n_cells_x"],
                n_cells_y=geometry["n_cells_y"],
                elems_short=elems_short,
                elems_long=elems_long,
                frame_elems=geometry["frame_elems"],
                h=h,
            )
        except ValueError as exception:
            raise ConfigError(str(exception))

        if ionic["i_scale"] is None:
            ionic["i_scale"] = simulation["c_m"] * ionic["v_amp"]

        dirichlet = tuple(
            side for side in simulation["dirichlet"] if side.lower() not in ("none", "")
        )

        if cell_sigma is None:
            cell_sigma = simulation["sigma"]
        else:
            cell_sigma = np.asarray(cell_sigma, dtype=float)

        return cls(
            geometry=geometry_config,
            tau=simulation["tau"],
            t_end=simulation["t_end"],
            c_m=simulation["c_m"],
            v_init=simulation["v_init"],
            v_extracellular_init=simulation["v_extracellular_init"],
            w_init=simulation["w_init"],
            stim_amplitude=simulation["stim_amplitude"],
            stim_duration=simulation["stim_duration"],
            stim_cells=simulation["stim_cells"],
            cell_sigma=cell_sigma,
            sigma_extracellular=simulation["sigma_extracellular"],
            dirichlet=dirichlet,
            zero_mean=simulation["zero_mean"],
            lumped_mass=simulation["lumped_mass"],
            snapshot_times=tuple(float(t) for t in simulation["snapshot_times"]),
            activation_threshold=simulation["activation_threshold"],
            ionic=IonicParams(**ionic),
            precond=solver["precond"],
            coarse=solver["coarse"],
            tol=solver["tol"],
            maxit=solver["maxit"],
            overlap=solver["overlap"],
            k2_method=solver["k2_method"],
            warm_start=solver["warm_start"],
            workers=max(1, solver["workers"]),
        )
