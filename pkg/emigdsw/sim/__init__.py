"""
    Time integration of the cell-by-cell model
"""
from emigdsw.sim.config import K2_METHODS, SimConfig
from emigdsw.sim.state import SimState, compute_jumps, initial_state
from emigdsw.sim.stepper import (ActivationTracker, RunResult, SimSystem,
                                 build_system, run, snapshot_frame,
                                 stimulus_stations, time_step)
