"""
    Conductivity distributions, the sweep harness and its plot scripts
"""
from emigdsw.experiments.plots import PLOTTED_KINDS, emit_plots, wide_table
from emigdsw.experiments.sigma import (CAPSULE, CHECKBOARD, DISTRIBUTIONS,
                                       NORMAL, RANDOM, SigmaDistribution,
                                       sigma_map)
from emigdsw.experiments.sweep import (EXPERIMENT_KINDS, OPTIMALITY,
                                       ROBUSTNESS, SCALABILITY, SINGLE,
                                       SWEEP_KEYS, TAU_SWEEP, ExperimentSpec,
                                       SweepPoint, experiment_kind,
                                       run_experiment, run_point,
                                       sweep_points, table_header)
