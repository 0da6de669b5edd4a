"""
    The time loop, its config and the per-run outputs
"""
import unittest

import numpy as np

from emigdsw.conf import default_run_config
from emigdsw.errors import ConfigError, ConvergenceError
from emigdsw.mesh import GeometryConfig
from emigdsw.sim import (SimConfig, build_system, compute_jumps,
                         initial_state, run, stimulus_stations, time_step)

SMALL = GeometryConfig(n_cells_x=2, n_cells_y=2, elems_short=2, frame_elems=2, h=0.01 / 12)


def small_config(**changes) -> SimConfig:
    settings = dict(geometry=SMALL, t_end=0.5)
    settings.update(changes)
    return SimConfig(**settings)


class SimConfigTests(unittest.TestCase):
    def test_step_count(self):
        assert SimConfig(t_end=5.0, tau=0.05).n_steps == 100
        assert small_config().n_steps == 10

    def test_invalid_values(self):
        for changes in (
            {"tau": 0.0},
            {"t_end": 0.01},
            {"tol": -1.0},
            {"maxit": 0},
            {"stim_cells": -1},
            {"k2_method": "power"},
            {"dirichlet": ()},
            {"precond": "multigrid"},
            {"coarse": "faces"},
        ):
            with self.subTest(changes=changes):
                with self.assertRaises(ConfigError):
                    small_config(**changes)

    def test_zero_mean_without_dirichlet(self):
        config = small_config(dirichlet=(), zero_mean=True)
        assert config.dirichlet == ()

    def test_with_overrides(self):
        config = small_config()
        changed = config.with_overrides(precond="as")
        assert changed.precond == "as"
        assert config.precond == "gdsw"
        assert changed.geometry == config.geometry

    def test_from_default_sections(self):
        config = SimConfig.from_sections()
        assert config.geometry.elems_long == 24
        assert np.isclose(config.geometry.h, 0.01 / 24)
        assert config.ionic.i_scale == 100.0
        assert config.dirichlet == ("left",)

    def test_from_sections_overrides(self):
        sections = default_run_config()
        sections["geometry"]["h"] = 0.5
        sections["simulation"]["dirichlet"] = ["none"]
        sections["simulation"]["zero_mean"] = True
        sections["solver"]["workers"] = 0

        config = SimConfig.from_sections(sections, cell_sigma=np.full((2, 2), 1e-3))

        assert config.geometry.h == 0.5
        assert config.dirichlet == ()
        assert config.workers == 1
        assert config.cell_sigma.shape == (2, 2)

    def test_from_sections_bad_geometry(self):
        sections = default_run_config()
        sections["geometry"]["n_cells_x"] = 0
        with self.assertRaises(ConfigError):
            SimConfig.from_sections(sections)


class StimulusTests(unittest.TestCase):
    def test_bottom_left_cell(self):
        system = build_system(small_config())
        # Bottom edge of 13 nodes plus the left edge of 3
        assert system.stimulus.sum() == 16
        assert np.all(system.coupling.is_membrane[system.stimulus])

    def test_no_cells(self):
        system = build_system(small_config())
        mask = stimulus_stations(system.topology, system.coupling, cells=0)
        assert not mask.any()


class TimeStepTests(unittest.TestCase):
    def test_rest_is_fixed_point(self):
        config = small_config(stim_amplitude=0.0, warm_start=True)
        system = build_system(config)
        state = initial_state(config, system.topology, system.coupling, system.operator.dirichlet)

        stepped = time_step(state, system)

        assert np.allclose(stepped.u, state.u)
        assert stepped.stats[-1].iterations == 0
        assert stepped.step == 1
        assert np.isclose(stepped.time, config.tau)

    def test_rest_persists(self):
        config = small_config(stim_amplitude=0.0, warm_start=True, t_end=5.0)
        system = build_system(config)
        rest = initial_state(config, system.topology, system.coupling, system.operator.dirichlet)

        state = rest
        for _ in range(config.n_steps):
            state = time_step(state, system)

        assert state.step == 100
        assert np.abs(state.u - rest.u).max() <= 1e-6
        assert np.abs(state.membrane.v - rest.membrane.v).max() <= 1e-6

    def test_jumps_follow_potential(self):
        config = small_config()
        system = build_system(config)
        state = initial_state(config, system.topology, system.coupling, system.operator.dirichlet)
        for _ in range(3):
            state = time_step(state, system)

        assert np.allclose(state.membrane.v, compute_jumps(state.u, system.topology.edges))
        assert np.all(state.u[system.operator.dirichlet] == 0.0)

    def test_stimulus_depolarizes(self):
        config = small_config()
        system = build_system(config)
        state = initial_state(config, system.topology, system.coupling, system.operator.dirichlet)
        for _ in range(5):
            state = time_step(state, system)

        assert state.membrane.v[system.stimulus].mean() > config.v_init

    def test_unconverged_step(self):
        config = small_config(precond="none", maxit=1)
        system = build_system(config)
        state = initial_state(config, system.topology, system.coupling, system.operator.dirichlet)

        with self.assertRaises(ConvergenceError) as context:
            time_step(state, system)

        assert context.exception.step == 0
        assert len(context.exception.residuals) >= 1


class RunTests(unittest.TestCase):
    def test_series(self):
        result = run(small_config())

        assert len(result.series) == 10
        assert list(result.series.columns) == ["step", "time", "iterations", "k2", "residual", "converged"]
        assert result.series["converged"].all()
        assert result.iterations == result.series["iterations"].iloc[-1]
        assert result.k2 >= 1.0

    def test_deterministic(self):
        first = run(small_config())
        second = run(small_config())

        assert np.array_equal(first.state.u, second.state.u)
        assert first.series["iterations"].tolist() == second.series["iterations"].tolist()

    def test_dense_k2(self):
        result = run(small_config(t_end=0.1, k2_method="dense"))
        assert result.k2 >= 1.0

    def test_zero_mean_frame(self):
        result = run(small_config(t_end=0.1, dirichlet=(), zero_mean=True))
        frame = result.system.frame_dofs
        assert abs(result.state.u[frame].mean()) < 1e-8

    def test_activation_table(self):
        result = run(small_config())

        assert list(result.activation.columns) == ["edge", "cell", "side", "x", "y", "activation_time"]
        # Eight membrane edges on a 2x2 block
        assert len(result.activation) == 8

    def test_wavefront_spreads_from_stimulus(self):
        geometry = GeometryConfig(n_cells_x=4, n_cells_y=4, h=0.01 / 24)
        result = run(SimConfig(geometry=geometry, t_end=5.0))

        subdomains = result.system.topology.subdomains
        activation = result.activation.assign(
            distance=[subdomains[cell].row + subdomains[cell].col for cell in result.activation["cell"]]
        )
        earliest = activation.groupby("distance")["activation_time"].min().sort_index()

        reached = earliest.dropna()
        assert reached.index.tolist() == list(range(len(reached)))
        assert len(reached) >= 3
        assert reached.is_monotonic_increasing

    def test_snapshots(self):
        result = run(small_config(t_end=0.2, snapshot_times=(0.0, 0.1)))

        assert sorted(result.snapshots) == [0.0, 0.1]
        snapshot = result.snapshots[0.1]
        assert list(snapshot.columns) == ["x", "y", "subdomain", "u"]
        assert len(snapshot) == result.system.topology.n_dofs
