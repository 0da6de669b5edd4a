"""
    Conductivity maps, the sweep harness and the plot scripts
"""
import os
import tempfile
import unittest
from unittest import mock

import numpy as np
import pandas as pd

from emigdsw.conf import DEFAULT_SIGMA, default_run_config
from emigdsw.errors import ConfigError, ConvergenceError, PlotError
from emigdsw.experiments import (CAPSULE, CHECKBOARD, NORMAL, OPTIMALITY,
                                 RANDOM, ROBUSTNESS, SCALABILITY, TAU_SWEEP,
                                 ExperimentSpec, SigmaDistribution,
                                 emit_plots, experiment_kind, run_experiment,
                                 sigma_map, sweep_points, table_header,
                                 wide_table)
from emigdsw.experiments.sweep import run_point, sweep_workers


class SigmaMapTests(unittest.TestCase):
    def test_normal(self):
        sigmas = sigma_map(SigmaDistribution(NORMAL), 3)
        assert sigmas.shape == (3, 3)
        assert np.all(sigmas == DEFAULT_SIGMA)

    def test_checkboard(self):
        sigmas = sigma_map(SigmaDistribution(CHECKBOARD, sigma=1.0, alpha=0.1), 2)
        assert np.allclose(sigmas, [[1.0, 0.1], [0.1, 1.0]])

    def test_capsule_is_centered(self):
        sigmas = sigma_map(SigmaDistribution(CAPSULE, sigma=1.0, alpha=0.01), 8)

        inner = np.zeros((8, 8), dtype=bool)
        inner[2:6, 2:6] = True
        assert np.allclose(sigmas[inner], 0.01)
        assert np.allclose(sigmas[~inner], 1.0)

    def test_capsule_needs_room(self):
        with self.assertRaises(ConfigError):
            sigma_map(SigmaDistribution(CAPSULE), 3)

    def test_random_is_seeded(self):
        first = sigma_map(SigmaDistribution(RANDOM, alpha=0.1, seed=7), 4)
        again = sigma_map(SigmaDistribution(RANDOM, alpha=0.1, seed=7), 4)
        other = sigma_map(SigmaDistribution(RANDOM, alpha=0.1, seed=8), 4)

        assert np.array_equal(first, again)
        assert not np.array_equal(first, other)
        assert np.all(first >= 0.1 * DEFAULT_SIGMA)

    def test_rectangular_block(self):
        assert sigma_map(SigmaDistribution(NORMAL), 3, 2).shape == (2, 3)

    def test_invalid(self):
        with self.assertRaises(ConfigError):
            SigmaDistribution("stripes")
        with self.assertRaises(ConfigError):
            SigmaDistribution(NORMAL, alpha=0.0)
        with self.assertRaises(ConfigError):
            sigma_map(SigmaDistribution(NORMAL), 0)


class ExperimentSpecTests(unittest.TestCase):
    def test_kind_names(self):
        assert experiment_kind("tau-sweep") == TAU_SWEEP
        assert experiment_kind(" Scalability ") == SCALABILITY
        with self.assertRaises(ConfigError):
            experiment_kind("weak-scaling")

    def test_invalid(self):
        for changes in (
            {"cells": ()},
            {"preconditioners": ("ilu",)},
            {"distributions": ("stripes",)},
            {"max_cells": 0},
            {"workers": -1},
        ):
            with self.subTest(changes=changes):
                with self.assertRaises(ConfigError):
                    ExperimentSpec(kind=SCALABILITY, **changes)

    def test_from_sections(self):
        sections = default_run_config()
        sections["experiment"]["taus"] = ["0.1", "0.01"]

        spec = ExperimentSpec.from_sections(sections, kind="tau-sweep", seed=None)

        assert spec.kind == TAU_SWEEP
        assert spec.taus == (0.1, 0.01)
        assert spec.seed == 0

    def test_from_sections_bad_number(self):
        sections = default_run_config()
        sections["experiment"]["cells"] = ["two"]
        with self.assertRaises(ConfigError):
            ExperimentSpec.from_sections(sections)

    def test_header_carries_sweep(self):
        header = table_header(ExperimentSpec(kind=SCALABILITY, cells=(2, 4)))
        assert "[experiment]" in header
        assert "cells = 2,4" in header
        assert "kind = scalability" in header

    def test_workers(self):
        assert sweep_workers(3) == 3
        assert sweep_workers(0) >= 1


class SweepPointTests(unittest.TestCase):
    def test_scalability_cap(self):
        points = sweep_points(ExperimentSpec(kind=SCALABILITY, cells=(2, 4, 8), max_cells=4))

        assert [point.key["cells"] for point in points] == [2, 4]
        geometry = points[1].sections["geometry"]
        assert geometry["n_cells_x"] == geometry["n_cells_y"] == 4
        assert geometry["elems_long"] == 24

    def test_scalability_all_capped(self):
        with self.assertRaises(ConfigError):
            sweep_points(ExperimentSpec(kind=SCALABILITY, cells=(8,), max_cells=4))

    def test_optimality_derives_h(self):
        points = sweep_points(ExperimentSpec(kind=OPTIMALITY, lcy=(2, 3)))

        assert [point.key for point in points] == [{"lcy": 2, "h_ratio": 12}, {"lcy": 3, "h_ratio": 18}]
        assert all(point.sections["geometry"]["h"] is None for point in points)

    def test_tau_sweep_shrinks(self):
        points = sweep_points(ExperimentSpec(kind=TAU_SWEEP, taus=(0.1, 0.01), max_cells=3))

        assert [point.sections["simulation"]["tau"] for point in points] == [0.1, 0.01]
        assert points[0].sections["geometry"]["n_cells_x"] == 3

    def test_robustness_points(self):
        spec = ExperimentSpec(kind=ROBUSTNESS, alphas=(1.0, 0.1))
        points = sweep_points(spec)

        # Random has no alpha = 1 entry
        assert [tuple(point.key.values()) for point in points] == [
            (CHECKBOARD, 1.0),
            (CHECKBOARD, 0.1),
            (CAPSULE, 1.0),
            (CAPSULE, 0.1),
            (RANDOM, 0.1),
        ]
        assert points[1].cell_sigma.shape == (8, 8)

    def test_robustness_capsule_too_small(self):
        points = sweep_points(ExperimentSpec(kind=ROBUSTNESS, alphas=(0.1,), max_cells=3))

        by_kind = {point.key["distribution"]: point for point in points}
        assert isinstance(by_kind[CAPSULE].error, ConfigError)
        assert by_kind[CAPSULE].cell_sigma is None
        assert by_kind[CHECKBOARD].error is None
        assert by_kind[CHECKBOARD].cell_sigma.shape == (3, 3)

    def test_points_do_not_share_sections(self):
        points = sweep_points(ExperimentSpec(kind=TAU_SWEEP, taus=(0.1, 0.01)))
        points[0].sections["solver"]["precond"] = "as"
        assert points[1].sections["solver"]["precond"] == "gdsw"


def fake_run(config):
    if config.precond == "none":
        raise ConvergenceError("PCG did not converge at step 0", step=0, residuals=[1.0, 0.5])
    result = mock.MagicMock()
    result.system.operator.n_free = 100
    result.k2 = 3.5 if config.precond == "gdsw" else 40.0
    result.iterations = 9 if config.precond == "gdsw" else 30
    result.final.converged = True
    return result


class RunExperimentTests(unittest.TestCase):
    @mock.patch("emigdsw.experiments.sweep.run", side_effect=fake_run)
    def test_rows_in_sweep_order(self, run):
        spec = ExperimentSpec(kind=TAU_SWEEP, taus=(0.1, 0.01), workers=2)
        results_db = mock.MagicMock()

        table, failures = run_experiment(spec, results_db)

        assert run.call_count == 6
        assert failures == 2
        assert table["tau"].tolist() == [0.1, 0.1, 0.1, 0.01, 0.01, 0.01]
        assert table["preconditioner"].tolist() == ["gdsw", "as", "none"] * 2
        assert table["iterations"].tolist()[:2] == [9, 30]
        assert np.isnan(table["k2"].iloc[2])
        assert table["error"].iloc[2].startswith("ConvergenceError")
        assert table["error"].iloc[0] == ""

        assert results_db.insert_run.call_count == 6
        assert results_db.insert_error.call_count == 2
        exception, context = results_db.insert_error.call_args[0]
        assert isinstance(exception, ConvergenceError)
        assert context == {"tau": 0.01, "experiment": TAU_SWEEP, "preconditioner": "none"}

    @mock.patch("emigdsw.experiments.sweep.run", side_effect=fake_run)
    def test_without_db(self, _):
        spec = ExperimentSpec(kind=SCALABILITY, cells=(2,), preconditioners=("gdsw",), workers=1)
        table, failures = run_experiment(spec)

        assert failures == 0
        assert list(table.columns[:2]) == ["cells", "preconditioner"]
        assert table["converged"].tolist() == [True]

    @mock.patch("emigdsw.experiments.sweep.run", side_effect=fake_run)
    def test_infeasible_point_fails_alone(self, run):
        spec = ExperimentSpec(kind=ROBUSTNESS, alphas=(0.1,), max_cells=3, workers=1)

        table, failures = run_experiment(spec)

        assert len(table) == 9
        capsule = table[table["distribution"] == CAPSULE]
        assert not capsule["converged"].any()
        assert capsule["error"].str.startswith("ConfigError").all()
        assert table.loc[table["distribution"] == CHECKBOARD, "converged"].tolist() == [True, True, False]
        # Capsule never reaches the simulation
        assert run.call_count == 6
        assert failures == 5

    @mock.patch("emigdsw.experiments.sweep.run", side_effect=np.linalg.LinAlgError("Singular matrix"))
    def test_unexpected_exception_becomes_row(self, _):
        point = sweep_points(ExperimentSpec(kind=SCALABILITY, cells=(2,)))[0]

        row, exception = run_point(point, "gdsw")

        assert isinstance(exception, np.linalg.LinAlgError)
        assert row["converged"] is False
        assert np.isnan(row["k2"])
        assert row["error"] == "LinAlgError: Singular matrix"


def long_table(kind: str) -> pd.DataFrame:
    rows = []
    for n, cells in enumerate((2, 4)):
        for precond, factor in (("gdsw", 1), ("as", 3), ("none", 10)):
            key = {
                SCALABILITY: {"cells": cells},
                OPTIMALITY: {"lcy": cells, "h_ratio": 6 * cells},
                TAU_SWEEP: {"tau": 0.1 / cells},
            }[kind]
            rows.append({**key, "preconditioner": precond, "k2": 2.0 * factor + n, "iterations": 5 * factor + n})
    return pd.DataFrame(rows)


class PlotTests(unittest.TestCase):
    def test_wide_table(self):
        wide = wide_table(long_table(SCALABILITY), ["cells"])

        assert wide["cells"].tolist() == [2, 4]
        assert wide["it_gdsw"].tolist() == [5, 6]
        assert wide["k2_none"].tolist() == [20.0, 21.0]

    def test_scalability_script(self):
        with tempfile.TemporaryDirectory() as plots_dir:
            written = emit_plots({SCALABILITY: long_table(SCALABILITY)}, plots_dir)

            assert sorted(os.path.basename(path) for path in written) == ["scalability.csv", "scalability.gp"]
            with open(os.path.join(plots_dir, "scalability.gp")) as script:
                text = script.read()
            assert "set multiplot layout 2,2" in text
            assert '"it_gdsw"' in text
            assert "'CG'" in text

    def test_tau_sweep_is_logscale(self):
        with tempfile.TemporaryDirectory() as plots_dir:
            emit_plots({TAU_SWEEP: long_table(TAU_SWEEP)}, plots_dir)
            with open(os.path.join(plots_dir, "tau_sweep.gp")) as script:
                assert "set logscale x" in script.read()

    def test_robustness_files(self):
        table = pd.DataFrame(
            [
                {"distribution": dist, "alpha": alpha, "preconditioner": precond, "k2": 2.0, "iterations": 7}
                for dist in (CHECKBOARD, RANDOM)
                for alpha in (0.1, 0.01)
                for precond in ("gdsw", "as")
            ]
        )
        with tempfile.TemporaryDirectory() as plots_dir:
            written = emit_plots({ROBUSTNESS: table}, plots_dir)

            names = sorted(os.path.basename(path) for path in written)
            assert names == ["robustness.gp", "robustness_checkboard.csv", "robustness_random.csv"]
            with open(os.path.join(plots_dir, "robustness.gp")) as script:
                assert "set multiplot layout 2,2" in script.read()

    def test_missing_columns(self):
        table = long_table(SCALABILITY).drop(columns="k2")
        with tempfile.TemporaryDirectory() as plots_dir:
            with self.assertRaises(PlotError):
                emit_plots({SCALABILITY: table}, plots_dir)

    def test_empty_table(self):
        with tempfile.TemporaryDirectory() as plots_dir:
            with self.assertLogs("emigdsw.experiments.plots", level="WARNING"):
                written = emit_plots({OPTIMALITY: pd.DataFrame()}, plots_dir)
            assert written == []
