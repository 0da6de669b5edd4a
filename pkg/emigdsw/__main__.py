"""
    The main functionality of emigdsw
"""
import os
import sys

from colorama import Fore

from emigdsw.args import parse_args
from emigdsw.conf import (create_logger, create_output_dirs, load_run_config,
                          render_run_config, set_log_level)
from emigdsw.data import (membrane_frame, read_table, write_matrix,
                          write_residuals, write_snapshot, write_table)
from emigdsw.db.results_tiny_db import TinyResults
from emigdsw.errors import ConfigError, ConvergenceError, EmiGdswError
from emigdsw.experiments import (PLOTTED_KINDS, ExperimentSpec, emit_plots,
                                 experiment_kind, run_experiment, table_header)
from emigdsw.linalg import SolveStats
from emigdsw.sim import SimConfig, run

LOGGER = create_logger(__name__, "INFO")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAILED_RUNS = 2


class EmiGdsw:
    """
        The emigdsw executor: one instance per command line invocation

        Properties:
            command  - The sub command.
            sections - The resolved run config with command line overrides.
            dirs     - Output folders (tables, plots, snapshots, db).
    """

    def __init__(self, options: dict):
        self.options = options
        self.command = options["command"]
        self.logger = create_logger(__name__, options["log"])

        self.sections = load_run_config(options.get("config"))
        solver = self.sections["solver"]
        experiment = self.sections["experiment"]
        if options.get("precond"):
            solver["precond"] = options["precond"]
            experiment["preconditioners"] = [options["precond"]]
        if options.get("coarse"):
            solver["coarse"] = options["coarse"]
        if options.get("seed") is not None:
            experiment["seed"] = options["seed"]
        if options.get("max_cells") is not None:
            experiment["max_cells"] = options["max_cells"]

        self.dirs = create_output_dirs(options["out"])

    def run_single(self) -> int:
        """
            One simulation with the config as given: the per-step series,
            activation map, snapshots, final membrane state and solver dumps
        """
        config = SimConfig.from_sections(self.sections)
        header = render_run_config(self.sections)
        tables = self.dirs["tables"]

        try:
            result = run(config)
        except ConvergenceError as exception:
            self.logger.error(f"{Fore.RED}{exception}{Fore.RESET}")
            write_residuals(
                SolveStats(residuals=list(exception.residuals)),
                os.path.join(tables, f"residuals_step{exception.step}.csv"),
            )
            return EXIT_FAILED_RUNS

        write_table(result.series, os.path.join(tables, "single.csv"), header)
        write_table(result.activation, os.path.join(tables, "activation.csv"), header)
        write_residuals(result.final, os.path.join(tables, "residuals_final.csv"))

        system = result.system
        write_table(
            membrane_frame(result.state.membrane, system.coupling, system.topology),
            os.path.join(self.dirs["snapshots"], "membrane_final.csv"),
        )
        for time, snapshot in result.snapshots.items():
            write_snapshot(snapshot, self.dirs["snapshots"], time)

        write_matrix(
            system.operator.matrix,
            os.path.join(tables, "operator.mtx"),
            comment=f"tau = {config.tau}, free DOFs only",
        )
        coarse = getattr(system.precond, "coarse", None)
        if coarse is not None:
            write_table(coarse.to_frame(system.operator), os.path.join(tables, "coarse_basis.csv"))

        results_db = TinyResults(self.dirs["db"])
        results_db.insert_run(
            {
                "experiment": "single",
                "preconditioner": config.precond,
                "n_free": system.operator.n_free,
                "k2": result.k2,
                "iterations": result.iterations,
            }
        )
        results_db.close()

        self.logger.info(f"Tables written to {Fore.CYAN}{tables}{Fore.RESET}")
        return EXIT_OK

    def run_sweep(self) -> int:
        """
            One experiment family: the table, its plot script and a results
            db entry per run
        """
        spec = ExperimentSpec.from_sections(self.sections, kind=experiment_kind(self.command))
        results_db = TinyResults(self.dirs["db"])
        try:
            table, failures = run_experiment(spec, results_db)
        finally:
            results_db.close()

        path = os.path.join(self.dirs["tables"], f"{spec.kind}.csv")
        write_table(table, path, table_header(spec))
        emit_plots({spec.kind: table}, self.dirs["plots"])

        if failures:
            self.logger.warning(
                f"{Fore.RED}{failures} of {len(table)} runs failed{Fore.RESET}, see the error column of {path}"
            )
            return EXIT_FAILED_RUNS

        self.logger.info(f"Wrote {len(table)} rows to {Fore.CYAN}{path}{Fore.RESET}")
        return EXIT_OK

    def write_plots(self) -> int:
        """
            Plot scripts for every experiment table found in the output folder
        """
        tables = {}
        for kind in PLOTTED_KINDS:
            path = os.path.join(self.dirs["tables"], f"{kind}.csv")
            if os.path.exists(path):
                tables[kind] = read_table(path)

        if not tables:
            self.logger.warning(f"No experiment tables in {self.dirs['tables']}")
            return EXIT_OK

        emit_plots(tables, self.dirs["plots"])
        return EXIT_OK

    def execute(self) -> int:
        """
            Dispatch the sub command

            Returns:
                The process exit code
        """
        if self.command == "single":
            return self.run_single()
        if self.command == "plots":
            return self.write_plots()
        return self.run_sweep()


def start_execution(argv=None):
    """
        Parse arguments and run the emigdsw application
    """
    # Parse all options for emigdsw
    options = parse_args(argv)
    set_log_level(options["log"])

    try:
        code = EmiGdsw(options).execute()
    except ConfigError as exception:
        LOGGER.error(f"{Fore.RED}Bad configuration{Fore.RESET}: {exception}")
        code = EXIT_CONFIG
    except EmiGdswError as exception:
        LOGGER.error(f"{Fore.RED}{type(exception).__name__}{Fore.RESET}: {exception}")
        code = EXIT_FAILED_RUNS

    sys.exit(code)


if __name__ == "__main__":

    start_execution()
