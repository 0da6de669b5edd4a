"""
    Turn the experiment tables into wide data files and gnuplot scripts
"""
import os

import pandas as pd

from emigdsw.conf import create_logger
from emigdsw.data import write_table
from emigdsw.errors import PlotError
from emigdsw.experiments.sweep import (OPTIMALITY, ROBUSTNESS, SCALABILITY,
                                       SWEEP_KEYS, TAU_SWEEP)

LOGGER = create_logger(__name__, "INFO")

PLOTTED_KINDS = (SCALABILITY, OPTIMALITY, TAU_SWEEP, ROBUSTNESS)

LABELS = {"gdsw": "GDSW", "as": "AS", "none": "CG"}

X_AXIS = {
    SCALABILITY: ("cells", "cells per side"),
    OPTIMALITY: ("h_ratio", "H/h"),
    TAU_SWEEP: ("tau", "time step (ms)"),
}


def _require(table: pd.DataFrame, kind: str):
    needed = SWEEP_KEYS[kind] + ["preconditioner", "k2", "iterations"]
    missing = [column for column in needed if column not in table.columns]
    if missing:
        raise PlotError(f"The {kind} table lacks the columns {missing}")


def wide_table(table: pd.DataFrame, index) -> pd.DataFrame:
    """
        One row per sweep point, it_<precond> and k2_<precond> columns

        Args:
            table - A long experiment table
            index - The sweep key column(s)

        Returns:
            The wide table, points in their original order
    """
    wide = table.pivot_table(
        index=index, columns="preconditioner", values=["iterations", "k2"], sort=False
    )
    wide.columns = [
        f"{'it' if metric == 'iterations' else 'k2'}_{precond}" for metric, precond in wide.columns
    ]
    return wide.reset_index()


def _preconds(wide: pd.DataFrame) -> list:
    return [column[3:] for column in wide.columns if column.startswith("it_")]


def _series(data_file: str, x_column: int, wide: pd.DataFrame, metric: str, preconds: list) -> str:
    clauses = [
        f"'{data_file}' using {x_column}:\"{metric}_{precond}\" with linespoints "
        f"title '{LABELS.get(precond, precond)}'"
        for precond in preconds
        if f"{metric}_{precond}" in wide.columns
    ]
    return ", \\\n     ".join(clauses)


def _preamble(output: str) -> list:
    return [
        "set terminal pngcairo size 1200,900",
        f"set output '{output}'",
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set grid",
    ]


def scalability_script(wide: pd.DataFrame, data_file: str, output: str) -> str:
    """
        Four panels: GDSW iterations, AS/CG iterations, GDSW k2, AS/CG k2
    """
    others = [p for p in _preconds(wide) if p != "gdsw"]
    lines = _preamble(output) + ["set xlabel 'cells per side'", "set multiplot layout 2,2"]
    panels = [
        ("GDSW iterations", "it", ["gdsw"]),
        ("AS/CG iterations", "it", others),
        ("GDSW k2", "k2", ["gdsw"]),
        ("AS/CG k2", "k2", others),
    ]
    for title, metric, preconds in panels:
        series = _series(data_file, 1, wide, metric, preconds)
        lines.append(f"set title '{title}'")
        lines.append(f"plot {series}" if series else "plot NaN notitle")
    lines.append("unset multiplot")
    return "\n".join(lines) + "\n"


def line_script(kind: str, wide: pd.DataFrame, data_file: str, output: str) -> str:
    """
        Two panels, iterations and k2 against the sweep key
    """
    column, label = X_AXIS[kind]
    x_column = list(wide.columns).index(column) + 1
    lines = _preamble(output) + [f"set xlabel '{label}'"]
    if kind == TAU_SWEEP:
        lines.append("set logscale x")
    lines.append("set multiplot layout 1,2")
    for title, metric in (("iterations", "it"), ("k2", "k2")):
        if metric == "k2":
            lines.append("set logscale y")
        lines.append(f"set title '{title}'")
        lines.append(f"plot {_series(data_file, x_column, wide, metric, _preconds(wide))}")
    lines.append("unset multiplot")
    return "\n".join(lines) + "\n"


def robustness_script(data_files: dict, wide_tables: dict, output: str) -> str:
    """
        Grouped bars over alpha, one row of panels (iterations, k2) per distribution
    """
    lines = _preamble(output) + [
        "set style data histogram",
        "set style histogram clustered gap 1",
        "set style fill solid 0.8 border -1",
        "set xlabel 'alpha'",
        f"set multiplot layout {len(data_files)},2",
    ]
    for dist, data_file in data_files.items():
        wide = wide_tables[dist]
        for title, metric in (("iterations", "it"), ("k2", "k2")):
            bars = [
                f"'{data_file}' using \"{metric}_{precond}\":xtic(1) title '{LABELS.get(precond, precond)}'"
                for precond in _preconds(wide)
            ]
            lines.append("set logscale y" if metric == "k2" else "unset logscale y")
            lines.append(f"set title '{dist} {title}'")
            lines.append("plot " + ", \\\n     ".join(bars))
    lines.append("unset multiplot")
    return "\n".join(lines) + "\n"


def _write_script(path: str, text: str) -> str:
    with open(path, "w") as script:
        script.write(text)
    return path


def emit_plots(tables: dict, plots_dir: str) -> list:
    """
        Write gnuplot scripts and their wide data files

        Args:
            tables    - Experiment kind -> long table (as written by run_experiment)
            plots_dir - Where the scripts and data go

        Returns:
            The paths written
    """
    os.makedirs(plots_dir, exist_ok=True)
    written = []

    for kind, table in tables.items():
        if kind not in PLOTTED_KINDS:
            LOGGER.debug(f"No plot for {kind} tables")
            continue
        if table is None or table.empty:
            LOGGER.warning(f"The {kind} table is empty, no plot written")
            continue
        _require(table, kind)

        if kind == ROBUSTNESS:
            data_files, wide_tables = {}, {}
            for dist, group in table.groupby("distribution", sort=False):
                wide = wide_table(group, "alpha")
                data_file = os.path.join(plots_dir, f"{kind}_{dist}.csv")
                written.append(write_table(wide, data_file))
                data_files[dist] = os.path.basename(data_file)
                wide_tables[dist] = wide
            script = robustness_script(data_files, wide_tables, f"{kind}.png")
        else:
            wide = wide_table(table, SWEEP_KEYS[kind])
            data_file = os.path.join(plots_dir, f"{kind}.csv")
            written.append(write_table(wide, data_file))
            name = os.path.basename(data_file)
            if kind == SCALABILITY:
                script = scalability_script(wide, name, f"{kind}.png")
            else:
                script = line_script(kind, wide, name, f"{kind}.png")

        written.append(_write_script(os.path.join(plots_dir, f"{kind}.gp"), script))
        LOGGER.info(f"Wrote the {kind} plot script to {plots_dir}")

    return written
