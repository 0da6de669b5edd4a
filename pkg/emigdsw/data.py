"""
    Handle all file output within the codebase: tables, snapshots and matrices
"""
import os

import numpy as np
import pandas as pd
import scipy.io

from emigdsw.conf import create_logger

LOGGER = create_logger(__name__, "INFO")


def write_table(dataframe: pd.DataFrame, path: str, header: str = None) -> str:
    """
        Write a table to CSV, optionally preceded by "#" comment lines

        Args:
            dataframe - The table
            path      - The target file
            header    - Free text (usually the resolved run config) written as
                        comment lines before the column names

        Returns:
            The path written
    """
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as csv_file:
        if header:
            for line in header.splitlines():
                csv_file.write(f"# {line}\n" if line else "#\n")
        dataframe.to_csv(csv_file, index=False)

    LOGGER.debug(f"Wrote {len(dataframe)} rows to {path}")
    return path


def read_table(path: str) -> pd.DataFrame:
    """
        Read a table written by write_table, skipping the comment header
    """
    return pd.read_csv(path, comment="#")


def read_header(path: str) -> str:
    """
        The comment header of a table written by write_table
    """
    lines = []
    with open(path) as csv_file:
        for line in csv_file:
            if not line.startswith("#"):
                break
            lines.append(line[2:].rstrip("\n") if line.startswith("# ") else "")
    return "\n".join(lines)


def write_snapshot(snapshot: pd.DataFrame, directory: str, time: float, prefix: str = "u") -> str:
    """
        Write one (x, y, subdomain, u) snapshot as {prefix}_t{time}.csv
    """
    path = os.path.join(directory, f"{prefix}_t{time:g}.csv")
    return write_table(snapshot, path)


def membrane_frame(state, coupling, topology) -> pd.DataFrame:
    """
        The membrane state as (station, edge, kind, x, y, v, w) rows
    """
    coords = topology.coords[coupling.station_pair[:, 0]]
    kinds = np.array([edge.kind for edge in topology.edges], dtype=object)
    return pd.DataFrame(
        {
            "station": np.arange(coupling.n_stations),
            "edge": coupling.station_edge,
            "kind": kinds[coupling.station_edge] if len(kinds) else [],
            "x": coords[:, 0],
            "y": coords[:, 1],
            "v": state.v,
            "w": state.w,
        }
    )


def write_residuals(stats, path: str) -> str:
    """
        The residual history of one solve as (iteration, residual) rows
    """
    frame = pd.DataFrame(
        {"iteration": np.arange(len(stats.residuals)), "residual": stats.residuals}
    )
    return write_table(frame, path)


def write_matrix(matrix, path: str, comment: str = "") -> str:
    """
        Dump a symmetric sparse matrix in Matrix Market coordinate format
    """
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    scipy.io.mmwrite(path, matrix, comment=comment, symmetry="symmetric")
    return path if path.endswith(".mtx") else f"{path}.mtx"
