"""
    Global variables, logging and the run config file
"""
import configparser
import logging
import os

from colorama import init

from emigdsw.errors import ConfigError

# Init colorama for colors!
init()

# Get the root directory for emigdsw
ROOT_DIR = os.path.dirname(os.path.abspath(__file__))

# Where tables, plots, snapshots and the results db go unless --out says otherwise
DEFAULT_OUT_DIR = "emigdsw-out"

# Simulation defaults
DEFAULT_TAU = 0.05
DEFAULT_T_END = 5.0
DEFAULT_TOL = 1e-6
DEFAULT_SIGMA = 3e-3
DEFAULT_C_M = 1.0
DEFAULT_V_INIT = -85.0
DEFAULT_STIM_AMPLITUDE = 50.0
DEFAULT_STIM_DURATION = 1.0

# Typical cardiomyocyte length in cm, used to derive h when it is not given
DEFAULT_CELL_LENGTH = 0.01

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Every logger handed out by create_logger, so --log can reach all of them
_LOGGERS = {}


def create_logger(module_name: str, log_level: str) -> logging.Logger:
    """
        Create a logger object based on the pythons module name

        Args:
            module_name - The name of the module to create the logger for as.
            log_level   - The log level to be logging output at.

        Returns:
            A customized logger object for emigdsw logging
    """
    logger = logging.getLogger(module_name)
    logger.setLevel(log_level)

    if not logger.handlers:
        channel = logging.StreamHandler()
        channel.setLevel(log_level)
        channel.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(channel)
        logger.propagate = False

    _LOGGERS[module_name] = logger
    return logger


def set_log_level(log_level: str) -> None:
    """
        Set the level of every logger created through create_logger

        Args:
            log_level - One of DEBUG, INFO, WARNING, ERROR, CRITICAL
    """
    for logger in _LOGGERS.values():
        logger.setLevel(log_level)
        for handler in logger.handlers:
            handler.setLevel(log_level)


def create_output_dirs(out_dir: str) -> dict:
    """
        Create all directories needed for a run's outputs. Only creates the
        folders that don't exist yet.

        Args:
            out_dir - The root output directory

        Returns:
            A dictionary mapping folder names to their paths
    """
    folders = ["tables", "plots", "snapshots", "db"]
    paths = {}

    for folder in folders:
        path = os.path.join(out_dir, folder)
        os.makedirs(path, exist_ok=True)
        paths[folder] = path

    return paths


# Keys accepted in each section of the run config file, with their type and
# default. None means "derived" (see sim.config).
RUN_CONFIG_SCHEMA = {
    "geometry": {
        "n_cells_x": (int, 2),
        "n_cells_y": (int, 2),
        "elems_short": (int, 4),
        "elems_long": (int, None),
        "frame_elems": (int, None),
        "h": (float, None),
        "cell_length": (float, DEFAULT_CELL_LENGTH),
    },
    "simulation": {
        "tau": (float, DEFAULT_TAU),
        "t_end": (float, DEFAULT_T_END),
        "c_m": (float, DEFAULT_C_M),
        "v_init": (float, DEFAULT_V_INIT),
        "v_extracellular_init": (float, 0.0),
        "w_init": (float, 0.0),
        "stim_amplitude": (float, DEFAULT_STIM_AMPLITUDE),
        "stim_duration": (float, DEFAULT_STIM_DURATION),
        "stim_cells": (int, 1),
        "sigma": (float, DEFAULT_SIGMA),
        "sigma_extracellular": (float, DEFAULT_SIGMA),
        "dirichlet": (list, ["left"]),
        "zero_mean": (bool, False),
        "lumped_mass": (bool, False),
        "snapshot_times": (list, []),
        "activation_threshold": (float, -20.0),
    },
    "ionic": {
        "k": (float, 8.0),
        "a": (float, 0.15),
        "eps0": (float, 0.002),
        "mu1": (float, 0.2),
        "mu2": (float, 0.3),
        "v_rest": (float, DEFAULT_V_INIT),
        "v_amp": (float, 100.0),
        "i_scale": (float, None),
        "kappa_g": (float, 1.0),
        "time_scale": (float, 1.0),
    },
    "solver": {
        "precond": (str, "gdsw"),
        "coarse": (str, "vertex"),
        "tol": (float, DEFAULT_TOL),
        "maxit": (int, 5000),
        "overlap": (int, 1),
        "k2_method": (str, "lanczos"),
        "warm_start": (bool, False),
        "workers": (int, 1),
    },
    "experiment": {
        "kind": (str, "single"),
        "cells": (list, ["2", "4", "8", "12", "16"]),
        "lcy": (list, ["2", "3", "4", "5", "6"]),
        "taus": (list, ["0.005", "0.01", "0.02", "0.05", "0.1"]),
        "alphas": (list, ["1", "0.1", "0.01", "0.001", "0.0001"]),
        "distributions": (list, ["checkboard", "capsule", "random"]),
        "preconditioners": (list, ["gdsw", "as", "none"]),
        "seed": (int, 0),
        "max_cells": (int, 16),
        "workers": (int, 0),
    },
}


def _parse_value(section: str, key: str, raw: str):
    """
        Convert a raw config string to the type the schema asks for
    """
    kind, _ = RUN_CONFIG_SCHEMA[section][key]
    raw = raw.strip()

    if raw.lower() in ("auto", "none", "") and kind is not list:
        return None

    try:
        if kind is bool:
            if raw.lower() in ("1", "true", "yes", "on"):
                return True
            if raw.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if kind is list:
            return [item.strip() for item in raw.split(",") if item.strip()]
        return kind(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key} = {raw!r} is not a valid {kind.__name__}")


def default_run_config() -> dict:
    """
        The run config with every key at its default

        Returns:
            A dictionary of sections, each a dictionary of key to value
    """
    return {
        section: {key: (list(default) if isinstance(default, list) else default)
                  for key, (_, default) in keys.items()}
        for section, keys in RUN_CONFIG_SCHEMA.items()
    }


def load_run_config(path: str = None) -> dict:
    """
        Read a run config file on top of the defaults

        Args:
            path - The config file (INI style "key = value" sections). None
                   returns the defaults.

        Returns:
            A dictionary of sections, each a dictionary of key to typed value
    """
    sections = default_run_config()
    if path is None:
        return sections

    if not os.path.exists(path):
        raise ConfigError(f"Couldn't find the run config: {path}")

    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.read(path)

    for section in parser.sections():
        if section not in RUN_CONFIG_SCHEMA:
            raise ConfigError(f"Unknown section [{section}] in {path}")
        for key, raw in parser.items(section):
            if key not in RUN_CONFIG_SCHEMA[section]:
                raise ConfigError(f"Unknown key {key!r} in section [{section}]")
            sections[section][key] = _parse_value(section, key, raw)

    return sections


def render_run_config(sections: dict) -> str:
    """
        Render a resolved run config back into the file format

        Args:
            sections - The run config dictionary

        Returns:
            The config text, one "key = value" line per key
    """
    lines = []
    for section, keys in sections.items():
        lines.append(f"[{section}]")
        for key, value in keys.items():
            if isinstance(value, list):
                value = ",".join(str(item) for item in value)
            elif value is None:
                value = "auto"
            lines.append(f"{key} = {value}")
        lines.append("")
    return "\n".join(lines)
