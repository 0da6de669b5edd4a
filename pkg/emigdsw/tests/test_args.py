"""
    Command line parsing
"""
import os
import tempfile
import unittest

from emigdsw.args import parse_args
from emigdsw.conf import DEFAULT_OUT_DIR


class ParseArgsTests(unittest.TestCase):
    def test_defaults(self):
        options = parse_args(["single"])

        assert options["command"] == "single"
        assert options["config"] is None
        assert options["out"] == DEFAULT_OUT_DIR
        assert options["precond"] is None
        assert options["coarse"] is None
        assert options["seed"] is None
        assert options["max_cells"] is None
        assert options["log"] == "INFO"

    def test_overrides(self):
        with tempfile.TemporaryDirectory() as directory:
            config = os.path.join(directory, "run.ini")
            open(config, "w").close()

            options = parse_args(
                [
                    "tau-sweep",
                    "--config", config,
                    "--out", directory,
                    "--precond", "as",
                    "--coarse", "vertex-edge",
                    "--seed", "3",
                    "--max-cells", "4",
                    "--log", "debug",
                ]
            )

        assert options["command"] == "tau-sweep"
        assert options["config"] == config
        assert options["precond"] == "as"
        assert options["coarse"] == "vertex-edge"
        assert options["seed"] == 3
        assert options["max_cells"] == 4
        assert options["log"] == "DEBUG"

    def test_rejected_values(self):
        for argv in (
            ["single", "--log", "loud"],
            ["single", "--seed", "-1"],
            ["single", "--max-cells", "0"],
            ["single", "--config", "/nonexistent/run.ini"],
            ["single", "--precond", "ilu"],
            ["weak-scaling"],
        ):
            with self.subTest(argv=argv):
                with self.assertRaises(SystemExit):
                    parse_args(argv)
