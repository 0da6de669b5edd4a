"""
    The tinydb results store
"""
import tempfile
import unittest

import numpy as np

from emigdsw.db.results_tiny_db import TinyResults
from emigdsw.errors import ConvergenceError


class TinyResultsTests(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.results = TinyResults(self.directory.name)

    def tearDown(self):
        self.results.close()
        self.directory.cleanup()

    def test_runs_are_plain(self):
        self.results.insert_run(
            {"experiment": "scalability", "cells": np.int64(4), "k2": np.float64(3.5), "iterations": np.nan}
        )

        (doc,) = self.results.runs()
        assert doc["cells"] == 4
        assert type(doc["cells"]) is int
        assert doc["k2"] == 3.5
        assert doc["iterations"] is None
        assert "time" in doc

    def test_runs_by_experiment(self):
        self.results.insert_run({"experiment": "scalability", "cells": 2})
        self.results.insert_run({"experiment": "tau_sweep", "tau": 0.1})
        self.results.insert_run({"experiment": "scalability", "cells": 4})

        assert [doc["cells"] for doc in self.results.runs("scalability")] == [2, 4]
        assert len(self.results.runs()) == 3
        assert self.results.runs("robustness") == []

    def test_errors(self):
        exception = ConvergenceError("PCG did not converge at step 3", step=3, residuals=[1.0])
        self.results.insert_error(exception, {"tau": np.float64(0.01), "preconditioner": "none"})

        (doc,) = self.results.errors()
        assert doc["type"] == "ConvergenceError"
        assert doc["msg"] == "PCG did not converge at step 3"
        assert doc["context"] == {"tau": 0.01, "preconditioner": "none"}

    def test_reopen(self):
        self.results.insert_run({"experiment": "single"})
        self.results.close()

        self.results = TinyResults(self.directory.name)
        assert len(self.results.runs("single")) == 1
