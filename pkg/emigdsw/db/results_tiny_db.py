"""
    Results db utilizing tinydb
"""
import os
from datetime import datetime

import numpy as np
from tinydb import Query, TinyDB, database

from emigdsw.db import ResultsDatabase

Table = database.Table


def _plain(value):
    """
        Convert numpy scalars and NaN to JSON friendly values
    """
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and np.isnan(value):
        return None
    return value


class TinyResults(ResultsDatabase):
    """
        Results database implementation using tinydb! tinydb is written entirely
        in python, so the sweep provenance needs no external database software.

    Properties:
            database     - The tinydb database instance.
            runs_table   - The runs table.
            errors_table - The errors table.
    """

    def __init__(self, db_dir: str):
        # Create the database/connection to it
        os.makedirs(db_dir, exist_ok=True)
        self.database: database = TinyDB(os.path.join(db_dir, "results.json"))

        # Obtain tables from db
        runs, errors = self.register_tables()

        # Setup class accessibility to tables
        self.runs_table: Table = runs
        self.errors_table: Table = errors

    def register_tables(self) -> (Table, Table):
        """
            Register the tables inside of the TinyDB database

            Returns:
                A tuple of all the created/found tables in your database
        """
        runs: Table = self.database.table("Runs")
        errors: Table = self.database.table("Errors")

        return runs, errors

    def insert_run(self, row: dict):
        """
            Insert the metrics of one run into the runs table
        """
        doc: dict = {key: _plain(value) for key, value in row.items()}
        doc["time"] = datetime.today().isoformat()
        self.runs_table.insert(doc)

    def insert_error(self, exception: Exception, context: dict = None):
        """
            Insert the exception into the database.

            Args:
                exception - The exception being passed in
                context   - What was being run
        """
        doc: dict = {
            "type": type(exception).__name__,
            "msg": str(exception),
            "time": datetime.today().isoformat(),
        }
        if context:
            doc["context"] = {key: _plain(value) for key, value in context.items()}
        self.errors_table.insert(doc)

    def runs(self, experiment: str = None) -> list:
        if experiment is None:
            return self.runs_table.all()
        RunQ = Query()
        return self.runs_table.search(RunQ.experiment == experiment)

    def errors(self) -> list:
        return self.errors_table.all()

    def close(self):
        self.database.close()
