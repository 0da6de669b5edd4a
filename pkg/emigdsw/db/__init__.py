from abc import ABC, abstractmethod


class ResultsDatabase(ABC):
    """
        The results database layout. All result dbs must follow this model
        for plug and play capability.

    Properties:
            database     - The database instance.
            runs_table   - One document per sweep point.
            errors_table - One document per failed sweep point.
    """

    def __init__(self):
        raise NotImplementedError()

    @abstractmethod
    def register_tables(self):
        """
            Register the tables inside of the database

            Returns:
                A tuple of all the created/found tables in your database
        """
        raise NotImplementedError()

    @abstractmethod
    def insert_run(self, row: dict):
        """
            Insert the metrics of one run
        """
        raise NotImplementedError()

    @abstractmethod
    def insert_error(self, exception: Exception, context: dict = None):
        """
            Insert the exception of a failed run into the database.

            Args:
                exception - The exception being passed in
                context   - What was being run
        """
        raise NotImplementedError()

    @abstractmethod
    def runs(self, experiment: str = None) -> list:
        """
            All stored runs, optionally of one experiment only
        """
        raise NotImplementedError()

    @abstractmethod
    def errors(self) -> list:
        """
            All stored failures
        """
        raise NotImplementedError()
