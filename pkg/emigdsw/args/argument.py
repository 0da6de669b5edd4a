"""
    Every command line option is an Argument: it registers itself with the
    parser and moves its parsed value into the options dictionary
"""
from abc import ABC, abstractmethod


class Argument(ABC):
    """
        One command line option and its handler
    """

    @abstractmethod
    def register_argument(self, parser):
        """
            Add the option to an argparse parser
        """
        raise NotImplementedError()

    @abstractmethod
    def process_argument(self, args, options: dict) -> bool:
        """
            Validate the parsed value and store it in options

            Args:
                args    - The argparse namespace
                options - The options dictionary handed to the runner

            Returns:
                False if the value is unusable, the usage is printed then
        """
        raise NotImplementedError()
