"""
    The argument registry
"""
import argparse

from emigdsw.args.command import CommandArg
from emigdsw.args.config import ConfigArg
from emigdsw.args.log import LogArg
from emigdsw.args.out import OutArg
from emigdsw.args.solver import CoarseArg, PrecondArg
from emigdsw.args.sweep import MaxCellsArg, SeedArg


def create_parser(argument_objects):
    """
        Create the argument parser with some default arguments

        Returns:
            The arguments
    """
    # Create the arg parser
    parser = argparse.ArgumentParser(
        prog="emigdsw",
        description="GDSW preconditioned simulations of the cell-by-cell cardiac model",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )

    for obj in argument_objects:
        obj.register_argument(parser)

    return parser


def parse_args(argv=None):
    """
        Parse the arguments of the arg parser
        Return the options that will be used to configure the run
    """
    # Argument objects
    argument_objects = [
        CommandArg(),
        ConfigArg(),
        OutArg(),
        PrecondArg(),
        CoarseArg(),
        SeedArg(),
        MaxCellsArg(),
        LogArg(),
    ]

    # Create the parser and parse the args
    parser = create_parser(argument_objects)
    parsed_args = parser.parse_args(argv)
    options = {}

    # Parse all of the options
    for obj in argument_objects:
        if not obj.process_argument(parsed_args, options):
            parser.print_usage()
            exit(1)

    return options
