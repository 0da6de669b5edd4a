"""
    Sweep overrides: random seed and the desk-scale cap
"""
from emigdsw.args.argument import Argument


class SeedArg(Argument):
    """
        Seed of the random conductivity distribution
    """

    def register_argument(self, parser):
        parser.add_argument(
            "--seed",
            action="store",
            type=int,
            dest="seed",
            help="Seed of the random conductivity distribution",
            default=None,
        )

    def process_argument(self, args, options: dict):
        """
            Process the argument into the options

            Returns:
                False for a negative seed
        """
        if args.seed is not None and args.seed < 0:
            print("The seed must be non-negative")
            return False

        options["seed"] = args.seed
        return True


class MaxCellsArg(Argument):
    """
        Cap on the cells per side of any sweep point
    """

    def register_argument(self, parser):
        parser.add_argument(
            "--max-cells",
            action="store",
            type=int,
            dest="max_cells",
            help="Largest number of cells per side a sweep may use",
            default=None,
        )

    def process_argument(self, args, options: dict):
        if args.max_cells is not None and args.max_cells < 1:
            print("--max-cells must be at least 1")
            return False

        options["max_cells"] = args.max_cells
        return True
