"""
    Preconditioner and coarse space overrides
"""
from emigdsw.args.argument import Argument


class PrecondArg(Argument):
    """
        Restrict a run (or every sweep point) to one preconditioner
    """

    def register_argument(self, parser):
        """
            Register the argument inside of the parser

            Args:
                parser - The argument parser object we're registering
        """
        parser.add_argument(
            "--precond",
            action="store",
            choices=("gdsw", "as", "none"),
            dest="precond",
            help="The preconditioner, overriding [solver] precond and the sweep list",
            default=None,
        )

    def process_argument(self, args, options: dict):
        options["precond"] = args.precond
        return True


class CoarseArg(Argument):
    """
        The GDSW coarse space
    """

    def register_argument(self, parser):
        parser.add_argument(
            "--coarse",
            action="store",
            choices=("vertex", "vertex-edge"),
            dest="coarse",
            help="vertex uses the subdomain vertex functions only, vertex-edge adds the edge functions",
            default=None,
        )

    def process_argument(self, args, options: dict):
        options["coarse"] = args.coarse
        return True
