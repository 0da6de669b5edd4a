"""
    Which experiment to run
"""
from emigdsw.args.argument import Argument

COMMANDS = ("single", "scalability", "optimality", "tau-sweep", "robustness", "plots")


class CommandArg(Argument):
    """
        The positional sub command
    """

    def register_argument(self, parser):
        parser.add_argument(
            "command",
            action="store",
            choices=COMMANDS,
            help="single runs one simulation, the sweeps write a table per "
            "preconditioner and point, plots writes gnuplot scripts from the tables",
        )

    def process_argument(self, args, options: dict):
        options["command"] = args.command
        return True
