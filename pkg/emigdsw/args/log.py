"""
    The log level
"""
from emigdsw.args.argument import Argument

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class LogArg(Argument):
    """
        Level of every emigdsw logger, per step solver output is DEBUG
    """

    def register_argument(self, parser):
        parser.add_argument(
            "--log",
            action="store",
            help=f"Set the log level. Can choose from: {list(LOG_LEVELS)}",
            dest="log",
            default="INFO",
        )

    def process_argument(self, args, options: dict):
        level = args.log.upper()
        if level not in LOG_LEVELS:
            print(f"Unknown log level {args.log}")
            return False

        options["log"] = level
        return True
