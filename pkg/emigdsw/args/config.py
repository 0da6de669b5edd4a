"""
    The run config file
"""
import os

from emigdsw.args.argument import Argument


class ConfigArg(Argument):
    """
        Path to an INI style run config, defaults are used when absent
    """

    def register_argument(self, parser):
        """
            Register the argument inside of the parser

            Args:
                parser - The argument parser object we're registering
        """
        parser.add_argument(
            "--config",
            action="store",
            dest="config",
            help="The run config file ([geometry], [simulation], [ionic], [solver], [experiment])",
            default=None,
        )

    def process_argument(self, args, options: dict):
        """
            Process the argument into the options

            Returns:
                False when the file doesn't exist
        """
        if args.config and not os.path.isfile(args.config):
            print(f"Couldn't find the run config {args.config}")
            return False

        options["config"] = args.config
        return True
