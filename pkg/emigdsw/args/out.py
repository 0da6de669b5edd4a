"""
    Where the outputs go
"""
from emigdsw.args.argument import Argument
from emigdsw.conf import DEFAULT_OUT_DIR


class OutArg(Argument):
    def register_argument(self, parser):
        parser.add_argument(
            "--out",
            action="store",
            dest="out",
            help="The output directory (tables, plots, snapshots and the results db)",
            default=DEFAULT_OUT_DIR,
        )

    def process_argument(self, args, options: dict):
        options["out"] = args.out
        return True
