"""
lfmkit is a numerics toolkit for the Lebesgue-Feynman measure.
Copyright (C) 2026 lfmkit developers.

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with this program.  If not, see <http://www.gnu.org/licenses/>.
"""

import sys
import logging
import argparse

from lfmkit.__version__ import __version__
from lfmkit.cli.registry import list_experiments
from lfmkit.cli.runner import run
from lfmkit.core import log
from lfmkit.core.lfmkitError import AssertionFailure, ConfigError

EXIT_PASS = 0
EXIT_ASSERTION = 1
EXIT_CONFIG = 2


def build_parser():
    parser = argparse.ArgumentParser(prog="lfmkit", description="Batch experiments on the Lebesgue-Feynman measure.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug output")
    commands = parser.add_subparsers(dest="command")

    run_parser = commands.add_parser("run", help="run the experiments of a configuration file")
    run_parser.add_argument("config", help="INI file with one section per experiment")
    run_parser.add_argument("--output-dir", default="results", help="directory of the result files")
    run_parser.add_argument("--seed", type=int, default=None, help="seed overriding the configuration")
    run_parser.add_argument("--jobs", type=int, default=1, help="quadrature worker threads per experiment")
    run_parser.add_argument("--timing", action="store_true", help="record wall time in the result files")
    run_parser.add_argument("--concurrent", action="store_true", help="run the experiments concurrently")
    run_parser.add_argument("--check-determinism", action="store_true",
                            help="run each experiment twice and fail on differing result hashes")

    commands.add_parser("list-experiments", help="list the built-in experiments")
    return parser


def _set_verbosity(count):
    if count >= 2:
        log.setLevel(logging.DEBUG)
    elif count == 1:
        log.setLevel(logging.INFO)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _set_verbosity(args.verbose)

    if args.command == "list-experiments":
        entries = list_experiments()
        width = max(len(name) for name, _ in entries)
        for name, description in entries:
            print("{}  {}".format(name.ljust(width), description))
        return EXIT_PASS

    if args.command == "run":
        try:
            return run(args.config, output_dir=args.output_dir, seed=args.seed, jobs=args.jobs, timing=args.timing,
                       concurrent=args.concurrent, check_determinism=args.check_determinism)
        except ConfigError as err:
            for message in err.errors:
                print("config error: {}".format(message), file=sys.stderr)
            return EXIT_CONFIG
        except AssertionFailure as err:
            print("assertion failure: {}".format(err), file=sys.stderr)
            return EXIT_ASSERTION

    parser.print_help(sys.stderr)
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
