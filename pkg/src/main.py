# Copyright 2026 cuntz-lab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Command-line interface"""

import argparse
import logging
import os
import sys

from cuntz_lab import analysis, commands, constants, sweeps

logger = logging.getLogger(name=__name__)
LOG_FMT = '%(asctime)s.%(msecs)03d %(levelname)s %(module)s - %(funcName)s: %(message)s'


def _common_parser() -> argparse.ArgumentParser:
    """Flags shared by every command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out",
                        type=str,
                        default=None,
                        help=f"""
            Report file. Defaults to {constants.REPORT_FILE}, or
            {constants.REPORT_CSV_FILE} with --format csv
        """)
    common.add_argument("--format",
                        dest="fmt",
                        choices=[analysis.FORMAT_JSON, analysis.FORMAT_CSV],
                        default=analysis.FORMAT_JSON,
                        help="Report format")
    common.add_argument("--seed",
                        type=int,
                        default=0,
                        help="Seed of every randomised computation")
    common.add_argument("--dry-run",
                        action="store_true",
                        default=False,
                        help="Only parse and validate the input files")
    common.add_argument("--rank-tol", type=float, help="Rank tolerance")
    common.add_argument("--hermitian-tol",
                        type=float,
                        help="Tolerance of the self-adjointness check")
    common.add_argument("--psd-tol",
                        type=float,
                        help="Tolerance of the positivity check")
    common.add_argument("--projection-tol",
                        type=float,
                        help="Tolerance of projection and clutch checks")
    common.add_argument("--witness-restarts",
                        type=int,
                        help="Restarts of the witness search")
    common.add_argument("--witness-iters",
                        type=int,
                        help="Iterations per witness restart")
    common.add_argument("--constant-N",
                        dest="constant_N",
                        type=int,
                        help="Constant N of the delta schedule and of slow "
                        "dimension growth")
    common.add_argument("--q-max",
                        type=int,
                        help="Largest q of the K0 divisibility check")
    return common


def get_cmdline_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser()
    common = _common_parser()

    subparsers = parser.add_subparsers(dest='command')

    # Comparison of two positive fields
    compare_parser = subparsers.add_parser(
        "compare",
        parents=[common],
        help="certify a <= b by the rank gap criterion")
    compare_parser.add_argument("--a", type=str, help="Field file of a")
    compare_parser.add_argument("--b", type=str, help="Field file of b")
    compare_parser.add_argument("--dims",
                                type=str,
                                help="Local covering dimension file")
    compare_parser.add_argument("--space",
                                type=str,
                                help="""
            Space file. Without it the space is made of the point ids of
            the two fields
        """)
    compare_parser.add_argument("--traces",
                                type=str,
                                help="Trace file for the strict comparison "
                                "gap")
    compare_parser.add_argument("--witness",
                                action="store_true",
                                default=None,
                                help="Also run the numerical witness search")
    compare_parser.add_argument("--dump-witness",
                                type=str,
                                help="Write the witness field to this file")

    rc_parser = subparsers.add_parser(
        "rc-bound",
        parents=[common],
        help="radius of comparison bound of a decomposition")
    rc_parser.add_argument("--decomp",
                           type=str,
                           help="Decomposition file")
    rc_parser.add_argument("--amplify",
                           type=int,
                           help="Matrix amplification M_m")
    rc_parser.add_argument("--eps",
                           type=float,
                           help="Also report the delta0 needed to reach eps")

    sdg_parser = subparsers.add_parser(
        "sdg-check",
        parents=[common],
        help="slow dimension growth of an inductive sequence")
    sdg_parser.add_argument("--sequence", type=str, help="Sequence file")
    sdg_parser.add_argument("--N", type=int, help="Growth constant")
    sdg_parser.add_argument("--i",
                            type=int,
                            help="Index the witness j0 must exceed")

    villadsen_parser = subparsers.add_parser(
        "villadsen",
        parents=[common],
        help="stage invariants of a Villadsen-type limit")
    villadsen_parser.add_argument("--params",
                                  type=str,
                                  help="Parameter file")
    villadsen_parser.add_argument("--stages",
                                  type=int,
                                  help="Last stage to tabulate and validate")
    villadsen_parser.add_argument("--tol",
                                  type=str,
                                  help="Convergence tolerance, a rational")
    villadsen_parser.add_argument("--eta",
                                  type=str,
                                  help="Enables the obstruction checks")
    villadsen_parser.add_argument("--rank-a",
                                  type=int,
                                  help="Rank of a in the obstruction checks")
    villadsen_parser.add_argument("--i", type=int, help="Source stage")
    villadsen_parser.add_argument("--j", type=int, help="Target stage")
    villadsen_parser.add_argument("--morita",
                                  type=str,
                                  help="""
            Radius s of another algebra, checked for a Morita-compatible
            pair of matrix sizes against target_r
        """)

    intertwine_parser = subparsers.add_parser(
        "intertwine",
        parents=[common],
        help="intertwining defect between cube simplices")
    intertwine_parser.add_argument("--N1", type=int)
    intertwine_parser.add_argument("--M1", type=int)
    intertwine_parser.add_argument("--N2", type=int)
    intertwine_parser.add_argument("--measure",
                                   type=str,
                                   help="Measure file; seeded product "
                                   "measures are drawn without it")
    intertwine_parser.add_argument("--samples", type=int)
    intertwine_parser.add_argument("--support",
                                   type=int,
                                   help="Support size of each marginal")

    semigroup_parser = subparsers.add_parser(
        "semigroup",
        parents=[common],
        help="order embedding into the semigroup model")
    semigroup_parser.add_argument("--instances", type=int)
    semigroup_parser.add_argument("--n", type=int, help="Matrix size")

    ell_parser = subparsers.add_parser(
        "ell",
        parents=[common],
        help="binned spectral invariant of a field")
    ell_parser.add_argument("--field", type=str, help="Field file")
    ell_parser.add_argument("--space", type=str, help="Space file")
    ell_parser.add_argument("--traces", type=str, help="Trace file")
    ell_parser.add_argument("--other",
                            type=str,
                            help="Second field to compare invariants with")
    ell_parser.add_argument("--bins", type=int)

    kit_parser = subparsers.add_parser("kit-test",
                                       parents=[common],
                                       help="run the seeded property sweeps")
    kit_parser.add_argument("--sweeps",
                            nargs="+",
                            choices=list(sweeps.ALL_SWEEPS),
                            help="Sweeps to run, all by default")
    kit_parser.add_argument("--instances",
                            type=int,
                            help="Instances of every randomised sweep")

    grid_parser = subparsers.add_parser("grid",
                                        parents=[common],
                                        help="build a sampled cube product")
    grid_parser.add_argument("--dims",
                             dest="cube_dims",
                             nargs="+",
                             type=int,
                             help="Cube dimensions d1 d2 ...")
    grid_parser.add_argument("--resolution",
                             type=int,
                             help="Sample intervals per axis")
    grid_parser.add_argument("--label", type=str)

    return parser


def set_logging_level() -> None:
    if os.environ.get(constants.ENV_LOGLEVEL) == "debug":
        level = logging.DEBUG
    else:
        level = logging.INFO
    logging.basicConfig(
        level=level,
        format=LOG_FMT,
        datefmt='%Y-%m-%d %H:%M:%S',
    )
    logger.debug("Logging level set")


def main() -> int:
    set_logging_level()

    parser = get_cmdline_parser()
    args = parser.parse_args()

    if args.command is None:
        parser.print_help()
        return_code = constants.APP_EXIT_ERROR
    else:
        logger.info(f"Running cuntz-lab {args.command}")
        return_code = commands.run(commands.config_from_args(args))
        logger.info(f"Ending cuntz-lab {args.command}")
    sys.exit(return_code)


if __name__ == "__main__":
    main()
