"""Command-line entry point: ``hodgeseq <command> [options]``."""

import argparse
import sys
from typing import Optional, Sequence

import numpy as np
from pydantic import ValidationError

from core.errors import HodgeSeqError, InputError, NumericalError, VerificationFailed
from core.job_config import JobConfig
from core.logger import configure_root_logger, get_logger
from core.settings import settings
from services.export import write_csv, write_json
from services.hodge_service import HodgeService, hodge_service

logger = get_logger("cli")

# Commands whose artifact is always a JSON document
JSON_ONLY = ("build", "verify", "ingest")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("complex and weights")
    group.add_argument("--complex", dest="complex_path", metavar="FILE",
                       help="Complex description JSON (looked up in the example directory too)")
    group.add_argument("--weights", dest="weights_path", metavar="FILE", help="Weights JSON")
    group.add_argument("--no-augmentation", dest="augmented", action="store_false",
                       help="Drop the empty cell of dimension -1")
    group.add_argument("--cell-budget", type=int, metavar="N",
                       help=f"Cells allowed per dimension (default {settings.CELL_BUDGET})")

    group = common.add_argument_group("numerics")
    group.add_argument("--tol", type=float, metavar="T", help="Verification tolerance")
    group.add_argument("--cluster-tol", type=float, metavar="T",
                       help="Relative gap separating eigenvalue clusters")

    group = common.add_argument_group("output")
    group.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="Artifact format (default %(default)s)")
    group.add_argument("--out", metavar="FILE", help="Write the artifact here instead of stdout")
    verbosity = group.add_mutually_exclusive_group()
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Only log warnings and errors")
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug detail")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="hodgeseq",
        description="Hodge Laplacians of weighted sequence and simplicial complexes.",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    commands.add_parser("build", parents=[common],
                        help="Enumerate the cells of a complex")

    sub = commands.add_parser("laplacian", parents=[common], help="Dense matrix of L_n")
    sub.add_argument("--dim", dest="dims", required=True, metavar="N")
    sub.add_argument("--part", choices=("full", "up", "down"), default="full")

    sub = commands.add_parser("spectrum", parents=[common], help="Eigenvalue clusters of L_n")
    sub.add_argument("--dims", metavar="RANGE", help="e.g. 0..2 (default: every dimension)")

    sub = commands.add_parser("decompose", parents=[common], help="Hodge decomposition of a cochain")
    sub.add_argument("--dim", dest="dims", required=True, metavar="N")
    sub.add_argument("--cochain", dest="cochain_path", required=True, metavar="FILE",
                     help='JSON map {"cell": value}; unlisted cells are zero')

    sub = commands.add_parser("verify", parents=[common], help="Check a closed-form result")
    sub.add_argument("--theorem", required=True,
                     choices=("seq-spectrum", "simp-identity", "hodge", "scaling"))
    sub.add_argument("--dims", metavar="RANGE")
    sub.add_argument("--base-vertex", type=int, metavar="ID")
    sub.add_argument("--samples", type=int, default=100, help="Random cochains for --theorem hodge")
    sub.add_argument("--seed", type=int, default=0)

    sub = commands.add_parser("embed", parents=[common], help="Spectral coordinates of the cells")
    sub.add_argument("--dim", dest="dims", required=True, metavar="N")
    sub.add_argument("--components", type=int, default=2, metavar="D")
    sub.add_argument("--scaling", choices=("none", "inverse-sqrt-eigenvalue"), default="none")

    sub = commands.add_parser("ingest", parents=[common], help="Fit a distribution to a corpus")
    sub.add_argument("corpus_path", metavar="CORPUS",
                     help="Newline-delimited sequences of '.'-separated tokens")
    sub.add_argument("--max-dim", type=int, required=True, metavar="N")
    sub.add_argument("--smoothing", type=float, default=0.0)
    return parser


def _job_arguments(args: argparse.Namespace) -> dict:
    values = {k: v for k, v in vars(args).items() if k not in ("quiet", "verbose")}
    return {k: v for k, v in values.items() if v is not None}


def _emit(job: JobConfig, result) -> None:
    if result.table is not None and job.format == "csv" and job.command not in JSON_ONLY:
        header, rows = result.table
        write_csv(header, rows, job.out)
    else:
        write_json(result.document, job.out)


def run(argv: Optional[Sequence[str]] = None, service: Optional[HodgeService] = None) -> int:
    """Parse ``argv``, run one job and return the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.quiet:
        configure_root_logger("WARNING")
    elif args.verbose:
        configure_root_logger("DEBUG")

    service = service or hodge_service
    try:
        job = JobConfig.from_arguments(_job_arguments(args))
        result = service.run(job)
        _emit(job, result)
        if not result.passed:
            raise VerificationFailed(f"{job.theorem} checks failed; see the report",
                                     "spectral-analysis")
        return 0
    except HodgeSeqError as e:
        print(e.diagnostic(), file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(InputError(str(e.errors()[0]["msg"]), "cli").diagnostic(), file=sys.stderr)
        return InputError.exit_code
    except OSError as e:
        print(InputError(f"{e.filename or ''}: {e.strerror}", "cli").diagnostic(), file=sys.stderr)
        return InputError.exit_code
    except np.linalg.LinAlgError as e:
        error = NumericalError(str(e), "hodge-core")
        print(error.diagnostic(), file=sys.stderr)
        return error.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
