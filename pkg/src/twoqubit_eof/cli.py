"""CLI commands for twoqubit-eof.

Records go to standard output as JSON lines; diagnostics go through logging
to standard error.

Exit codes:
    0  success
    1  usage or I/O error
    2  an input matrix failed validation (other matrices are still processed)
    3  verify found a formula violation
"""

import argparse
import logging
import sys
from collections.abc import Callable, Sequence

from pydantic import BaseModel, ValidationError

from twoqubit_eof import __version__
from twoqubit_eof.config import get_settings, parse_log_level
from twoqubit_eof.exceptions import MatrixFileError
from twoqubit_eof.oracle.sampling import RandomSpec, SamplingMethod, random_density_matrices
from twoqubit_eof.oracle.verify import merge_reports
from twoqubit_eof.schemas.matrix_file import (
    ParsedEntry,
    dump_matrix_file,
    parse_entries,
    read_matrix_file,
    to_matrix_file,
    write_matrix_file,
)
from twoqubit_eof.services.batch import (
    BatchResult,
    concurrence_record,
    decompose_record,
    eof_record,
    make_verify_record,
    run_batch,
)
from twoqubit_eof.services.bench import run_bench

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_VIOLATION = 3


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def emit(record: BaseModel) -> None:
    """Write one record to standard output."""
    sys.stdout.write(record.model_dump_json() + "\n")


def _load(args: argparse.Namespace) -> list[ParsedEntry]:
    return parse_entries(read_matrix_file(args.input), normalize=args.normalize)


def _finish(result: BatchResult) -> int:
    for record in result.records:
        emit(record)
    if result.has_violation:
        return EXIT_VIOLATION
    if result.failures:
        return EXIT_INVALID
    return EXIT_OK


def cmd_eof(args: argparse.Namespace) -> int:
    """Concurrence and entanglement of formation for every matrix of a file."""
    return _finish(run_batch(_load(args), eof_record, threads=args.threads))


def cmd_concurrence(args: argparse.Namespace) -> int:
    return _finish(run_batch(_load(args), concurrence_record, threads=args.threads))


def cmd_decompose(args: argparse.Namespace) -> int:
    """eof records carrying the optimal decomposition and its self-check."""
    return _finish(run_batch(_load(args), decompose_record, threads=args.threads))


def cmd_verify(args: argparse.Namespace) -> int:
    """Check the formula against sampled decompositions for every matrix."""
    if args.samples is not None and args.samples < 1:
        logger.error(f"--samples must be positive, got {args.samples}")
        return EXIT_USAGE
    worker = make_verify_record(args.samples, args.seed)
    result = run_batch(_load(args), worker, threads=args.threads)
    summary = merge_reports(record.report for record in result.records)
    logger.info(f"Verification summary: {summary.model_dump_json()}")
    return _finish(result)


def cmd_random(args: argparse.Namespace) -> int:
    """Write a seeded file of random density matrices."""
    try:
        spec = RandomSpec(method=args.method, rank=args.rank, count=args.count, seed=args.seed)
    except ValidationError as e:
        logger.error(f"Invalid random spec: {e}")
        return EXIT_USAGE

    matrices = random_density_matrices(spec)
    labels = [f"{spec.method.value}-r{spec.rank}-s{spec.seed}-{k}" for k in range(spec.count)]
    file = to_matrix_file(matrices, labels)
    if args.output == "-":
        sys.stdout.write(dump_matrix_file(file))
    else:
        write_matrix_file(args.output, file)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    """Time eof and decompose on a seeded workload."""
    if args.count < 1:
        logger.error(f"--count must be positive, got {args.count}")
        return EXIT_USAGE
    for summary in run_bench(args.count, args.seed, eof_only=args.eof_only):
        emit(summary)
    return EXIT_OK


def build_parser() -> ArgumentParser:
    settings = get_settings()

    parser = ArgumentParser(
        prog="twoqubit-eof",
        description="Entanglement of formation of two-qubit density matrices",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Override TWOQUBIT_EOF_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    def batch_command(
        name: str, func: Callable[[argparse.Namespace], int], help_text: str
    ) -> ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="Matrix file (JSON)")
        p.add_argument(
            "--threads", type=int, default=settings.threads, help="Worker threads"
        )
        p.add_argument(
            "--normalize",
            action="store_true",
            help="Rescale traces within [0.9, 1.1] to 1",
        )
        p.set_defaults(func=func)
        return p

    batch_command("eof", cmd_eof, "Concurrence and entanglement of formation")
    batch_command("concurrence", cmd_concurrence, "Concurrence and lambda spectrum")
    batch_command("decompose", cmd_decompose, "Optimal pure-state decomposition")
    verify = batch_command("verify", cmd_verify, "Check the formula by random sampling")
    verify.add_argument("--samples", type=int, default=None, help="Decompositions per matrix")
    verify.add_argument("--seed", type=int, default=settings.seed)

    rand = sub.add_parser("random", help="Generate random density matrices")
    rand.add_argument(
        "--method", choices=[m.value for m in SamplingMethod], default=SamplingMethod.GINIBRE.value
    )
    rand.add_argument("--rank", type=int, default=4)
    rand.add_argument("--count", type=int, default=1)
    rand.add_argument("--seed", type=int, default=settings.seed)
    rand.add_argument("output", help="Output file, or - for standard output")
    rand.set_defaults(func=cmd_random)

    bench = sub.add_parser("bench", help="Benchmark throughput")
    bench.add_argument("--count", type=int, default=1000)
    bench.add_argument("--seed", type=int, default=settings.seed)
    bench.add_argument("--eof-only", action="store_true", help="Skip the decompose stage")
    bench.set_defaults(func=cmd_bench)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse argv, run the command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        level = parse_log_level(args.log_level)
        if not isinstance(logging.getLevelName(level), int):
            parser.error(f"unknown log level {args.log_level!r}")
        logging.getLogger().setLevel(level)

    if getattr(args, "threads", 1) < 1:
        parser.error(f"--threads must be positive, got {args.threads}")
    if not 0 <= getattr(args, "seed", 0) < 2**64:
        parser.error(f"--seed must be in [0, 2**64), got {args.seed}")

    try:
        return args.func(args)
    except MatrixFileError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_USAGE
