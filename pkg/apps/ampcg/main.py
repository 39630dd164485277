"""Command-line entry point: `python -m apps.ampcg.main <command> ...`"""

import argparse
import sys
from pathlib import Path
from typing import NoReturn, Optional, Sequence

import structlog
from pydantic import ValidationError

from .controllers.command_controller import (
    EXIT_FAILED,
    cmd_enumerate,
    cmd_equiv,
    cmd_learn,
    cmd_sample,
    cmd_sep,
    cmd_verify,
)
from .core.config import settings
from .core.exceptions import AmpCgError, CliUsageError
from .core.logging_config import bind_command_context, configure_structlog
from .models.cli import CliConfig, OutputFormat

logger = structlog.get_logger(__name__)

COMMANDS = {
    "learn": cmd_learn,
    "sep": cmd_sep,
    "equiv": cmd_equiv,
    "sample": cmd_sample,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for "learned graph is not a CG"
    def error(self, message: str) -> NoReturn:
        raise CliUsageError(f"{self.prog}: {message}")


def _names(value: str) -> list[str]:
    return [x.strip() for x in value.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ampcg", description=settings.app_name)
    sub = parser.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="learn a chain graph from an oracle graph or a dataset")
    learn.add_argument("--graph", type=Path, help="CG file; its separations answer the queries")
    learn.add_argument("--data", type=Path, help="CSV dataset; Fisher-z tests answer the queries")
    learn.add_argument("--alpha", type=float, default=settings.default_alpha)
    learn.add_argument("-o", "--output", type=Path)
    learn.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.cg.value)

    sep = sub.add_parser("sep", help="test X ⊥ Y | Z in a graph")
    sep.add_argument("graph", type=Path)
    sep.add_argument("--x", type=_names, required=True, help="comma-separated node names")
    sep.add_argument("--y", type=_names, required=True)
    sep.add_argument("--z", type=_names, default=[])

    equiv = sub.add_parser("equiv", help="exit 0 iff two graphs are triplex-equivalent")
    equiv.add_argument("graph", type=Path)
    equiv.add_argument("other_graph", type=Path)

    sample = sub.add_parser("sample", help="draw a Gaussian dataset Markovian wrt a CG")
    sample.add_argument("graph", type=Path)
    sample.add_argument("-n", type=int, default=settings.default_sample_size)
    sample.add_argument("--seed", type=int, default=settings.default_seed)
    sample.add_argument("-o", "--output", type=Path)

    verify = sub.add_parser("verify", help="check a graph's local Markov conditions and/or the built-in fixtures")
    verify.add_argument("--graph", type=Path)
    verify.add_argument("--data", type=Path, help="check the conditions against Fisher-z tests on this dataset")
    verify.add_argument("--alpha", type=float, default=settings.default_alpha)
    verify.add_argument("--fixtures", action="store_true")

    enumerate_ = sub.add_parser("enumerate", help="print every CG over n nodes")
    enumerate_.add_argument("-n", type=int, required=True)
    return parser


def _report_error(error: AmpCgError) -> int:
    print(f"error: {error.message}", file=sys.stderr)
    return EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_structlog()
    try:
        args = vars(build_parser().parse_args(argv))
        command = args["command"]
        bind_command_context(command)
        try:
            config = CliConfig(**args)
        except ValidationError as e:
            raise CliUsageError(f"{command}: {e.errors()[0]['loc'][0]}: {e.errors()[0]['msg']}") from e
        return COMMANDS[command](config)
    except AmpCgError as e:
        logger.info("command_failed", error_code=e.error_code.value)
        return _report_error(e)
    except Exception as e:  # noqa: BLE001
        logger.exception("command_crashed")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
