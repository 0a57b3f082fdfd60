from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Any, Sequence

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__, catalog, codec, exceptions, logger, ops  # noqa: F401
from .preferences import Preferences, set_log_level

log = logger.get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_INCONSISTENCY = 4


@dataclass(frozen=True)
class CommandRequest:
    subcommand: str
    inputs: tuple[Path, ...] = ()
    output: Path | None = None
    seed: int | None = None
    options: dict[str, Any] = field(default_factory=dict)


def build_parser() -> argparse.ArgumentParser:
    """
    Argument parser with one subcommand per registered command.
    """
    parser = argparse.ArgumentParser(
        prog="uniserial",
        description="Construct, verify and classify uniserial representations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug output")
    verbosity.add_argument("--quiet", action="store_true", help="Log errors only")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default=None, help="Output JSON file, stdout by default")

    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for name, command in catalog.commands.items():
        subparser = subparsers.add_parser(name, parents=[common], help=command.label)
        command.add_arguments(subparser)
    return parser


def make_request(args: argparse.Namespace) -> CommandRequest:
    """
    Convert parsed arguments into a request for the selected command.
    """
    command = catalog.commands[args.subcommand]
    values = vars(args).copy()
    inputs = []
    for name in command.input_arguments:
        value = values.pop(name, None)
        if value is not None:
            inputs.append(Path(value))

    output = values.pop("output", None)
    seed = values.pop("seed", None)
    for name in ("subcommand", "verbose", "quiet"):
        values.pop(name, None)

    return CommandRequest(
        subcommand=args.subcommand,
        inputs=tuple(inputs),
        output=Path(output) if output else None,
        seed=seed,
        options=values,
    )


def _write(report: Any, output: Path | None):
    text = codec.dumps(report)
    if output is None:
        sys.stdout.write(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
    log.info(f"Wrote {output}")


def run(request: CommandRequest) -> int:
    """
    Execute a request, write its JSON report and return the exit status.

    Args:
        request (CommandRequest)

    Returns:
        int: 0 success, 2 input error, 3 domain error, 4 inconsistency
    """
    command_cls = catalog.commands.get(request.subcommand)
    if command_cls is None:
        log.error(f"Unknown subcommand {request.subcommand}")
        return EXIT_INPUT

    if request.seed is None:
        request = CommandRequest(
            request.subcommand,
            request.inputs,
            request.output,
            Preferences.this().seed,
            request.options,
        )

    if not command_cls.poll(request):
        log.error(f"Invalid arguments for {request.subcommand}")
        return EXIT_INPUT

    log.debug(f"Running {request.subcommand} on {[str(p) for p in request.inputs]}")
    try:
        report = command_cls().execute(request)
    except exceptions.InputException as e:
        log.error(f"Input error: {e}")
        return EXIT_INPUT
    except exceptions.ExtensionRefusedException as e:
        log.error(f"Refused: {e}")
        _write(e.to_dict(), request.output)
        return EXIT_DOMAIN
    except exceptions.DomainException as e:
        log.error(f"Domain error: {e}")
        return EXIT_DOMAIN
    except exceptions.InconsistencyException as e:
        log.critical(f"Inconsistency: {e}")
        return EXIT_INCONSISTENCY

    try:
        _write(report, request.output)
    except OSError as e:
        log.error(f"Cannot write {request.output}: {e}")
        return EXIT_INPUT
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry point for the CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        prefs = Preferences.this()
    except exceptions.InputException as e:
        log.error(f"Configuration error: {e}")
        return EXIT_INPUT

    set_log_level(prefs)
    if args.verbose:
        logger.set_handler_levels("console", logging.DEBUG)
    elif args.quiet:
        logger.set_handler_levels("console", logging.ERROR)

    return run(make_request(args))


if __name__ == "__main__":
    sys.exit(main())
