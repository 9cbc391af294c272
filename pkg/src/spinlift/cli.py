"""
Batch command-line entry point.
"""

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, TextIO

from twisted.python import log

from spinlift import __version__
from spinlift.config import BOUND_ENV_VAR, Bounds
from spinlift.errors import (
    NonScalarDefect,
    ParseError,
    SchemaError,
    SizeBoundExceeded,
    SpinliftError,
)
from spinlift.handlers import CommandHandler
from spinlift.storage import dump_report, write_report

COMMANDS = ("pi1", "spin", "involution", "h2", "extension", "keylemma", "crossedhom", "sw", "selftest")
FORMATS = ("json", "text")

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2


@dataclass(frozen=True)
class JobConfig:
    """
    One CLI invocation.

    Attributes:
        command: One of COMMANDS
        input_path: Input document for the commands that read one
        seed: Seed for randomized checks
        bound: Group order bound from --bound or SPINLIFT_BOUND, None when unset
        trials: Number of randomized trials, command default when None
        output_format: json or text
        output_path: Report file; stdout when None
        debug: Enable debug logging
    """

    command: str
    input_path: Optional[Path] = None
    seed: int = 0
    bound: Optional[int] = None
    trials: Optional[int] = None
    output_format: str = "json"
    output_path: Optional[Path] = None
    debug: bool = False

    @property
    def bounds(self) -> Bounds:
        return Bounds() if self.bound is None else Bounds().with_group_order(self.bound)


def resolve_bound(flag: Optional[int], environ: Optional[Mapping[str, str]] = None) -> Optional[int]:
    """--bound wins over SPINLIFT_BOUND; None when neither is set."""
    if flag is not None:
        if flag < 0:
            raise ValueError("--bound must be non-negative")
        return flag
    environ = os.environ if environ is None else environ
    if not environ.get(BOUND_ENV_VAR):
        return None
    return Bounds.from_env(environ).group_order


def error_details(error: Exception) -> Dict[str, Any]:
    details: Dict[str, Any] = {"type": type(error).__name__, "message": str(error)}
    if isinstance(error, ParseError):
        details.update(path=error.path, line=error.line, column=error.column)
    elif isinstance(error, SchemaError):
        details.update(path=error.path, location=error.location)
    elif isinstance(error, SizeBoundExceeded):
        details.update(what=error.what, size=error.size, bound=error.bound)
    return details


def format_text(report: Dict[str, Any]) -> str:
    """A short human summary: one ``key: value`` line per top-level field."""
    lines: List[str] = []
    for key in sorted(report):
        value = report[key]
        if key == "sections":
            for section in value:
                lines.append(f"  {section['name']}: {section['passed']} passed, {section['failed']} failed")
                lines.extend(f"    {failure}" for failure in section["failures"])
        elif isinstance(value, list) and value and isinstance(value[0], str):
            lines.append(f"{key}:")
            lines.extend(f"  {item}" for item in value)
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


class SpinliftJobService:
    """
    Runs one batch job and writes its report.
    """

    def __init__(self, config: JobConfig, stream: Optional[TextIO] = None):
        self.config = config
        self.stream = stream if stream is not None else sys.stdout
        self.handler: Optional[CommandHandler] = None
        self.exit_code: Optional[int] = None

    def _header(self) -> Dict[str, Any]:
        return {"version": __version__, "command": self.config.command, "seed": self.config.seed}

    def start(self) -> int:
        """Run the job, emit the report and return the exit code."""
        config = self.config
        if config.debug:
            log.startLogging(sys.stderr, setStdout=False)
            logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)

        log.msg(f"Starting spinlift {config.command} (seed {config.seed})")
        report = self._header()
        try:
            self.handler = CommandHandler(
                bounds=config.bounds,
                seed=config.seed,
                trials=config.trials,
                max_order=config.bound,
                debug=config.debug,
            )
            code, body = self.handler.handle(config.command, config.input_path)
            report.update(body)
        except NonScalarDefect as e:
            log.err(e, f"Internal error in {config.command}")
            code = EXIT_INTERNAL
            report["error"] = error_details(e)
        except SpinliftError as e:
            log.msg(f"{config.command} failed validation: {e}")
            code = EXIT_INVALID
            report["error"] = error_details(e)
        except Exception as e:
            log.err(e, f"Internal error in {config.command}")
            code = EXIT_INTERNAL
            report["error"] = error_details(e)
        if "error" in report:
            print(f"{report['error']['type']}: {report['error']['message']}", file=sys.stderr)

        try:
            self._emit(report)
        except (OSError, RuntimeError) as e:
            print(f"Error writing report: {e}", file=sys.stderr)
            code = EXIT_INTERNAL
        self.exit_code = code
        self.stop()
        return code

    def _emit(self, report: Dict[str, Any]) -> None:
        if self.config.output_format == "text":
            text = format_text(report)
        else:
            text = dump_report(report)
        if self.config.output_path is not None:
            write_report(self.config.output_path, report)
            if self.config.output_format == "text":
                self.stream.write(text)
        else:
            self.stream.write(text)
        self.stream.flush()

    def stop(self) -> None:
        log.msg(f"spinlift {self.config.command} finished with exit code {self.exit_code}")


def create_argument_parser() -> argparse.ArgumentParser:
    """Create command line argument parser."""
    parser = argparse.ArgumentParser(
        prog="spinlift",
        description="py-spinlift: spin lifting, canonical involutions, 2-cohomology of finite groups "
                    "and Stiefel-Whitney classes in exact arithmetic",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s pi1 --input docs/examples/pgl2.json
  %(prog)s spin --input docs/examples/pgl2_taut.json --format text
  %(prog)s h2 --input docs/examples/c2xc2_z2.json
  %(prog)s keylemma --seed 7 --bound 32 --trials 50
  %(prog)s sw --input docs/examples/c4_rotation.json
  %(prog)s selftest --output report.json

Exit codes: 0 success, 2 invalid input or exceeded bound, 1 internal error or failed check.
        """
    )

    parser.add_argument(
        "command",
        choices=COMMANDS,
        help="Computation to run"
    )

    parser.add_argument(
        "--input", "-i",
        type=Path,
        default=None,
        help="Input JSON document (pi1, spin, involution, h2, extension, sw)"
    )

    parser.add_argument(
        "--output", "-o",
        type=Path,
        default=None,
        help="Write the JSON report to this file instead of stdout"
    )

    parser.add_argument(
        "--seed", "-s",
        type=int,
        default=0,
        help="Seed for randomized checks (default: 0)"
    )

    parser.add_argument(
        "--bound", "-b",
        type=int,
        default=None,
        help=f"Group order bound; overrides {BOUND_ENV_VAR} (keylemma/crossedhom default: 32)"
    )

    parser.add_argument(
        "--trials", "-t",
        type=int,
        default=None,
        help="Number of randomized trials (keylemma: 50, crossedhom: 20, spin gauge flips: 0)"
    )

    parser.add_argument(
        "--format", "-f",
        choices=FORMATS,
        default="json",
        dest="output_format",
        help="Report format (default: json)"
    )

    parser.add_argument(
        "--debug", "-d",
        action="store_true",
        default=False,
        help="Enable debug logging on stderr"
    )

    parser.add_argument(
        "--version", "-v",
        action="version",
        version=f"py-spinlift {__version__}"
    )

    return parser


def main(argv: Optional[List[str]] = None) -> None:
    """Main entry point for the spinlift CLI."""
    parser = create_argument_parser()
    args = parser.parse_args(argv)

    try:
        config = JobConfig(
            command=args.command,
            input_path=args.input,
            seed=args.seed,
            bound=resolve_bound(args.bound),
            trials=args.trials,
            output_format=args.output_format,
            output_path=args.output,
            debug=args.debug,
        )
    except ValueError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        sys.exit(EXIT_INVALID)

    try:
        code = SpinliftJobService(config).start()
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        sys.exit(EXIT_INTERNAL)
    sys.exit(code)


if __name__ == "__main__":
    main()
