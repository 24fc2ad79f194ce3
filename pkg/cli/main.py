"""
Entry point of the command-line tools.

Exit status: 0 on success, 2 for invalid input (schema, parameters, usage,
unreadable inputs or unwritable outputs), 3 for numerical failures.
"""

import argparse
import sys
from logging import getLogger
from typing import List, Optional

from pydantic import ValidationError

from cli.commands import register_commands
from cli.io import RunRecorder
from functions.exceptions import CutoffError, InvalidParameter, InvalidState, NumericalError
from utils.config import load_settings
from utils.logconfig import setup_logging

logger = getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

SETTINGS_DEFAULTS = {"cutoff": "cutoff", "samples": "num_samples", "workers": "workers"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vibronic",
        description="Vibronic transitions simulated as Gaussian boson sampling.",
    )
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--cache-dir", help="directory of the run ledger")
    parser.add_argument(
        "--no-ledger", action="store_true", help="do not record the run in the ledger"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_commands(subparsers)
    return parser


def _config_echo(args, settings) -> dict:
    echo = {
        key: value
        for key, value in vars(args).items()
        if key not in ("func", "records_run", "ledger_path")
    }
    echo["settings"] = settings.as_dict()
    return echo


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = load_settings(cache_dir=args.cache_dir, log_level=args.log_level)
        setup_logging(settings.log_level)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    for flag, setting in SETTINGS_DEFAULTS.items():
        if hasattr(args, flag) and getattr(args, flag) is None:
            setattr(args, flag, getattr(settings, setting))
    args.ledger_path = settings.ledger_path

    recorder = None
    if getattr(args, "records_run", True):
        recorder = RunRecorder(
            command=args.command,
            config=_config_echo(args, settings),
            ledger_path=None if args.no_ledger else settings.ledger_path,
            seed=getattr(args, "seed", None),
        )

    try:
        return args.func(args, recorder)
    except ValidationError as exc:
        logger.error("Invalid input file:\n%s", exc)
        return EXIT_VALIDATION
    except (InvalidParameter, InvalidState) as exc:
        logger.error("Invalid input: %s", exc)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        logger.error("File not found: %s", exc.filename)
        return EXIT_VALIDATION
    except OSError as exc:
        logger.error("Cannot access %s: %s", exc.filename, exc.strerror)
        return EXIT_VALIDATION
    except CutoffError as exc:
        logger.error("%s. Re-run with a larger --cutoff.", exc)
        return EXIT_NUMERICAL
    except NumericalError as exc:
        logger.error("Numerical failure: %s", exc)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
