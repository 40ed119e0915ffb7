"""
Command-line entry point.

    uv run python -m cli.main pressure --preset ideal-metal-vacuum
    uv run python -m cli.main cutoff-scan --config run.toml --out scan.csv --threads 8

Exit codes: 0 success, 1 usage or configuration error, 2 numerical non-convergence.
"""

import argparse
import os
import sys
import tomllib
from typing import Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from cache_helpers import load_from_cache, save_to_cache
from cli.commands import COMMANDS, human_summary
from cli.config import RunConfig, load_run_config
from cli.csv_output import CommandOutput, write_output
from cli.presets import PRESETS, load_preset

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NOT_CONVERGED = 2

THREADS_ENV = "CASIMIR_THREADS"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-stress",
        description="Casimir pressures under the AM and RW stress tensors, and the "
        "classical condenser experiment.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="TOML run configuration")
    source.add_argument("--preset", choices=sorted(PRESETS))
    parser.add_argument("--out", help="CSV output path (default: stdout)")
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help=f"Worker threads for Matsubara blocks (default: ${THREADS_ENV} or 1)",
    )
    parser.add_argument(
        "--tolerance", type=float, default=None, help="Relative tolerance override"
    )
    parser.add_argument(
        "--materials", help="Extra material library merged over the built-in one"
    )
    parser.add_argument(
        "--cache", action="store_true", help="Reuse and store results in the cache directory"
    )
    return parser


def _report_validation_error(e: ValidationError) -> None:
    print(f"❌ Invalid configuration ({e.error_count()} errors):", file=sys.stderr)
    for error in e.errors():
        location = ".".join(str(part) for part in error["loc"])
        print(f"   {location}: {error['msg']}", file=sys.stderr)


def load_config(args) -> RunConfig:
    config = load_run_config(args.config) if args.config else load_preset(args.preset)
    update = {}
    if args.materials:
        update["materials"] = config.materials.model_copy(update={"library": args.materials})
    if args.tolerance is not None:
        if args.tolerance <= 0:
            raise ValueError(f"--tolerance must be positive, got {args.tolerance}")
        update["quadrature"] = config.quadrature.model_copy(
            update={"rel_tol": args.tolerance}
        )
    return config.model_copy(update=update) if update else config


def run(args) -> int:
    section_name, command = COMMANDS[args.command]
    threads = args.threads or int(os.environ.get(THREADS_ENV, "1"))
    if threads < 1:
        raise ValueError(f"--threads must be >= 1, got {threads}")

    config = load_config(args)
    config_json = config.resolved_json(section_name)

    output: Optional[CommandOutput] = None
    if args.cache:
        output = load_from_cache(args.command, config_json)
        if output is not None:
            print(f"📋 Using cached {args.command} result", file=sys.stderr)

    if output is None:
        output = command(config, threads)
        if args.cache:
            save_to_cache(output)

    write_output(output, args.out)

    for note in output.notes:
        print(f"⚠️ {note}", file=sys.stderr)
    for line in human_summary(output):
        print(line, file=sys.stderr)

    if not output.converged:
        print(f"⚠️ {args.command}: some values did not converge", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    print(f"✅ {args.command} done", file=sys.stderr)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_CONFIG

    try:
        return run(args)
    except tomllib.TOMLDecodeError as e:
        print(f"❌ Could not parse TOML input: {e}", file=sys.stderr)
    except ValidationError as e:
        _report_validation_error(e)
    except (ValueError, OSError) as e:
        print(f"❌ {e}", file=sys.stderr)
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
