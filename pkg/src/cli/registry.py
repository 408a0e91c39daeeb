"""Реестр подкоманд и коды завершения."""
import argparse
import logging
import sys
from typing import Optional, Sequence

from src.cli.handlers import (
    build_analyze_command,
    build_check_paper_command,
    build_scan_command,
    build_threshold_command,
)
from src.errors import InvalidInputError, NBodyError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

COMMAND_FACTORIES = [
    build_check_paper_command,
    build_scan_command,
    build_analyze_command,
    build_threshold_command,
]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbody-linstab",
        description="Линейная устойчивость гомографических движений задачи N тел",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for factory in COMMAND_FACTORIES:
        factory(subparsers)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Разбирает argv, выполняет подкоманду и возвращает код завершения."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code is None else int(exc.code)
    try:
        return args.handler(args)
    except InvalidInputError as exc:
        logger.error("Некорректный вход: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NBodyError, OSError) as exc:
        logger.error("Команда %s завершилась ошибкой: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
