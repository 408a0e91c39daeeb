"""Команда analyze: JSON-отчёт по конфигурации из файла."""
import argparse
import logging
from pathlib import Path

from src.cli.options import add_kappa_option, add_output_option, add_tol_option
from src.cli.output import emit, to_json
from src.cli.schemas import AnalyzeInput, parse_analyze_input
from src.config import settings
from src.errors import ParseError
from src.models.system import MassSystem
from src.services.analysis import analyze_configuration
from src.services.configurations import named

logger = logging.getLogger(__name__)


def build_analysis(data: AnalyzeInput, kappa_override=None, tol=None) -> dict:
    """Отчёт по уже разобранному входу."""
    system = MassSystem(tuple(data.masses), dim=data.position_dim)
    if data.positions is not None:
        x = system.from_points(data.positions)
    else:
        x = named(system, data.named, data.height)
    if kappa_override is not None:
        kappa = kappa_override
    elif data.kappa is not None:
        kappa = data.kappa
    else:
        kappa = settings.kappa
    orbit = (data.orbit.e, data.orbit.a) if data.orbit is not None else None
    return analyze_configuration(system, x, kappa=kappa, orbit=orbit, refine=data.refine, tol=tol)


def handle_analyze(args: argparse.Namespace) -> int:
    path = Path(args.config)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"Не удалось прочитать {path}: {exc}", field="config") from exc
    data = parse_analyze_input(text)
    logger.info("Анализ конфигурации из %s (N = %d)", path, len(data.masses))
    emit(to_json(build_analysis(data, args.kappa, args.tol)), args.out)
    return 0


def build_analyze_command(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("analyze", help="центральная конфигурация, спектры блоков и монодромия")
    parser.add_argument("config", help="JSON-файл: masses, positions | named, kappa, orbit {e, a}")
    add_output_option(parser)
    add_tol_option(parser)
    add_kappa_option(parser)
    parser.set_defaults(handler=handle_analyze)
    return parser
