"""Команда check-paper: регрессия замкнутых формул треугольника Лагранжа."""
import argparse
import logging

from src.cli.options import add_output_option
from src.cli.output import emit, to_json
from src.cli.schemas import parse_float_list
from src.errors import RegressionError
from src.services.regression import REFERENCE_MASSES, RANDOM_TRIALS, run_battery

logger = logging.getLogger(__name__)


def handle_check_paper(args: argparse.Namespace) -> int:
    masses_list = [parse_float_list(text, "masses") for text in args.masses] if args.masses else REFERENCE_MASSES
    report = run_battery(masses_list, random_trials=args.random, seed=args.seed)
    emit(to_json(report.to_dict()), args.out)
    failure = report.first_failure
    if failure is not None:
        raise RegressionError(f"{failure.name} {list(failure.masses)}", failure.deviation)
    return 0


def build_check_paper_command(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        "check-paper",
        help="проверка матрицы 12√3·HU_T, треугольника S, формы A_D и порога 27/8",
    )
    parser.add_argument("--masses", action="append", default=None,
                        help="контрольная тройка масс 'm1,m2,m3' (можно повторять)")
    parser.add_argument("--random", type=int, default=RANDOM_TRIALS, help="число случайных троек масс")
    parser.add_argument("--seed", type=int, default=0)
    add_output_option(parser)
    parser.set_defaults(handler=handle_check_paper)
    return parser
