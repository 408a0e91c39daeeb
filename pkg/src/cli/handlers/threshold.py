"""Команда threshold: порог det A_D = 0 вдоль семейства масс или переход устойчивости по монодромии."""
import argparse
import logging

from src.cli.options import add_output_option, add_tol_option
from src.cli.output import emit, to_json
from src.cli.schemas import parse_family
from src.services.lagrange import bisect_det_threshold
from src.services.linstab import stability_transition

logger = logging.getLogger(__name__)


def handle_threshold(args: argparse.Namespace) -> int:
    if args.criterion == "det":
        family = parse_family(args.family)
        width = 1e-10 if args.width is None else args.width
        result = bisect_det_threshold(family, args.lo, args.hi, width)
    else:
        width = 1e-3 if args.width is None else args.width
        result = stability_transition(args.e, args.mu_lo, args.mu_hi, width, tol=args.tol)
    emit(to_json(result.to_dict()), args.out)
    return 0


def build_threshold_command(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("threshold", help="бисекция по параметру семейства масс")
    parser.add_argument("--criterion", choices=("det", "monodromy"), default="det")
    parser.add_argument("--family", default="1,m,m", help="семейство '1,m,m', '1,m,2m', ...")
    parser.add_argument("--lo", type=float, default=1e-3, help="левый конец интервала по m")
    parser.add_argument("--hi", type=float, default=1.0, help="правый конец интервала по m")
    parser.add_argument("--e", type=float, default=0.0, help="эксцентриситет (для --criterion monodromy)")
    parser.add_argument("--mu-lo", type=float, default=20.0)
    parser.add_argument("--mu-hi", type=float, default=30.0)
    parser.add_argument("--width", type=float, default=None, help="ширина скобки по mu")
    add_output_option(parser)
    add_tol_option(parser)
    parser.set_defaults(handler=handle_threshold)
    return parser
