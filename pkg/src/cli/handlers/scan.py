"""Команда scan: сетка (mu, e), одна строка на клетку."""
import argparse
import logging

from src.cli.options import add_jobs_option, add_kappa_option, add_output_option, add_tol_option
from src.cli.output import emit, rows_to_csv, to_json
from src.cli.schemas import parse_float_list, parse_scan_spec
from src.services.scan_service import ScanService

logger = logging.getLogger(__name__)


def handle_scan(args: argparse.Namespace) -> int:
    spec = parse_scan_spec({
        "mu_values": parse_float_list(args.mu, "mu") if args.mu else None,
        "masses": [parse_float_list(text, "masses") for text in args.masses] if args.masses else None,
        "e_values": parse_float_list(args.e, "e"),
        "kappa": 1.0 if args.kappa is None else args.kappa,
        "tol": args.tol,
    })
    service = ScanService(
        e_values=spec.e_values,
        mu_values=spec.mu_values,
        masses=spec.masses,
        tol=spec.tol,
        jobs=args.jobs,
    )
    rows = service.run()
    if args.format == "csv":
        text = rows_to_csv(rows)
    else:
        text = to_json([row.to_dict() for row in rows])
    emit(text, args.out)
    return 0


def build_scan_command(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("scan", help="монодромия блока D по сетке (mu, e)")
    parser.add_argument("--mu", default=None, help="значения mu через запятую (семейство (1, m, m))")
    parser.add_argument("--masses", action="append", default=None, help="явная тройка 'm1,m2,m3' (можно повторять)")
    parser.add_argument("--e", required=True, help="значения эксцентриситета через запятую")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    add_output_option(parser)
    add_jobs_option(parser)
    add_tol_option(parser)
    add_kappa_option(parser)
    parser.set_defaults(handler=handle_scan)
    return parser
