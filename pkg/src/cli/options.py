"""Общие флаги подкоманд."""
import argparse
from pathlib import Path


def add_output_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, default=None,
                        help="файл отчёта (относительный путь — от NBODY_OUTPUT_DIR); по умолчанию stdout")


def add_tol_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=None, help="допуск интегратора (по умолчанию NBODY_TOL)")


def add_jobs_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--jobs", type=int, default=None, help="размер пула процессов (по умолчанию NBODY_JOBS)")


def add_kappa_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kappa", type=float, default=None, help="степень однородности потенциала")
