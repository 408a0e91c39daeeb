"""Командная строка: check-paper, scan, analyze, threshold."""
from src.cli.registry import build_parser, run

__all__ = ["build_parser", "run"]
