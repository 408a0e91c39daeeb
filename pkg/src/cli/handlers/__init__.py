"""Подкоманды CLI."""
from src.cli.handlers.analyze import build_analyze_command
from src.cli.handlers.check_paper import build_check_paper_command
from src.cli.handlers.scan import build_scan_command
from src.cli.handlers.threshold import build_threshold_command

__all__ = [
    "build_analyze_command",
    "build_check_paper_command",
    "build_scan_command",
    "build_threshold_command",
]
