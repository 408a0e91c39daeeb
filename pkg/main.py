"""Точка входа: CLI анализа линейной устойчивости."""
import logging
import sys

from src.cli import run
from src.config import settings

logging.basicConfig(level=settings.log_level,
                    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
