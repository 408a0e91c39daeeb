"""Сериализация отчётов: JSON и CSV с детерминированным форматом чисел."""
import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from src.config import settings
from src.models.scan import CSV_COLUMNS, ScanRow

logger = logging.getLogger(__name__)


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"Не сериализуется в JSON: {type(obj).__name__}")


def _sanitize(obj):
    """nan/inf -> None, чтобы JSON оставался стандартным."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def to_json(data) -> str:
    return json.dumps(_sanitize(data), indent=2, ensure_ascii=False, default=_json_default) + "\n"


def format_value(value) -> str:
    """Кратчайшее представление float, восстанавливающее значение точно."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def rows_to_csv(rows: Iterable[ScanRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([format_value(v) for v in row.values()])
    return buffer.getvalue()


def emit(text: str, out: Optional[Path]) -> Optional[Path]:
    """Пишет в файл (относительный путь — от output_dir) или в stdout."""
    if out is None:
        print(text, end="")
        return None
    path = settings.resolve_output(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("Отчёт записан: %s", path)
    return path
