"""Исключения анализа устойчивости."""
from typing import Optional

import numpy as np


class NBodyError(Exception):
    """Базовая ошибка пакета."""


class InvalidInputError(NBodyError, ValueError):
    """Входные данные нарушают предусловие операции."""


class UnsupportedDimensionError(InvalidInputError):
    """Операция определена только для другой размерности пространства."""


class UnsupportedOrbitError(InvalidInputError):
    """Орбита вне рассматриваемого класса (e >= 1)."""


class DegenerateInputError(InvalidInputError):
    """Вырожденный вход: нулевая конфигурация и т.п."""


class InvalidSubspaceError(InvalidInputError):
    """Базис подпространства не ортонормирован в массовой метрике."""


class ParseError(InvalidInputError):
    """Ошибка разбора входного файла или спецификации."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field


class CollisionError(NBodyError):
    """Столкновение: расстояние между телами ниже порога."""

    def __init__(self, i: int, j: int, distance: float):
        super().__init__(f"Столкновение тел {i} и {j}: r = {distance:.3e}")
        self.pair = (i, j)
        self.distance = distance


class CollisionApproachError(NBodyError):
    """Интегратор остановился при сближении тел."""

    def __init__(self, message: str, t: float, state: np.ndarray):
        super().__init__(message)
        self.t = t
        self.state = state


class SearchFailureError(NBodyError):
    """Поиск центральной конфигурации не сошёлся."""

    def __init__(self, message: str, iterate=None, residual: float = float("nan"), iterations: int = 0):
        super().__init__(message)
        self.iterate = iterate
        self.residual = residual
        self.iterations = iterations


class HypothesisError(NBodyError):
    """Нарушена гипотеза теоремы сравнения (min eig B(t) < alpha)."""


class NotFoundError(NBodyError):
    """Смена знака / переход устойчивости не найдены на интервале."""


class RegressionError(NBodyError):
    """Регрессионная проверка замкнутых формул не прошла."""

    def __init__(self, identity: str, deviation: float):
        super().__init__(f"Проверка '{identity}' не прошла: отклонение {deviation:.3e}")
        self.identity = identity
        self.deviation = deviation
