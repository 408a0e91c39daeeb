"""Именованные конфигурации: треугольник Лагранжа, коллинеарная затравка, равнобедренный треугольник."""
import cmath
import math
from typing import Optional

import numpy as np

from src.errors import InvalidInputError, UnsupportedDimensionError
from src.models.system import Configuration, MassSystem
from src.services.mass_metric import centered

OMEGA = cmath.exp(2j * math.pi / 3)

NAMED_CONFIGURATIONS = ("equilateral", "collinear", "isosceles")


def equilateral(system: MassSystem, center: bool = True) -> Configuration:
    """T = (1, ω, ω²) со сторонами √3; при center=True — T0 = T - δ(G(T))."""
    if system.n_bodies != 3 or system.dim != 2:
        raise InvalidInputError("Треугольник Лагранжа задан для N = 3, dim E = 2")
    x = system.from_complex([1.0, OMEGA, OMEGA ** 2])
    return centered(x) if center else x


def collinear(system: MassSystem) -> Configuration:
    """Равномерно расставленные тела на оси x, центрированные."""
    pts = np.zeros((system.n_bodies, system.dim))
    pts[:, 0] = np.linspace(-1.0, 1.0, system.n_bodies)
    return centered(system.from_points(pts))


def isosceles_triangle(system: MassSystem, height: Optional[float] = None) -> Configuration:
    """r1 = (1, 0), r2 = (-1, 0), r3 на оси симметрии на высоте h (в dim 3 — ось z)."""
    if system.n_bodies != 3:
        raise InvalidInputError("Равнобедренный треугольник задан для N = 3")
    h = math.sqrt(3.0) if height is None else float(height)
    if system.dim == 2:
        pts = [[1.0, 0.0], [-1.0, 0.0], [0.0, h]]
    elif system.dim == 3:
        pts = [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, h]]
    else:
        raise UnsupportedDimensionError(f"dim E = {system.dim}")
    return centered(system.from_points(pts))


def named(system: MassSystem, name: str, height: Optional[float] = None) -> Configuration:
    if name == "equilateral":
        return equilateral(system)
    if name == "collinear":
        return collinear(system)
    if name == "isosceles":
        return isosceles_triangle(system, height)
    raise InvalidInputError(f"Неизвестная конфигурация: {name}")
