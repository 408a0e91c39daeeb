"""Сервисы приложения."""
from src.services.central import find_central, gascheau
from src.services.lagrange import lagrange_configuration, restricted_AD
from src.services.linstab import classify_motion, monodromy
from src.services.orbits import homographic_motion, integrate_newton
from src.services.scan_service import ScanService
from src.services.regression import run_battery
from src.services.analysis import analyze_configuration

__all__ = [
    "find_central",
    "gascheau",
    "lagrange_configuration",
    "restricted_AD",
    "classify_motion",
    "monodromy",
    "homographic_motion",
    "integrate_newton",
    "ScanService",
    "run_battery",
    "analyze_configuration",
]
