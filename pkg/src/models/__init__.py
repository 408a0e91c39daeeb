"""Модели данных."""
from src.models.system import MassSystem, Configuration
from src.models.subspace import Subspace, SubspaceLabel
from src.models.potential import Potential, HessianOperator
from src.models.central import CentralConfiguration, GascheauParams, RestrictedForm, MassFamily
from src.models.orbit import KeplerOrbit, HomographicMotion, Trajectory
from src.models.stability import (
    FloquetClass,
    Verdict,
    LinearizedSystem,
    JacobiField,
    MonodromyReport,
    MotionClassification,
    ComparisonReport,
    ThresholdResult,
)
from src.models.scan import ScanRow
from src.models.regression import RegressionCheck, RegressionReport

__all__ = [
    "MassSystem",
    "Configuration",
    "Subspace",
    "SubspaceLabel",
    "Potential",
    "HessianOperator",
    "CentralConfiguration",
    "GascheauParams",
    "RestrictedForm",
    "MassFamily",
    "KeplerOrbit",
    "HomographicMotion",
    "Trajectory",
    "FloquetClass",
    "Verdict",
    "LinearizedSystem",
    "JacobiField",
    "MonodromyReport",
    "MotionClassification",
    "ComparisonReport",
    "ThresholdResult",
    "ScanRow",
    "RegressionCheck",
    "RegressionReport",
]
