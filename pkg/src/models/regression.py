"""Результаты регрессионной проверки замкнутых формул."""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple


@dataclass(frozen=True)
class RegressionCheck:
    """Одно тождество: имя, массы, отклонение и допуск."""
    name: str
    masses: Tuple[float, float, float]
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "masses": list(self.masses),
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass
class RegressionReport:
    """Набор проверок и сводка по контрольным массам."""
    checks: List[RegressionCheck] = field(default_factory=list)
    cases: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def first_failure(self) -> Optional[RegressionCheck]:
        return next((check for check in self.checks if not check.passed), None)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
            "cases": self.cases,
        }
