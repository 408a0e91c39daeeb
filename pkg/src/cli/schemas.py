"""Pydantic-схемы входных данных CLI и разбор простых списков."""
import json
from typing import List, Literal, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveFloat,
    ValidationError,
    field_validator,
    model_validator,
)

from src.errors import ParseError
from src.models.central import MassFamily


class OrbitInput(BaseModel):
    """Эллиптическая орбита: эксцентриситет и большая полуось."""
    model_config = ConfigDict(extra="forbid")

    e: float = Field(ge=0.0, lt=1.0)
    a: PositiveFloat = 1.0


class AnalyzeInput(BaseModel):
    """Файл конфигурации для команды analyze."""
    model_config = ConfigDict(extra="forbid")

    masses: List[PositiveFloat] = Field(min_length=2)
    kappa: Optional[PositiveFloat] = None
    positions: Optional[List[List[float]]] = None
    named: Optional[Literal["equilateral", "collinear", "isosceles"]] = None
    height: Optional[PositiveFloat] = None
    dim: Literal[2, 3] = 2
    orbit: Optional[OrbitInput] = None
    refine: bool = True

    @model_validator(mode="after")
    def _check_source(self) -> "AnalyzeInput":
        if (self.positions is None) == (self.named is None):
            raise ValueError("нужно ровно одно из полей positions или named")
        if self.positions is not None:
            if len(self.positions) != len(self.masses):
                raise ValueError("число позиций не совпадает с числом масс")
            dims = {len(p) for p in self.positions}
            if len(dims) != 1 or dims.pop() not in (2, 3):
                raise ValueError("все позиции должны иметь 2 или 3 координаты")
        return self

    @property
    def position_dim(self) -> int:
        return len(self.positions[0]) if self.positions is not None else self.dim


class ScanSpec(BaseModel):
    """Сетка сканирования: mu или явные тройки масс, значения e."""
    model_config = ConfigDict(extra="forbid")

    mu_values: Optional[List[float]] = None
    masses: Optional[List[Tuple[PositiveFloat, PositiveFloat, PositiveFloat]]] = None
    e_values: List[float] = Field(min_length=1)
    kappa: float = 1.0
    tol: Optional[PositiveFloat] = None

    @field_validator("e_values")
    @classmethod
    def _check_e(cls, values: List[float]) -> List[float]:
        for e in values:
            if not 0.0 <= e < 1.0:
                raise ValueError(f"e должно лежать в [0, 1), получено {e}")
        return values

    @field_validator("mu_values")
    @classmethod
    def _check_mu(cls, values: Optional[List[float]]) -> Optional[List[float]]:
        for mu in values or []:
            if not mu >= 3.0:
                raise ValueError(f"mu должно быть >= 3, получено {mu}")
        return values

    @model_validator(mode="after")
    def _check_parameterization(self) -> "ScanSpec":
        if bool(self.mu_values) == bool(self.masses):
            raise ValueError("нужно ровно одно из: список mu или тройки масс")
        if self.kappa != 1.0:
            raise ValueError("замкнутые формулы и кеплеровы орбиты требуют kappa = 1")
        return self


def _field_path(exc: ValidationError) -> str:
    error = exc.errors()[0]
    return ".".join(str(part) for part in error["loc"]) or "<root>"


def validation_to_parse_error(exc: ValidationError) -> ParseError:
    error = exc.errors()[0]
    field = _field_path(exc)
    return ParseError(f"Ошибка в поле '{field}': {error['msg']}", field=field)


def parse_analyze_input(text: str) -> AnalyzeInput:
    """JSON -> AnalyzeInput; ошибки синтаксиса и схемы превращаются в ParseError."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Некорректный JSON: {exc.msg} (строка {exc.lineno}, столбец {exc.colno})") from exc
    try:
        return AnalyzeInput.model_validate(data)
    except ValidationError as exc:
        raise validation_to_parse_error(exc) from exc


def parse_scan_spec(data: dict) -> ScanSpec:
    try:
        return ScanSpec.model_validate(data)
    except ValidationError as exc:
        raise validation_to_parse_error(exc) from exc


def parse_float_list(text: str, field: str) -> List[float]:
    """'0,0.2,0.5' -> [0.0, 0.2, 0.5]."""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ParseError(f"Поле '{field}': ожидался список чисел через запятую, получено '{text}'", field=field) from exc


def parse_family(text: str) -> MassFamily:
    """'1,m,2m' -> MassFamily(ratios=(1, 2))."""
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 3 or parts[0] != "1":
        raise ParseError(f"Семейство задаётся как '1,<k>m,<k>m', получено '{text}'", field="family")
    ratios = []
    for part in parts[1:]:
        if not part.endswith("m"):
            raise ParseError(f"Ожидался множитель вида '<k>m', получено '{part}'", field="family")
        coef = part[:-1]
        try:
            ratios.append(float(coef) if coef else 1.0)
        except ValueError as exc:
            raise ParseError(f"Некорректный множитель '{part}'", field="family") from exc
    return MassFamily(ratios=tuple(ratios), label=",".join(parts))
