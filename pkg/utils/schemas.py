# biring/utils/schemas.py
"""
Pydantic схемы JSON-обмена для CLI biring.

Используются для:
1. Валидации входных документов (--spec, --json, stdin)
2. Сериализации результатов (числа всегда строками: "12", "-3", "1/2")
3. Обратного преобразования в доменные объекты (to_domain / from_domain)
"""

# ============================================================================
# ИМПОРТЫ
# ============================================================================
import logging
import re
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, root_validator, validator

from core.coring import TensorElement
from core.exactla import RatMatrix, format_rational, parse_rational
from core.pointcount import CountReport, CountingPolynomial
from core.seqcore import LinRecSequence, SequencePrefix, characteristic_polynomial, render_polynomial
from core.systems import GrassmannPoint, LinearSystem, cell_dimension
from core.zeta import PLAIN, TWO_PI, ZetaExpr, render

logger = logging.getLogger(__name__)

_NUMBER_RE = re.compile(r'^[+-]?\d+(/\d+)?$')
_INTEGER_RE = re.compile(r'^[+-]?\d+$')


# ============================================================================
# ПРОВЕРКА ЧИСЕЛ
# ============================================================================
def _exact_number(v: Any) -> str:
    """Точное число строкой; int/float отвергаются, чтобы не терять точность"""
    if not isinstance(v, str) or not _NUMBER_RE.match(v.strip()):
        raise ValueError(f"Ожидалась строка с целым или дробью p/q, получено {v!r}")
    if '/' in v and int(v.split('/')[1]) == 0:
        raise ValueError(f"Нулевой знаменатель: {v!r}")
    return v.strip()


def _integer(v: Any) -> str:
    if not isinstance(v, str) or not _INTEGER_RE.match(v.strip()):
        raise ValueError(f"Ожидалась строка с целым числом, получено {v!r}")
    return v.strip()


def _numbers(v: Any) -> List[str]:
    if not isinstance(v, list):
        raise ValueError("Ожидался список чисел-строк")
    return [_exact_number(x) for x in v]


# ============================================================================
# СХЕМА: ПОСЛЕДОВАТЕЛЬНОСТЬ
# ============================================================================
class SequenceSchema(BaseModel):
    """Линейная рекуррентная последовательность"""

    initial: List[str] = Field(..., description="f_0..f_{r-1}")
    coeffs: List[str] = Field(..., description="a_1..a_r: f_n = a_1 f_{n-1} + ... + a_r f_{n-r}")
    order: Optional[str] = Field(None, description="Порядок (только вывод)")
    integral: Optional[bool] = None
    charpoly: Optional[str] = Field(None, description="m(t) (только вывод)")

    _check_lists = validator('initial', 'coeffs', pre=True, allow_reuse=True)(_numbers)
    _check_order = validator('order', pre=True, allow_reuse=True)(
        lambda v: None if v is None else _integer(v))

    @root_validator(skip_on_failure=True)
    def validate_lengths(cls, values):
        if len(values['initial']) != len(values['coeffs']):
            raise ValueError("Длины initial и coeffs должны совпадать")
        return values

    def to_domain(self) -> LinRecSequence:
        return LinRecSequence(tuple(self.initial), tuple(self.coeffs))

    @classmethod
    def from_domain(cls, f: LinRecSequence) -> 'SequenceSchema':
        return cls(
            initial=[format_rational(x) for x in f.initial],
            coeffs=[format_rational(x) for x in f.coeffs],
            order=str(f.order),
            integral=f.integral,
            charpoly=render_polynomial(characteristic_polynomial(f)),
        )

    class Config:
        schema_extra = {
            "example": {"initial": ["0", "1"], "coeffs": ["1", "1"]}
        }


class PrefixSchema(BaseModel):
    terms: List[str]

    _check_terms = validator('terms', pre=True, allow_reuse=True)(_numbers)

    def to_domain(self) -> SequencePrefix:
        return SequencePrefix(tuple(self.terms))

    @classmethod
    def from_domain(cls, p: SequencePrefix) -> 'PrefixSchema':
        return cls(terms=[format_rational(x) for x in p.terms])


class MarkovSchema(PrefixSchema):
    """Марковские параметры и восстановленная по ним последовательность"""

    sequence: Optional[SequenceSchema] = None


class TermSchema(BaseModel):
    n: str
    value: str

    _check_n = validator('n', pre=True, allow_reuse=True)(_integer)
    _check_value = validator('value', pre=True, allow_reuse=True)(_exact_number)


# ============================================================================
# СХЕМА: ТЕНЗОР
# ============================================================================
class SummandSchema(BaseModel):
    coeff: str
    left: SequenceSchema
    right: SequenceSchema

    _check_coeff = validator('coeff', pre=True, allow_reuse=True)(_exact_number)


class TensorSchema(BaseModel):
    """Результат копроизведения"""

    summands: List[SummandSchema]
    integral: Optional[bool] = Field(None, description="|det H| = 1")
    hankel_det: Optional[str] = None

    _check_det = validator('hankel_det', pre=True, allow_reuse=True)(
        lambda v: None if v is None else _exact_number(v))

    def to_domain(self) -> TensorElement:
        return TensorElement.build([
            (parse_rational(s.coeff), s.left.to_domain(), s.right.to_domain())
            for s in self.summands
        ])

    @classmethod
    def from_domain(cls, tensor: TensorElement, integral: Optional[bool] = None,
                    hankel_det: Any = None) -> 'TensorSchema':
        return cls(
            summands=[
                SummandSchema(
                    coeff=format_rational(s.coeff),
                    left=SequenceSchema.from_domain(s.left),
                    right=SequenceSchema.from_domain(s.right),
                )
                for s in tensor.summands
            ],
            integral=integral,
            hankel_det=None if hankel_det is None else format_rational(hankel_det),
        )


# ============================================================================
# СХЕМА: СИСТЕМА И ТОЧКА ГРАССМАНИАНА
# ============================================================================
def _matrix_rows(matrix: RatMatrix) -> List[List[str]]:
    return [[format_rational(x) for x in matrix.row(i)] for i in range(matrix.rows)]


class SystemSchema(BaseModel):
    """Σ = (A, B, C); B: столбец, C: строка, оба записаны списками"""

    A: List[List[str]]
    B: List[str]
    C: List[str]
    n: Optional[str] = None

    @validator('A', pre=True)
    def validate_a(cls, v):
        if not isinstance(v, list):
            raise ValueError("A должна быть списком строк")
        return [_numbers(row) for row in v]

    _check_vectors = validator('B', 'C', pre=True, allow_reuse=True)(_numbers)
    _check_n = validator('n', pre=True, allow_reuse=True)(lambda v: None if v is None else _integer(v))

    @root_validator(skip_on_failure=True)
    def validate_shapes(cls, values):
        n = len(values['A'])
        if n < 1:
            raise ValueError("Размерность состояния должна быть >= 1")
        if any(len(row) != n for row in values['A']):
            raise ValueError(f"A должна быть {n}×{n}")
        if len(values['B']) != n or len(values['C']) != n:
            raise ValueError(f"B и C должны иметь длину {n}")
        if values.get('n') is not None and int(values['n']) != n:
            raise ValueError(f"Поле n={values['n']} не совпадает с размером A ({n})")
        return values

    def to_domain(self) -> LinearSystem:
        return LinearSystem.from_lists(self.A, self.B, self.C)

    @classmethod
    def from_domain(cls, system: LinearSystem) -> 'SystemSchema':
        return cls(
            A=_matrix_rows(system.A),
            B=[format_rational(x) for x in system.B.entries],
            C=[format_rational(x) for x in system.C.entries],
            n=str(system.n),
        )


class GrassmannSchema(BaseModel):
    n: str
    K: List[List[str]]
    M: List[List[str]]
    multi_index: List[str]
    cell_dimension: str
    source: str

    _check_counts = validator('n', 'cell_dimension', pre=True, allow_reuse=True)(_integer)

    @validator('K', 'M', pre=True)
    def validate_matrices(cls, v):
        if not isinstance(v, list):
            raise ValueError("Матрица должна быть списком строк")
        return [_numbers(row) for row in v]

    @validator('source')
    def validate_source(cls, v):
        if v not in ('cc', 'co'):
            raise ValueError("source должен быть 'cc' или 'co'")
        return v

    @validator('multi_index', pre=True)
    def validate_multi_index(cls, v):
        if not isinstance(v, list) or len(v) != 2:
            raise ValueError("multi_index: пара номеров столбцов")
        return [_integer(x) for x in v]

    def to_domain(self) -> GrassmannPoint:
        n = int(self.n)
        k = RatMatrix.from_rows(self.K)
        m = RatMatrix.from_rows(self.M)
        index: Tuple[int, int] = (int(self.multi_index[0]), int(self.multi_index[1]))
        return GrassmannPoint(n, k, m, index, self.source)

    @classmethod
    def from_domain(cls, point: GrassmannPoint) -> 'GrassmannSchema':
        return cls(
            n=str(point.n),
            K=_matrix_rows(point.K),
            M=_matrix_rows(point.M),
            multi_index=[str(i) for i in point.multi_index],
            cell_dimension=str(cell_dimension(point)),
            source=point.source,
        )


# ============================================================================
# СХЕМА: ПОДСЧЁТ ТОЧЕК И ДЗЕТА
# ============================================================================
class CountReportSchema(BaseModel):
    n: str
    p: str
    kind: str
    raw_point_count: str
    group_order: str
    orbit_count: str
    closed_form: str
    free_action: bool
    mode: str = "brute"

    _check_counts = validator('n', 'p', 'raw_point_count', 'group_order', 'orbit_count', 'closed_form',
                              pre=True, allow_reuse=True)(_integer)

    @root_validator(skip_on_failure=True)
    def validate_free_action(cls, values):
        if values['free_action'] and \
                int(values['orbit_count']) * int(values['group_order']) != int(values['raw_point_count']):
            raise ValueError("При свободном действии orbit_count · |GL| должно равняться raw_point_count")
        return values

    def to_domain(self) -> CountReport:
        return CountReport(
            n=int(self.n), p=int(self.p), kind=self.kind,
            raw_point_count=int(self.raw_point_count), group_order=int(self.group_order),
            orbit_count=int(self.orbit_count), closed_form=int(self.closed_form),
            free_action=self.free_action,
        )

    @classmethod
    def from_domain(cls, report: CountReport, mode: str = "brute") -> 'CountReportSchema':
        return cls(
            n=str(report.n), p=str(report.p), kind=report.kind,
            raw_point_count=str(report.raw_point_count), group_order=str(report.group_order),
            orbit_count=str(report.orbit_count), closed_form=str(report.closed_form),
            free_action=report.free_action, mode=mode,
        )


class FactorSchema(BaseModel):
    k: str
    exponent: str

    _check = validator('k', 'exponent', pre=True, allow_reuse=True)(_integer)


class ZetaSchema(BaseModel):
    """ZetaExpr и его текстовая форма"""

    factors: List[FactorSchema]
    normalization: str = PLAIN
    truncation: Optional[str] = None
    polynomial: Optional[List[str]] = Field(None, description="a_0..a_d считающего многочлена")
    text: Optional[str] = None

    @validator('normalization')
    def validate_normalization(cls, v):
        if v not in (PLAIN, TWO_PI):
            raise ValueError(f"normalization должна быть {PLAIN!r} или {TWO_PI!r}")
        return v

    _check_poly = validator('polynomial', pre=True, allow_reuse=True)(
        lambda v: None if v is None else [_integer(x) for x in v])
    _check_truncation = validator('truncation', pre=True, allow_reuse=True)(
        lambda v: None if v is None else _integer(v))

    def to_domain(self) -> ZetaExpr:
        factors = tuple((int(f.k), int(f.exponent)) for f in self.factors)
        truncation = None if self.truncation is None else int(self.truncation)
        return ZetaExpr(factors, self.normalization, truncation)

    @classmethod
    def from_domain(cls, z: ZetaExpr, polynomial: Optional[CountingPolynomial] = None) -> 'ZetaSchema':
        return cls(
            factors=[FactorSchema(k=str(k), exponent=str(e)) for k, e in z.factors],
            normalization=z.normalization,
            truncation=None if z.truncation is None else str(z.truncation),
            polynomial=None if polynomial is None else [str(a) for a in polynomial.coefficients],
            text=render(z),
        )


# ============================================================================
# ЭКСПОРТИРУЕМЫЕ ФУНКЦИИ
# ============================================================================
def dump(model: BaseModel) -> Dict[str, Any]:
    """Словарь для JSON без пустых необязательных полей"""
    return model.dict(exclude_none=True)
