# biring/core/exactla.py
"""
Точная линейная алгебра над Q и над простыми полями F_p.

Никакой плавающей точки: рациональные числа хранятся как fractions.Fraction,
элементы F_p как PrimeFieldElem. Все алгоритмы (ранг, определитель, обратная
матрица, ядро) реализованы одним исключением Гаусса с выбором первого
ненулевого ведущего элемента и работают над любым из этих полей.
"""

# ============================================================================
# ИМПОРТЫ
# ============================================================================
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import isprime

from core.errors import (
    DimensionMismatchError,
    InvalidInputError,
    NonSquareMatrixError,
    SingularMatrixError,
)

logger = logging.getLogger(__name__)

# ============================================================================
# КОНСТАНТЫ
# ============================================================================
BigRational = Fraction
_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')


# ============================================================================
# РАЦИОНАЛЬНЫЕ ЧИСЛА
# ============================================================================
def parse_rational(value: Any) -> Fraction:
    """
    Разбор точного рационального числа.

    Принимает int, Fraction или строку вида "12", "-3", "p/q".
    bool и float отвергаются: float не точен, bool почти всегда ошибка вызова.
    """
    if isinstance(value, bool):
        raise InvalidInputError(f"Ожидалось число, получено {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if not match:
            raise InvalidInputError(f"Не рациональное число: {value!r}")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) else 1
        if denominator == 0:
            raise InvalidInputError(f"Нулевой знаменатель: {value!r}")
        return Fraction(numerator, denominator)
    raise InvalidInputError(f"Неподдерживаемый тип числа: {type(value).__name__}")


def format_rational(value: Any) -> str:
    """Строковая форма: "n" для целых, "p/q" для дробей"""
    if isinstance(value, PrimeFieldElem):
        return str(value.value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_integer(value: Fraction) -> bool:
    return Fraction(value).denominator == 1


# ============================================================================
# ПРОСТЫЕ ПОЛЯ
# ============================================================================
@lru_cache(maxsize=None)
def _ensure_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise InvalidInputError(f"Модуль поля должен быть простым, получено {p!r}")
    return p


@dataclass(frozen=True, eq=False)
class PrimeFieldElem:
    """Элемент F_p; значение всегда приведено в [0, p)"""
    modulus: int
    value: int

    def __post_init__(self):
        _ensure_prime(self.modulus)
        object.__setattr__(self, 'value', self.value % self.modulus)

    # ------------------------------------------------------------------------
    # ПРИВЕДЕНИЕ ТИПОВ
    # ------------------------------------------------------------------------
    def _coerce(self, other) -> Optional['PrimeFieldElem']:
        if isinstance(other, PrimeFieldElem):
            if other.modulus != self.modulus:
                raise DimensionMismatchError(
                    f"Разные поля: F_{self.modulus} и F_{other.modulus}"
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return PrimeFieldElem(self.modulus, other)
        return None

    # ------------------------------------------------------------------------
    # АРИФМЕТИКА
    # ------------------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PrimeFieldElem(self.modulus, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PrimeFieldElem(self.modulus, self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PrimeFieldElem(self.modulus, other.value - self.value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PrimeFieldElem(self.modulus, self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(self.modulus, -self.value)

    def inverse(self) -> 'PrimeFieldElem':
        if self.value == 0:
            raise ZeroDivisionError(f"Деление на ноль в F_{self.modulus}")
        return PrimeFieldElem(self.modulus, pow(self.value, self.modulus - 2, self.modulus))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return PrimeFieldElem(self.modulus, pow(self.value, exponent, self.modulus))

    # ------------------------------------------------------------------------
    # СРАВНЕНИЕ
    # ------------------------------------------------------------------------
    def __eq__(self, other):
        """
        Сравнение с int идёт по вычету: F_5(3) == 8.
        Хеш согласован только между элементами F_p, поэтому в set и ключах
        dict элементы F_p нельзя смешивать с int.
        """
        if isinstance(other, PrimeFieldElem):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.modulus, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


class PrimeField:
    """Фабрика элементов F_p"""

    def __init__(self, p: int):
        self.p = _ensure_prime(p)

    def __call__(self, value: Any) -> PrimeFieldElem:
        if isinstance(value, PrimeFieldElem):
            return PrimeFieldElem(self.p, value.value)
        if isinstance(value, Fraction):
            return PrimeFieldElem(self.p, value.numerator) / PrimeFieldElem(self.p, value.denominator)
        return PrimeFieldElem(self.p, int(value))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(('F', self.p))

    @property
    def order(self) -> int:
        return self.p

    @property
    def zero(self) -> PrimeFieldElem:
        return PrimeFieldElem(self.p, 0)

    @property
    def one(self) -> PrimeFieldElem:
        return PrimeFieldElem(self.p, 1)

    def elements(self) -> Tuple[PrimeFieldElem, ...]:
        return tuple(PrimeFieldElem(self.p, v) for v in range(self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


Scalar = Union[Fraction, PrimeFieldElem]


def _zero_like(x: Scalar) -> Scalar:
    return x * 0


def _one_like(x: Scalar) -> Scalar:
    return x * 0 + 1


def field_of(sample: Scalar) -> Callable[[Any], Scalar]:
    """Функция приведения к полю, которому принадлежит sample"""
    if isinstance(sample, PrimeFieldElem):
        return PrimeField(sample.modulus)
    return parse_rational


# ============================================================================
# МАТРИЦЫ
# ============================================================================
@dataclass(frozen=True)
class RatMatrix:
    """
    Плотная матрица с точными элементами, хранение построчное.

    Элементы: Fraction (по умолчанию) или PrimeFieldElem одного поля.
    """
    rows: int
    cols: int
    entries: Tuple[Scalar, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError("Отрицательный размер матрицы")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"Ожидалось {self.rows * self.cols} элементов, получено {len(self.entries)}"
            )

    # ------------------------------------------------------------------------
    # КОНСТРУКТОРЫ
    # ------------------------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]],
                  field: Callable[[Any], Scalar] = parse_rational,
                  cols: Optional[int] = None) -> 'RatMatrix':
        """Построение из списка строк; field приводит элементы к полю"""
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else (cols or 0)
        for r in rows:
            if len(r) != width:
                raise DimensionMismatchError("Строки матрицы разной длины")
        entries = tuple(field(x) for r in rows for x in r)
        return cls(len(rows), width, entries)

    @classmethod
    def column(cls, values: Sequence[Any], field: Callable[[Any], Scalar] = parse_rational) -> 'RatMatrix':
        return cls(len(values), 1, tuple(field(v) for v in values))

    @classmethod
    def row_vector(cls, values: Sequence[Any], field: Callable[[Any], Scalar] = parse_rational) -> 'RatMatrix':
        return cls(1, len(values), tuple(field(v) for v in values))

    @classmethod
    def identity(cls, n: int, field: Callable[[Any], Scalar] = parse_rational) -> 'RatMatrix':
        one, zero = field(1), field(0)
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Callable[[Any], Scalar] = parse_rational) -> 'RatMatrix':
        zero = field(0)
        return cls(rows, cols, (zero,) * (rows * cols))

    @classmethod
    def from_array(cls, array: np.ndarray) -> 'RatMatrix':
        rows, cols = array.shape
        return cls(rows, cols, tuple(array.reshape(-1).tolist()))

    # ------------------------------------------------------------------------
    # ДОСТУП
    # ------------------------------------------------------------------------
    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Tuple[Scalar, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_array(self) -> np.ndarray:
        array = np.empty((self.rows, self.cols), dtype=object)
        for i in range(self.rows):
            for j in range(self.cols):
                array[i, j] = self.entry(i, j)
        return array

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def transpose(self) -> 'RatMatrix':
        return RatMatrix(self.cols, self.rows,
                         tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)))

    def select_columns(self, indices: Sequence[int]) -> 'RatMatrix':
        return RatMatrix(self.rows, len(indices),
                         tuple(self.entry(i, j) for i in range(self.rows) for j in indices))

    def __matmul__(self, other: 'RatMatrix') -> 'RatMatrix':
        return mat_mul(self, other)

    def __str__(self):
        return "[" + ", ".join(
            "[" + ", ".join(format_rational(x) for x in self.row(i)) + "]" for i in range(self.rows)
        ) + "]"


# ============================================================================
# АРИФМЕТИКА МАТРИЦ
# ============================================================================
def identity_like(a: RatMatrix) -> RatMatrix:
    """Единичная матрица порядка a.rows над полем элементов a"""
    field = field_of(a.entries[0]) if a.entries else parse_rational
    return RatMatrix.identity(a.rows, field)


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Точное произведение a·b"""
    if a.cols != b.rows:
        raise DimensionMismatchError(f"Нельзя умножить {a.rows}×{a.cols} на {b.rows}×{b.cols}")
    entries = []
    for i in range(a.rows):
        row = a.row(i)
        for j in range(b.cols):
            total = None
            for k in range(a.cols):
                term = row[k] * b.entries[k * b.cols + j]
                total = term if total is None else total + term
            entries.append(total if total is not None else Fraction(0))
    return RatMatrix(a.rows, b.cols, tuple(entries))


def mat_add(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatchError("Сложение матриц разного размера")
    return RatMatrix(a.rows, a.cols, tuple(x + y for x, y in zip(a.entries, b.entries)))


def mat_sub(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatchError("Вычитание матриц разного размера")
    return RatMatrix(a.rows, a.cols, tuple(x - y for x, y in zip(a.entries, b.entries)))


def mat_scale(c: Scalar, a: RatMatrix) -> RatMatrix:
    return RatMatrix(a.rows, a.cols, tuple(c * x for x in a.entries))


def mat_pow(a: RatMatrix, k: int) -> RatMatrix:
    """Степень квадратной матрицы (k >= 0), возведение через повторное умножение"""
    if not a.is_square:
        raise NonSquareMatrixError("Степень определена только для квадратных матриц")
    if a.rows == 0:
        return a
    result = identity_like(a)
    base = a
    while k > 0:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Кронекерово произведение (numpy на object-массивах, точность сохраняется)"""
    return RatMatrix.from_array(np.kron(a.to_array(), b.to_array()))


# ============================================================================
# ИСКЛЮЧЕНИЕ ГАУССА
# ============================================================================
def _row_reduce(rows: List[List[Scalar]], ncols: int, limit: Optional[int] = None):
    """
    Приведение к ступенчатому виду Гаусса–Жордана на месте.

    limit ограничивает столбцы, в которых ищутся ведущие элементы.

    Returns:
        (rows, pivot_columns, pivot_values, swaps)
    """
    limit = ncols if limit is None else limit
    pivots: List[int] = []
    pivot_values: List[Scalar] = []
    swaps = 0
    r = 0
    for c in range(limit):
        if r == len(rows):
            break
        k = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if k is None:
            continue
        if k != r:
            rows[r], rows[k] = rows[k], rows[r]
            swaps += 1
        pivot = rows[r][c]
        pivot_values.append(pivot)
        rows[r] = [x / pivot for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots, pivot_values, swaps


def rref(a: RatMatrix) -> Tuple[RatMatrix, List[int]]:
    """Приведённая ступенчатая форма и столбцы ведущих элементов"""
    rows, pivots, _, _ = _row_reduce(a.to_rows(), a.cols)
    if not rows:
        return a, []
    return RatMatrix.from_rows(rows, field=lambda x: x), pivots


def rank(a: RatMatrix) -> int:
    """Точный ранг"""
    _, pivots, _, _ = _row_reduce(a.to_rows(), a.cols)
    return len(pivots)


def det(a: RatMatrix) -> Scalar:
    """Точный определитель; det матрицы 0×0 равен 1"""
    if not a.is_square:
        raise NonSquareMatrixError(f"Определитель не определён для {a.rows}×{a.cols}")
    if a.rows == 0:
        return Fraction(1)
    _, pivots, pivot_values, swaps = _row_reduce(a.to_rows(), a.cols)
    if len(pivots) < a.rows:
        return _zero_like(a.entries[0])
    result = pivot_values[0]
    for value in pivot_values[1:]:
        result = result * value
    return -result if swaps % 2 else result


def try_inverse(a: RatMatrix) -> Optional[RatMatrix]:
    """Обратная матрица или None для вырожденной"""
    if not a.is_square:
        raise NonSquareMatrixError(f"Обратная не определена для {a.rows}×{a.cols}")
    n = a.rows
    if n == 0:
        return a
    one, zero = _one_like(a.entries[0]), _zero_like(a.entries[0])
    augmented = [list(a.row(i)) + [one if i == j else zero for j in range(n)] for i in range(n)]
    rows, pivots, _, _ = _row_reduce(augmented, 2 * n, limit=n)
    if len(pivots) < n:
        return None
    return RatMatrix(n, n, tuple(x for r in rows for x in r[n:]))


def mat_inverse(a: RatMatrix) -> RatMatrix:
    """Обратная матрица; для вырожденной: SingularMatrixError"""
    inverse = try_inverse(a)
    if inverse is None:
        raise SingularMatrixError("Матрица вырождена")
    return inverse


def kernel_basis(a: RatMatrix) -> List[Tuple[Scalar, ...]]:
    """
    Базис правого ядра {v : a·v = 0}.

    Пустой список тогда и только тогда, когда столбцы линейно независимы.
    """
    if a.cols == 0:
        return []
    sample = a.entries[0] if a.entries else Fraction(0)
    one, zero = _one_like(sample), _zero_like(sample)
    rows, pivots, _, _ = _row_reduce(a.to_rows(), a.cols)
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for f in free:
        vector = [zero] * a.cols
        vector[f] = one
        for r, c in enumerate(pivots):
            vector[c] = -rows[r][f]
        basis.append(tuple(vector))
    return basis


def solve(a: RatMatrix, rhs: Sequence[Scalar]) -> Optional[List[Scalar]]:
    """
    Частное решение a·x = rhs (свободные переменные = 0) или None,
    если система несовместна.
    """
    if len(rhs) != a.rows:
        raise DimensionMismatchError("Длина правой части не совпадает с числом строк")
    if a.rows == 0:
        return [Fraction(0)] * a.cols
    augmented = [list(a.row(i)) + [rhs[i]] for i in range(a.rows)]
    rows, pivots, _, _ = _row_reduce(augmented, a.cols + 1, limit=a.cols)
    for r in range(len(pivots), a.rows):
        if rows[r][a.cols] != 0:
            return None
    zero = _zero_like(a.entries[0]) if a.entries else Fraction(0)
    solution = [zero] * a.cols
    for r, c in enumerate(pivots):
        solution[c] = rows[r][a.cols]
    return solution


def mat_vec(a: RatMatrix, v: Iterable[Scalar]) -> List[Scalar]:
    v = list(v)
    if len(v) != a.cols:
        raise DimensionMismatchError("Длина вектора не совпадает с числом столбцов")
    return [sum((x * y for x, y in zip(a.row(i), v)), _zero_like(v[0]) if v else Fraction(0))
            for i in range(a.rows)]
