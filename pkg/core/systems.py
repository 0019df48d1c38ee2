# biring/core/systems.py
"""
Линейные системы управления Σ = (A, B, C) с одним входом и одним выходом.

Реализация последовательностей (f_i = C A^i B), канонические формы,
транспонирование и вложение в грассманиан Grass_n(n+2).
Все функции работают над Q и над F_p: поле определяется элементами матриц.
"""

# ============================================================================
# ИМПОРТЫ
# ============================================================================
import logging
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence, Tuple

from core.errors import (
    DimensionMismatchError,
    InvalidInputError,
    NotCanonicalError,
    NotControllableError,
    NotEmbeddableError,
    UnsupportedFieldError,
    ZeroSequenceError,
)
from core.exactla import (
    PrimeFieldElem,
    RatMatrix,
    Scalar,
    det,
    kernel_basis,
    mat_inverse,
    mat_mul,
    parse_rational,
    rank,
    try_inverse,
)
from core.seqcore import (
    LinRecSequence,
    SequencePrefix,
    infer_recurrence,
    minimize,
    state_space,
)

logger = logging.getLogger(__name__)

CC_CELL = 'cc'
CO_CELL = 'co'


# ============================================================================
# ТИПЫ ДАННЫХ
# ============================================================================
@dataclass(frozen=True)
class LinearSystem:
    """Тройка (A, B, C): A: n×n, B: n×1, C: 1×n"""
    A: RatMatrix
    B: RatMatrix
    C: RatMatrix

    def __post_init__(self):
        n = self.A.rows
        if n < 1:
            raise InvalidInputError("Размерность состояния должна быть >= 1")
        if not self.A.is_square:
            raise DimensionMismatchError(f"A должна быть квадратной, получено {self.A.rows}×{self.A.cols}")
        if (self.B.rows, self.B.cols) != (n, 1):
            raise DimensionMismatchError(f"B должна быть {n}×1, получено {self.B.rows}×{self.B.cols}")
        if (self.C.rows, self.C.cols) != (1, n):
            raise DimensionMismatchError(f"C должна быть 1×{n}, получено {self.C.rows}×{self.C.cols}")

    @classmethod
    def from_lists(cls, a: Sequence[Sequence[Any]], b: Sequence[Any], c: Sequence[Any],
                   field: Callable[[Any], Scalar] = parse_rational) -> 'LinearSystem':
        return cls(
            RatMatrix.from_rows(a, field=field),
            RatMatrix.column(list(b), field=field),
            RatMatrix.row_vector(list(c), field=field),
        )

    @property
    def n(self) -> int:
        return self.A.rows

    def key(self) -> tuple:
        return self.A.entries, self.B.entries, self.C.entries


@dataclass(frozen=True)
class CanonicalForm:
    """Управляемая каноническая форма: B = e_1, A: сопровождающая с последним столбцом a"""
    a: Tuple[Scalar, ...]
    c: Tuple[Scalar, ...]
    system: LinearSystem
    base_change: RatMatrix


@dataclass(frozen=True)
class GrassmannPoint:
    """
    Точка Grass_n(n+2): строки K: базис ядра M, K·M^T = 0.

    multi_index (нумерация с 1): столбцы, на которых K равна I_2:
    {2, n+2} для cc-систем, {1, n+2} для систем, вложенных через транспонирование.
    """
    n: int
    K: RatMatrix
    M: RatMatrix
    multi_index: Tuple[int, int]
    source: str


# ============================================================================
# МАТРИЦЫ УПРАВЛЯЕМОСТИ И НАБЛЮДАЕМОСТИ
# ============================================================================
def controllability_matrix(system: LinearSystem) -> RatMatrix:
    """c(Σ) = [B AB ... A^{n-1}B]"""
    columns = []
    state = system.B
    for _ in range(system.n):
        columns.append(state.entries)
        state = mat_mul(system.A, state)
    n = system.n
    return RatMatrix(n, n, tuple(columns[j][i] for i in range(n) for j in range(n)))


def observability_matrix(system: LinearSystem) -> RatMatrix:
    """o(Σ): строки C, CA, ..., CA^{n-1}"""
    rows = []
    state = system.C
    for _ in range(system.n):
        rows.append(state.entries)
        state = mat_mul(state, system.A)
    n = system.n
    return RatMatrix(n, n, tuple(x for row in rows for x in row))


def is_cc(system: LinearSystem) -> bool:
    return rank(controllability_matrix(system)) == system.n


def is_co(system: LinearSystem) -> bool:
    return rank(observability_matrix(system)) == system.n


def is_canonical(system: LinearSystem) -> bool:
    return is_cc(system) and is_co(system)


# ============================================================================
# МАРКОВСКИЕ ПАРАМЕТРЫ
# ============================================================================
def markov_terms(system: LinearSystem, count: int) -> List[Scalar]:
    """f_i = C A^i B, i < count (над полем системы)"""
    terms = []
    state = system.B
    for _ in range(count):
        terms.append(mat_mul(system.C, state).entries[0])
        state = mat_mul(system.A, state)
    return terms


def is_prime_field_system(system: LinearSystem) -> bool:
    return any(isinstance(x, PrimeFieldElem) for x in system.A.entries + system.B.entries + system.C.entries)


def markov(system: LinearSystem, count: Optional[int] = None) -> SequencePrefix:
    """
    Префикс марковской последовательности (по умолчанию 2n+1 членов).
    Над F_p члены записываются вычетами из [0, p).
    """
    count = 2 * system.n + 1 if count is None else count
    terms = [x.value if isinstance(x, PrimeFieldElem) else x for x in markov_terms(system, count)]
    return SequencePrefix(tuple(terms))


def markov_sequence(system: LinearSystem) -> LinRecSequence:
    """
    Минимальная последовательность по 2n+1 марковским параметрам.
    По Кэли–Гамильтону порядок не больше n, так что восстановление точное.
    Рекурренты строятся только над Q.
    """
    if is_prime_field_system(system):
        raise UnsupportedFieldError("markov_sequence определена только для систем над Q")
    return infer_recurrence(markov(system))


def hankel_factorization_holds(system: LinearSystem) -> bool:
    """o(Σ)·c(Σ) совпадает с n×n матрицей Ганкеля (f_{i+j})"""
    n = system.n
    terms = markov_terms(system, 2 * n - 1)
    product = mat_mul(observability_matrix(system), controllability_matrix(system))
    return all(product.entry(i, j) == terms[i + j] for i in range(n) for j in range(n))


# ============================================================================
# РЕАЛИЗАЦИЯ И ЭКВИВАЛЕНТНОСТЬ
# ============================================================================
def realize(f: LinRecSequence) -> LinearSystem:
    """
    Каноническая реализация: A: сопровождающая матрица m(t), B = e_1,
    C = (f_0, ..., f_{n-1}); n = hankel_rank(f).
    """
    f = minimize(f)
    if f.order == 0:
        raise ZeroSequenceError("Нулевая последовательность не имеет реализации с n >= 1")
    system = LinearSystem(*state_space(f))
    if not is_canonical(system):
        # невозможно для минимальной f; сигнализирует об ошибке в минимизации
        raise ArithmeticError(f"Реализация {f} не каноническая")
    logger.debug(f"Реализована {f} с n={system.n}")
    return system


def conjugate(system: LinearSystem, g: RatMatrix) -> LinearSystem:
    """Замена базиса: (gAg^{-1}, gB, Cg^{-1})"""
    g_inv = mat_inverse(g)
    return LinearSystem(
        mat_mul(mat_mul(g, system.A), g_inv),
        mat_mul(g, system.B),
        mat_mul(system.C, g_inv),
    )


def equivalent(first: LinearSystem, second: LinearSystem) -> bool:
    """Канонические системы эквивалентны тогда и только тогда, когда совпадают 2n марковских параметров"""
    for system in (first, second):
        if not is_canonical(system):
            raise NotCanonicalError("Эквивалентность по марковским параметрам определена только для канонических систем")
    if first.n != second.n:
        return False
    count = 2 * first.n
    return markov_terms(first, count) == markov_terms(second, count)


def transpose_system(system: LinearSystem) -> LinearSystem:
    """Σ^t = (A^t, C^t, B^t)"""
    return LinearSystem(system.A.transpose(), system.C.transpose(), system.B.transpose())


# ============================================================================
# КАНОНИЧЕСКАЯ ФОРМА УПРАВЛЕНИЯ
# ============================================================================
def control_canonical_form(system: LinearSystem) -> CanonicalForm:
    """
    Единственный эквивалентный представитель с B' = e_1, c(Σ') = I.

    g = c(Σ)^{-1}; тогда A' = g A g^{-1}: сопровождающая матрица с последним
    столбцом a (A^n B = Σ a_i A^{i-1} B), C' = C·c(Σ) = (f_0, ..., f_{n-1}).
    """
    ctrl = controllability_matrix(system)
    g = try_inverse(ctrl)
    if g is None:
        raise NotControllableError("Система не вполне управляема: c(Σ) вырождена")
    canonical = LinearSystem(
        mat_mul(mat_mul(g, system.A), ctrl),
        mat_mul(g, system.B),
        mat_mul(system.C, ctrl),
    )
    n = system.n
    a = tuple(canonical.A.entry(i, n - 1) for i in range(n))
    c = canonical.C.entries
    return CanonicalForm(a, c, canonical, g)


# ============================================================================
# ГРАССМАНИАН
# ============================================================================
def _embed_cc(form: CanonicalForm) -> Tuple[RatMatrix, RatMatrix]:
    """K и M для системы в канонической форме; I_2 стоит в столбцах {2, n+2}"""
    system = form.system
    n = system.n
    zero, one = form.a[0] * 0, form.a[0] * 0 + 1
    row_c = [-form.c[0], one] + [-x for x in form.c[1:]] + [zero]
    row_a = [-form.a[0], zero] + [-x for x in form.a[1:]] + [one]
    k = RatMatrix(2, n + 2, tuple(row_c + row_a))
    m_rows = [
        [system.B.entry(i, 0), system.C.entry(0, i)] + list(system.A.row(i))
        for i in range(n)
    ]
    m = RatMatrix(n, n + 2, tuple(x for row in m_rows for x in row))
    return k, m


def _swap_first_columns(matrix: RatMatrix) -> RatMatrix:
    order = [1, 0] + list(range(2, matrix.cols))
    return matrix.select_columns(order)


def grassmann_embed(system: LinearSystem) -> GrassmannPoint:
    """
    Точка грассманиана для cc- или co-системы.

    cc: M = (B, C^t, A) в канонической форме, multi_index {2, n+2}.
    Только co: то же для транспонированной системы с обменом первых двух
    столбцов, multi_index {1, n+2}.
    """
    n = system.n
    if is_cc(system):
        k, m = _embed_cc(control_canonical_form(system))
        return GrassmannPoint(n, k, m, (2, n + 2), CC_CELL)
    if is_co(system):
        k, m = _embed_cc(control_canonical_form(transpose_system(system)))
        return GrassmannPoint(n, _swap_first_columns(k), _swap_first_columns(m), (1, n + 2), CO_CELL)
    raise NotEmbeddableError("Система ни вполне управляема, ни вполне наблюдаема")


def chart_minor(point: GrassmannPoint, multi_index: Tuple[int, int]) -> Scalar:
    """2×2 минор Плюккера K в столбцах multi_index (нумерация с 1)"""
    i, j = multi_index
    return det(point.K.select_columns([i - 1, j - 1]))


def in_cell(point: GrassmannPoint) -> bool:
    """
    Проверка точки: K|multi_index = I_2, строки K: базис ядра M,
    и multi_index согласован с типом системы.
    """
    n = point.n
    expected = (2, n + 2) if point.source == CC_CELL else (1, n + 2)
    if point.multi_index != expected:
        return False
    restricted = point.K.select_columns([i - 1 for i in point.multi_index])
    if restricted.entries != (1, 0, 0, 1):
        return False
    if not mat_mul(point.M, point.K.transpose()).is_zero():
        return False
    return rank(point.K) == 2 and len(kernel_basis(point.M)) == 2


def cell_dimension(point: GrassmannPoint) -> int:
    """2n для клетки {2, n+2}, 2n-1 для дополнительной клетки {1, n+2}"""
    if point.multi_index == (2, point.n + 2):
        return 2 * point.n
    return 2 * point.n - 1
