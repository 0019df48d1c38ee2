# biring/core/seqcore.py
"""
Линейные рекуррентные последовательности и их кольцо с произведением Адамара.

Последовательность задаётся начальными членами f_0..f_{r-1} и коэффициентами
a_1..a_r рекурренты f_n = a_1 f_{n-1} + ... + a_r f_{n-r}. Порядок r = 0
кодирует нулевую последовательность. Все операции замыкания (сумма,
произведение Адамара, psi) возвращают минимальные представители, поэтому
равенство проверяется структурно.
"""

# ============================================================================
# ИМПОРТЫ
# ============================================================================
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Sequence, Tuple

from sympy import Poly, QQ, Rational, symbols

from core.errors import InsufficientTermsError, InvalidInputError
from core.exactla import (
    RatMatrix,
    format_rational,
    is_integer,
    kron,
    mat_mul,
    parse_rational,
    solve,
)

logger = logging.getLogger(__name__)

T = symbols('t')


# ============================================================================
# ТИПЫ ДАННЫХ
# ============================================================================
@dataclass(frozen=True)
class LinRecSequence:
    """Линейная рекуррентная последовательность (элемент Z[t]^o или Q[t]^o)"""
    initial: Tuple[Fraction, ...]
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        initial = tuple(parse_rational(x) for x in self.initial)
        coeffs = tuple(parse_rational(x) for x in self.coeffs)
        if len(initial) != len(coeffs):
            raise InvalidInputError(
                f"Длины initial ({len(initial)}) и coeffs ({len(coeffs)}) должны совпадать"
            )
        object.__setattr__(self, 'initial', initial)
        object.__setattr__(self, 'coeffs', coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def integral(self) -> bool:
        """Все данные целые"""
        return all(is_integer(x) for x in self.initial + self.coeffs)

    @property
    def key(self) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
        return self.initial, self.coeffs

    def __str__(self):
        initial = ", ".join(format_rational(x) for x in self.initial)
        coeffs = ", ".join(format_rational(x) for x in self.coeffs)
        return f"LinRec(initial=[{initial}], coeffs=[{coeffs}])"


@dataclass(frozen=True)
class SequencePrefix:
    """Конечный префикс последовательности"""
    terms: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'terms', tuple(parse_rational(x) for x in self.terms))

    def __len__(self):
        return len(self.terms)


# ============================================================================
# КОНСТРУКТОРЫ
# ============================================================================
def unit_sequence() -> LinRecSequence:
    """Единица кольца: (1, 1, 1, ...), m(t) = t - 1"""
    return LinRecSequence((1,), (1,))


def zero_sequence() -> LinRecSequence:
    return LinRecSequence((), ())


def fibonacci() -> LinRecSequence:
    return LinRecSequence((0, 1), (1, 1))


def lucas() -> LinRecSequence:
    return LinRecSequence((2, 1), (1, 1))


def geometric(ratio: Any, start: Any = 1) -> LinRecSequence:
    """start * ratio^n"""
    return minimize(LinRecSequence((start,), (ratio,)))


def constant(value: Any) -> LinRecSequence:
    return geometric(1, value)


# ============================================================================
# ЧЛЕНЫ
# ============================================================================
@lru_cache(maxsize=65536)
def term(f: LinRecSequence, n: int) -> Fraction:
    """n-й член, итерация рекурренты (линейно по n)"""
    if n < 0:
        raise InvalidInputError(f"Индекс должен быть неотрицательным, получено {n}")
    r = f.order
    if r == 0:
        return Fraction(0)
    if n < r:
        return f.initial[n]
    window = deque(f.initial, maxlen=r)
    for _ in range(n - r + 1):
        # window[-1] = f_{m-1}, window[0] = f_{m-r}
        window.append(sum((a * x for a, x in zip(f.coeffs, reversed(window))), Fraction(0)))
    return window[-1]


def prefix(f: LinRecSequence, count: int) -> SequencePrefix:
    """Первые count членов"""
    if count < 0:
        raise InvalidInputError(f"Длина префикса должна быть неотрицательной, получено {count}")
    r = f.order
    if r == 0:
        return SequencePrefix((Fraction(0),) * count)
    terms = list(f.initial[:count])
    while len(terms) < count:
        terms.append(sum((a * terms[-1 - i] for i, a in enumerate(f.coeffs)), Fraction(0)))
    return SequencePrefix(tuple(terms))


# ============================================================================
# ВОССТАНОВЛЕНИЕ РЕКУРРЕНТЫ
# ============================================================================
def infer_recurrence(p: SequencePrefix) -> LinRecSequence:
    """
    Минимальная рекуррента, аннулирующая префикс.

    Порядки r = 0, 1, 2, ... перебираются по возрастанию; для каждого r
    решается переопределённая система по всем окнам префикса. Порядок
    принимается только при длине префикса >= 2r + 1.
    """
    terms = list(p.terms)
    length = len(terms)
    for r in range(0, (length - 1) // 2 + 1):
        if r == 0:
            if all(x == 0 for x in terms):
                logger.debug("Префикс нулевой, порядок 0")
                return zero_sequence()
            continue
        rows = [[terms[n - j] for j in range(1, r + 1)] for n in range(r, length)]
        rhs = [terms[n] for n in range(r, length)]
        solution = solve(RatMatrix.from_rows(rows, field=lambda x: x), rhs)
        if solution is not None:
            logger.debug(f"Найдена рекуррента порядка {r} по {length} членам")
            return LinRecSequence(tuple(terms[:r]), tuple(solution))
    raise InsufficientTermsError(
        f"Префикс длины {length} не переопределяет ни одну рекурренту (нужно >= 2r+1 членов)"
    )


@lru_cache(maxsize=4096)
def minimize(f: LinRecSequence) -> LinRecSequence:
    """
    Эквивалентная последовательность минимального порядка.

    Порядок результата равен рангу Ганкеля; восстановление по 2r+1 членам
    точное, так как две последовательности порядка <= r, совпадающие
    на 2r членах, равны.
    """
    if f.order == 0:
        return f
    result = infer_recurrence(prefix(f, 2 * f.order + 1))
    if result.order != f.order:
        logger.debug(f"Порядок понижен: {f.order} -> {result.order}")
    return result


# ============================================================================
# ХАРАКТЕРИСТИЧЕСКИЙ МНОГОЧЛЕН И СОПРОВОЖДАЮЩАЯ МАТРИЦА
# ============================================================================
def _to_sympy(x: Fraction) -> Rational:
    return Rational(x.numerator, x.denominator)


def _from_sympy(x: Any) -> Fraction:
    x = Rational(x)
    return Fraction(int(x.p), int(x.q))


def characteristic_polynomial(f: LinRecSequence) -> Poly:
    """m(t) = t^r - a_1 t^{r-1} - ... - a_r; для нулевой последовательности 1"""
    coefficients = [Rational(1)] + [-_to_sympy(a) for a in f.coeffs]
    return Poly(coefficients, T, domain=QQ)


def from_characteristic_polynomial(poly: Poly, initial: Sequence[Any]) -> LinRecSequence:
    """Последовательность по монному многочлену и начальным членам"""
    coefficients = poly.all_coeffs()
    if _from_sympy(coefficients[0]) != 1:
        raise InvalidInputError(f"Многочлен {poly.as_expr()} не монный")
    coeffs = tuple(-_from_sympy(c) for c in coefficients[1:])
    if len(initial) != len(coeffs):
        raise InvalidInputError("Число начальных членов не равно степени многочлена")
    return LinRecSequence(tuple(initial), coeffs)


def render_polynomial(poly: Poly) -> str:
    return str(poly.as_expr())


def companion_matrix(f: LinRecSequence) -> RatMatrix:
    """
    Сопровождающая матрица m(t): единицы на поддиагонали, последний столбец
    (a_r, ..., a_1). С B = e_1 и C = (f_0..f_{r-1}) даёт C A^i B = f_i.
    """
    r = f.order
    rows = [[Fraction(0)] * r for _ in range(r)]
    for i in range(1, r):
        rows[i][i - 1] = Fraction(1)
    for i in range(r):
        rows[i][r - 1] = f.coeffs[r - 1 - i]
    return RatMatrix(r, r, tuple(x for row in rows for x in row))


def state_space(f: LinRecSequence) -> Tuple[RatMatrix, RatMatrix, RatMatrix]:
    """Тройка (A, B, C) с f_i = C A^i B в сопровождающей форме"""
    r = f.order
    a = companion_matrix(f)
    b = RatMatrix.column([1] + [0] * (r - 1))
    c = RatMatrix.row_vector(list(f.initial))
    return a, b, c


# ============================================================================
# КОЛЬЦЕВЫЕ ОПЕРАЦИИ
# ============================================================================
def add(f: LinRecSequence, g: LinRecSequence) -> LinRecSequence:
    """Почленная сумма: рекуррента по произведению m_f * m_g, затем минимизация"""
    if f.order == 0:
        return minimize(g)
    if g.order == 0:
        return minimize(f)
    poly = characteristic_polynomial(f) * characteristic_polynomial(g)
    order = f.order + g.order
    tf, tg = prefix(f, order).terms, prefix(g, order).terms
    joint = from_characteristic_polynomial(poly, [x + y for x, y in zip(tf, tg)])
    return minimize(joint)


def scalar_mul(c: Any, f: LinRecSequence) -> LinRecSequence:
    """Умножение всех членов на скаляр"""
    c = parse_rational(c)
    return minimize(LinRecSequence(tuple(c * x for x in f.initial), f.coeffs))


def hadamard(f: LinRecSequence, g: LinRecSequence) -> LinRecSequence:
    """
    Произведение Адамара (f.g)_n = f_n g_n.

    Строится кронекерово произведение реализаций в сопровождающей форме
    (порядок <= r_f r_g), по нему считаются 2R+1 членов, затем минимизация.
    """
    if f.order == 0 or g.order == 0:
        return zero_sequence()
    af, bf, cf = state_space(f)
    ag, bg, cg = state_space(g)
    a, b, c = kron(af, ag), kron(bf, bg), kron(cf, cg)
    bound = f.order * g.order
    terms = []
    state = b
    for _ in range(2 * bound + 1):
        terms.append(mat_mul(c, state).entries[0])
        state = mat_mul(a, state)
    return infer_recurrence(SequencePrefix(tuple(terms)))


def shift(f: LinRecSequence, i: int) -> LinRecSequence:
    """(D^i f)_n = f_{n+i}: те же коэффициенты, окно сдвинуто на i"""
    if i < 0:
        raise InvalidInputError(f"Сдвиг должен быть неотрицательным, получено {i}")
    if i == 0 or f.order == 0:
        return f
    window = prefix(f, i + f.order).terms[i:]
    return LinRecSequence(tuple(window), f.coeffs)


def psi(f: LinRecSequence, n: int) -> LinRecSequence:
    """
    Действие psi^n, двойственное к t -> t^n: подпоследовательность (f_{nm})_m.

    Порядок результата не больше r, поэтому 2r+1 членов достаточно.
    """
    if n < 1:
        raise InvalidInputError(f"psi^n определено для n >= 1, получено {n}")
    if n == 1:
        return minimize(f)
    r = f.order
    if r == 0:
        return f
    terms = prefix(f, n * 2 * r + 1).terms[::n]
    return infer_recurrence(SequencePrefix(tuple(terms)))


# ============================================================================
# СРАВНЕНИЕ
# ============================================================================
def equal_upto(f: LinRecSequence, g: LinRecSequence, count: int) -> bool:
    return prefix(f, count).terms == prefix(g, count).terms


def equal(f: LinRecSequence, g: LinRecSequence) -> bool:
    """Структурное сравнение минимальных форм"""
    return minimize(f).key == minimize(g).key
