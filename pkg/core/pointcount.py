# biring/core/pointcount.py
"""
Подсчёт точек пространств модулей систем над F_p.

Прямой перебор всех (A, B, C) ∈ M_n(F_p) × F_p^n × F_p^n служит оракулом
для замкнутых формул:
    #sys^cc_n(F_q) = #sys^co_n(F_q) = q^{2n}
    #sys^c_n(F_q)  = q^{2n} - q^{2n-1}
    #(sys^cc ∪ sys^co)_n(F_q) = q^{2n} + q^{2n-1}

Число орбит GL_n(F_p) на cc- и co-локусах получается делением на |GL_n|
после проверки свободы действия (тривиальные стабилизаторы).
"""

# ============================================================================
# ИМПОРТЫ
# ============================================================================
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice, product
from typing import Dict, FrozenSet, List, Optional, Tuple

from core.errors import EnumerationBudgetError, InvalidInputError
from core.exactla import PrimeField, RatMatrix, kernel_basis, try_inverse
from core.systems import (
    LinearSystem,
    conjugate,
    control_canonical_form,
    is_cc,
    is_co,
)

logger = logging.getLogger(__name__)

# ============================================================================
# КОНСТАНТЫ
# ============================================================================
KINDS = ('cc', 'co', 'canonical', 'union')

DEFAULT_ENUMERATION = {
    'max_n': 2,
    'max_p': 3,
    'workers': 1,
    'verify_freeness': True,
    'orbit_debug_max_n': 1,
}


# ============================================================================
# ТИПЫ ДАННЫХ
# ============================================================================
@dataclass(frozen=True)
class QuiverModuliSpec:
    """Колчан с двумя вершинами, вектор размерности (1, n), устойчивость θ"""
    n: int
    kind: str
    dimension_vector: Tuple[int, int]
    stability: Optional[Tuple[int, int]]


@dataclass(frozen=True)
class CountReport:
    n: int
    p: int
    kind: str
    raw_point_count: int
    group_order: int
    orbit_count: int
    closed_form: int
    free_action: bool


@dataclass(frozen=True)
class CountingPolynomial:
    """N(t) = Σ a_k t^k; coefficients[k] = a_k, без хвостовых нулей"""
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coefficients = [int(a) for a in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, 'coefficients', tuple(coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, q: int) -> int:
        return sum(a * q ** k for k, a in enumerate(self.coefficients))

    def __str__(self):
        parts = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            a = self.coefficients[k]
            if a == 0:
                continue
            monomial = '1' if k == 0 else ('t' if k == 1 else f't^{k}')
            if k == 0:
                body = str(abs(a))
            else:
                body = monomial if abs(a) == 1 else f'{abs(a)}*{monomial}'
            sign = '-' if a < 0 else '+'
            parts.append(f'{sign} {body}')
        if not parts:
            return '0'
        text = ' '.join(parts)
        return text[2:] if text.startswith('+ ') else '-' + text[2:]


def evaluate(polynomial: CountingPolynomial, q: int) -> int:
    return polynomial.evaluate(q)


# ============================================================================
# ВСПОМОГАТЕЛЬНЫЕ ФУНКЦИИ
# ============================================================================
def _check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise InvalidInputError(f"Неизвестный тип {kind!r}, допустимы: {', '.join(KINDS)}")
    return kind


def general_linear_order(n: int, p: int) -> int:
    """|GL_n(F_p)| = Π_{k<n} (p^n - p^k)"""
    order = 1
    for k in range(n):
        order *= p ** n - p ** k
    return order


def moduli_spec(kind: str, n: int) -> QuiverModuliSpec:
    """cc ↔ θ+ = (-n, 1), co ↔ θ- = (n, -1); для canonical и union устойчивость не фиксируется"""
    _check_kind(kind)
    stability = {'cc': (-n, 1), 'co': (n, -1)}.get(kind)
    return QuiverModuliSpec(n, kind, (1, n), stability)


def _in_locus(system: LinearSystem, kind: str) -> bool:
    cc, co = is_cc(system), is_co(system)
    if kind == 'cc':
        return cc
    if kind == 'co':
        return co
    if kind == 'canonical':
        return cc and co
    return cc or co


def _system_key(system: LinearSystem) -> Tuple[int, ...]:
    return tuple(int(x) for x in system.A.entries + system.B.entries + system.C.entries)


def _system_from_digits(n: int, field: PrimeField, a: Tuple[int, ...],
                        b: Tuple[int, ...], c: Tuple[int, ...]) -> LinearSystem:
    return LinearSystem(
        RatMatrix(n, n, tuple(field(x) for x in a)),
        RatMatrix(n, 1, tuple(field(x) for x in b)),
        RatMatrix(1, n, tuple(field(x) for x in c)),
    )


def _iter_systems(n: int, p: int, start: int = 0, stop: Optional[int] = None):
    field = PrimeField(p)
    vectors = list(product(range(p), repeat=n))
    for a in islice(product(range(p), repeat=n * n), start, stop):
        for b in vectors:
            for c in vectors:
                yield _system_from_digits(n, field, a, b, c)


def _iter_general_linear(n: int, p: int):
    field = PrimeField(p)
    for digits in product(range(p), repeat=n * n):
        g = RatMatrix(n, n, tuple(field(x) for x in digits))
        if try_inverse(g) is not None:
            yield g


# ============================================================================
# СТАБИЛИЗАТОРЫ
# ============================================================================
def stabilizer_is_trivial(system: LinearSystem) -> bool:
    """
    Стабилизатор Σ в GL_n(F_p) тривиален.

    g = I + X фиксирует Σ тогда и только тогда, когда XA - AX = 0,
    XB = 0, CX = 0. Пустое ядро даёт тривиальный стабилизатор; иначе
    перебираются ненулевые X из ядра и проверяется обратимость I + X.
    """
    n = system.n
    a, b, c = system.A, system.B, system.C
    zero = a.entries[0] * 0
    rows = []
    # неизвестные x_{ij} в порядке i*n + j
    for k in range(n):
        for l in range(n):
            row = [zero] * (n * n)
            for m in range(n):
                row[k * n + m] = row[k * n + m] + a.entry(m, l)
                row[m * n + l] = row[m * n + l] - a.entry(k, m)
            rows.append(row)
    for k in range(n):
        row = [zero] * (n * n)
        for m in range(n):
            row[k * n + m] = b.entry(m, 0)
        rows.append(row)
    for l in range(n):
        row = [zero] * (n * n)
        for m in range(n):
            row[m * n + l] = c.entry(0, m)
        rows.append(row)
    basis = kernel_basis(RatMatrix.from_rows(rows, field=lambda x: x))
    if not basis:
        return True
    p = zero.modulus
    identity = RatMatrix.identity(n, PrimeField(p))
    for weights in product(range(p), repeat=len(basis)):
        if not any(weights):
            continue
        x = [zero] * (n * n)
        for w, vector in zip(weights, basis):
            x = [xi + vi * w for xi, vi in zip(x, vector)]
        g = RatMatrix(n, n, tuple(i + xi for i, xi in zip(identity.entries, x)))
        if try_inverse(g) is not None:
            return False
    return True


# ============================================================================
# ПЕРЕБОР (ОДИН РАЗДЕЛ ПРОСТРАНСТВА МАТРИЦ A)
# ============================================================================
def _count_partition(n: int, p: int, start: int, stop: int, verify: bool) -> Dict:
    """Подсчёт по разделу [start, stop) индексов матрицы A; результат суммируется"""
    cc_count = co_count = canonical_count = 0
    classes: Counter = Counter()
    free = True
    for system in _iter_systems(n, p, start, stop):
        cc, co = is_cc(system), is_co(system)
        if cc:
            cc_count += 1
        if co:
            co_count += 1
        if cc and co:
            canonical_count += 1
            form = control_canonical_form(system)
            classes[tuple(int(x) for x in form.a + form.c)] += 1
        if verify and (cc or co) and not stabilizer_is_trivial(system):
            free = False
    return {
        'cc': cc_count,
        'co': co_count,
        'canonical': canonical_count,
        'classes': dict(classes),
        'free': free,
    }


@lru_cache(maxsize=32)
def _enumerate(n: int, p: int, workers: int, verify: bool) -> Dict:
    """Полный перебор для (n, p), кешируется"""
    total = p ** (n * n)
    workers = max(1, min(workers, total))
    chunk = -(-total // workers)
    bounds = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    logger.debug(f"Перебор n={n}, p={p}: {len(bounds)} разделов по {chunk} матриц A")

    if workers == 1:
        parts = [_count_partition(n, p, s, e, verify) for s, e in bounds]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_count_partition, n, p, s, e, verify) for s, e in bounds]
            parts = [f.result() for f in futures]

    merged = {'cc': 0, 'co': 0, 'canonical': 0, 'classes': Counter(), 'free': True}
    for part in parts:
        for field in ('cc', 'co', 'canonical'):
            merged[field] += part[field]
        merged['classes'].update(part['classes'])
        merged['free'] = merged['free'] and part['free']
    logger.info(
        f"n={n}, p={p}: cc={merged['cc']}, co={merged['co']}, "
        f"canonical={merged['canonical']}, классов={len(merged['classes'])}"
    )
    return merged


# ============================================================================
# КЛАСС PointCounter
# ============================================================================
class PointCounter:
    """Подсчёт точек и орбит с лимитами перебора из конфигурации"""

    def __init__(self, config_loader=None):
        self.config_loader = config_loader
        self.limits = self._load_limits()

    def _load_limits(self) -> Dict:
        limits = dict(DEFAULT_ENUMERATION)
        if self.config_loader is None:
            return limits
        for key in limits:
            value = self.config_loader.get_setting(f'enumeration.{key}')
            if value is not None:
                limits[key] = value
        return limits

    def _check_budget(self, n: int, p: int, allow_large: bool, max_n: Optional[int] = None):
        PrimeField(p)
        if n < 1:
            raise InvalidInputError(f"n должно быть >= 1, получено {n}")
        max_n = self.limits['max_n'] if max_n is None else max_n
        if allow_large:
            return
        if n > max_n or p > self.limits['max_p']:
            raise EnumerationBudgetError(
                f"Перебор для n={n}, p={p} превышает лимит (n <= {max_n}, p <= {self.limits['max_p']}); "
                f"используйте --allow-large"
            )

    # ------------------------------------------------------------------------
    # ОРБИТЫ (ОТЛАДОЧНЫЙ ПУТЬ)
    # ------------------------------------------------------------------------
    def orbit_partition(self, n: int, p: int, kind: str,
                        allow_large: bool = False) -> List[FrozenSet[Tuple[int, ...]]]:
        """Полное разбиение локуса на орбиты GL_n(F_p)"""
        _check_kind(kind)
        self._check_budget(n, p, allow_large, max_n=self.limits['orbit_debug_max_n'])
        group = list(_iter_general_linear(n, p))
        seen = set()
        orbits = []
        for system in _iter_systems(n, p):
            key = _system_key(system)
            if key in seen or not _in_locus(system, kind):
                continue
            orbit = frozenset(_system_key(conjugate(system, g)) for g in group)
            seen.update(orbit)
            orbits.append(orbit)
        logger.debug(f"Орбит {kind} при n={n}, p={p}: {len(orbits)}")
        return orbits

    # ------------------------------------------------------------------------
    # ПРЯМОЙ ПЕРЕБОР
    # ------------------------------------------------------------------------
    def brute_force_count(self, n: int, p: int, kind: str, allow_large: bool = False) -> CountReport:
        _check_kind(kind)
        self._check_budget(n, p, allow_large)
        verify = bool(self.limits['verify_freeness'])
        tally = _enumerate(n, p, int(self.limits['workers']), verify)
        group_order = general_linear_order(n, p)

        classes = tally['classes']
        if any(size != group_order for size in classes.values()):
            raise ArithmeticError("Класс канонической формы не совпадает по размеру с |GL_n|")
        canonical_orbits = len(classes)

        if verify and not tally['free']:
            raise ArithmeticError(f"Действие GL_{n}(F_{p}) на cc/co-локусе не свободно")
        for field in ('cc', 'co'):
            if tally[field] % group_order:
                raise ArithmeticError(f"#{field} = {tally[field]} не делится на |GL| = {group_order}")
        cc_orbits = tally['cc'] // group_order
        co_orbits = tally['co'] // group_order

        raw, orbits = {
            'cc': (tally['cc'], cc_orbits),
            'co': (tally['co'], co_orbits),
            'canonical': (tally['canonical'], canonical_orbits),
            'union': (tally['cc'] + tally['co'] - tally['canonical'],
                      cc_orbits + co_orbits - canonical_orbits),
        }[kind]

        if n <= self.limits['orbit_debug_max_n']:
            partition = self.orbit_partition(n, p, kind, allow_large=allow_large)
            if len(partition) != orbits:
                raise ArithmeticError(
                    f"Разбиение на орбиты ({len(partition)}) расходится с подсчётом ({orbits})"
                )

        return CountReport(
            n=n,
            p=p,
            kind=kind,
            raw_point_count=raw,
            group_order=group_order,
            orbit_count=orbits,
            closed_form=closed_form_count(n, p, kind),
            free_action=tally['free'] if verify else True,
        )


def brute_force_count(n: int, p: int, kind: str, allow_large: bool = False,
                      config_loader=None) -> CountReport:
    return PointCounter(config_loader).brute_force_count(n, p, kind, allow_large)


def orbit_partition(n: int, p: int, kind: str, allow_large: bool = False,
                    config_loader=None) -> List[FrozenSet[Tuple[int, ...]]]:
    return PointCounter(config_loader).orbit_partition(n, p, kind, allow_large)


# ============================================================================
# ЗАМКНУТЫЕ ФОРМУЛЫ
# ============================================================================
def closed_form_count(n: int, q: int, kind: str) -> int:
    _check_kind(kind)
    if q < 2 or n < 1:
        raise InvalidInputError(f"Требуется q >= 2 и n >= 1, получено q={q}, n={n}")
    return counting_polynomial(kind, n).evaluate(q)


def counting_polynomial(kind: str, n: int) -> CountingPolynomial:
    """Многочлен N(t) с #X(F_q) = N(q); для n = 0 это точка, N = 1"""
    _check_kind(kind)
    if n < 0:
        raise InvalidInputError(f"n должно быть >= 0, получено {n}")
    if n == 0:
        return CountingPolynomial((1,))
    coefficients = [0] * (2 * n + 1)
    coefficients[2 * n] = 1
    if kind == 'canonical':
        coefficients[2 * n - 1] = -1
    elif kind == 'union':
        coefficients[2 * n - 1] = 1
    return CountingPolynomial(tuple(coefficients))


def closure_counting_polynomial(max_n: int) -> CountingPolynomial:
    """
    1 + Σ_{n=1}^{max_n} (t^{2n} + t^{2n-1}) = Σ_{k=0}^{2 max_n} t^k:
    ровно одна клетка в каждой размерности.
    """
    if max_n < 0:
        raise InvalidInputError(f"max_n должно быть >= 0, получено {max_n}")
    total = [0] * (2 * max_n + 1)
    for n in range(max_n + 1):
        for k, a in enumerate(counting_polynomial('union', n).coefficients):
            total[k] += a
    return CountingPolynomial(tuple(total))
