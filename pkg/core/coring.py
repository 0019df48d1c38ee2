# biring/core/coring.py
"""
Ко-кольцевая структура: матрицы Ганкеля, копроизведение Ларсона–Тафта,
коединица и характеры pi_n.

Копроизведение всегда считается над Q; целочисленность (|det H| = 1)
сообщается флагом, а не навязывается.
"""

# ============================================================================
# ИМПОРТЫ
# ============================================================================
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from core.exactla import RatMatrix, det, is_integer, mat_inverse
from core.seqcore import (
    LinRecSequence,
    add,
    minimize,
    scalar_mul,
    shift,
    term,
    zero_sequence,
)

logger = logging.getLogger(__name__)


# ============================================================================
# ТИПЫ ДАННЫХ
# ============================================================================
@dataclass(frozen=True)
class HankelMatrix:
    """t×t матрица Ганкеля с элементами f_{i+j}"""
    source: LinRecSequence
    size: int
    matrix: RatMatrix


@dataclass(frozen=True)
class Summand:
    coeff: Fraction
    left: LinRecSequence
    right: LinRecSequence


@dataclass(frozen=True)
class TensorElement:
    """
    Формальная сумма coeff · left ⊗ right.

    Нормализована: слагаемые с одинаковыми (минимальными) ключами слиты,
    нулевые коэффициенты выброшены, порядок детерминирован.
    """
    summands: Tuple[Summand, ...]

    @classmethod
    def build(cls, raw: List[Tuple[Fraction, LinRecSequence, LinRecSequence]]) -> 'TensorElement':
        merged: Dict[tuple, Fraction] = {}
        sequences: Dict[tuple, Tuple[LinRecSequence, LinRecSequence]] = {}
        for coeff, left, right in raw:
            left, right = minimize(left), minimize(right)
            if left.order == 0 or right.order == 0:
                continue
            key = (left.key, right.key)
            merged[key] = merged.get(key, Fraction(0)) + Fraction(coeff)
            sequences[key] = (left, right)
        summands = tuple(
            Summand(merged[key], *sequences[key])
            for key in sorted(merged)
            if merged[key] != 0
        )
        return cls(summands)

    def __len__(self):
        return len(self.summands)


# ============================================================================
# МАТРИЦА ГАНКЕЛЯ
# ============================================================================
def hankel(f: LinRecSequence, t: int) -> HankelMatrix:
    """t×t матрица (f_{i+j})"""
    if t < 0:
        raise ValueError(f"Размер матрицы Ганкеля должен быть неотрицательным, получено {t}")
    values = [term(f, k) for k in range(max(2 * t - 1, 0))]
    entries = tuple(values[i + j] for i in range(t) for j in range(t))
    return HankelMatrix(f, t, RatMatrix(t, t, entries))


def hankel_rank(f: LinRecSequence) -> int:
    """
    Наибольшее t с обратимой H_t(f); равно минимальному порядку рекурренты.
    """
    t = minimize(f).order
    if det(hankel(f, t).matrix) == 0:
        raise ArithmeticError(f"Матрица Ганкеля размера {t} вырождена для {f}")
    return t


def hankel_det(f: LinRecSequence) -> Fraction:
    """det H_t(f) при t = hankel_rank(f); для 0×0 равен 1"""
    return det(hankel(f, hankel_rank(f)).matrix)


# ============================================================================
# КОПРОИЗВЕДЕНИЕ
# ============================================================================
@lru_cache(maxsize=1024)
def coproduct(f: LinRecSequence) -> TensorElement:
    """Δ(f) = Σ s_ij (D^i f) ⊗ (D^j f), где (s_ij) = H(f)^{-1}"""
    f = minimize(f)
    t = f.order
    if t == 0:
        return TensorElement(())
    inverse = mat_inverse(hankel(f, t).matrix)
    shifts = [shift(f, i) for i in range(t)]
    raw = [(inverse.entry(i, j), shifts[i], shifts[j]) for i in range(t) for j in range(t)]
    tensor = TensorElement.build(raw)
    logger.debug(f"Δ({f}): {len(tensor)} слагаемых")
    return tensor


def is_integral_coproduct(f: LinRecSequence) -> bool:
    """|det H(f)| = 1: условие целочисленности Δ(f)"""
    return abs(hankel_det(f)) == 1


def has_integer_coefficients(tensor: TensorElement) -> bool:
    return all(is_integer(s.coeff) for s in tensor.summands)


def swap(tensor: TensorElement) -> TensorElement:
    """left ↔ right"""
    return TensorElement.build([(s.coeff, s.right, s.left) for s in tensor.summands])


# ============================================================================
# СПАРИВАНИЯ И ВЫЧИСЛЕНИЕ
# ============================================================================
def evaluate_pair(f: LinRecSequence, a: int) -> Fraction:
    """f(t^a) = f_a"""
    return term(f, a)


def evaluate_tensor(tensor: TensorElement, a: int, b: int) -> Fraction:
    """Σ coeff · left_a · right_b"""
    total = Fraction(0)
    for s in tensor.summands:
        total += s.coeff * term(s.left, a) * term(s.right, b)
    return total


def evaluate_iterated(f: LinRecSequence, a: int, b: int, c: int, side: str = 'left') -> Fraction:
    """
    (Δ⊗id)Δ(f) или (id⊗Δ)Δ(f) в точке t^a ⊗ t^b ⊗ t^c.
    Коассоциативность: оба значения равны f_{a+b+c}.
    """
    total = Fraction(0)
    for s in coproduct(f).summands:
        if side == 'left':
            total += s.coeff * evaluate_tensor(coproduct(s.left), a, b) * term(s.right, c)
        elif side == 'right':
            total += s.coeff * term(s.left, a) * evaluate_tensor(coproduct(s.right), b, c)
        else:
            raise ValueError(f"side должен быть 'left' или 'right', получено {side!r}")
    return total


def apply_counit(tensor: TensorElement, side: str = 'left') -> LinRecSequence:
    """(ε⊗id) или (id⊗ε), собранные в последовательность"""
    result = zero_sequence()
    for s in tensor.summands:
        if side == 'left':
            result = add(result, scalar_mul(s.coeff * counit(s.left), s.right))
        else:
            result = add(result, scalar_mul(s.coeff * counit(s.right), s.left))
    return result


# ============================================================================
# КОЕДИНИЦА И ХАРАКТЕРЫ
# ============================================================================
def counit(f: LinRecSequence) -> Fraction:
    """ε(f) = f_0"""
    return term(f, 0)


def pi_projection(f: LinRecSequence) -> Fraction:
    """π(f) = f_1"""
    return term(f, 1)


def pi_n_character(f: LinRecSequence, n: int) -> Fraction:
    """π_n(f) = f_n; кольцевой гомоморфизм для произведения Адамара"""
    return term(f, n)
