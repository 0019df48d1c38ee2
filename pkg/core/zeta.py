# biring/core/zeta.py
"""
Дзета-функции над F_1 для многообразий F_1-типа.

По считающему многочлену N(t) = Σ a_k t^k:
    дзета Курокава      ζ(s) = Π 1/(s-k)^{a_k}
    мотив Манина        Z(s) = Π ((s-k)/2π)^{a_k}
Бесконечные произведения представлены только усечениями.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from core.errors import InvalidInputError
from core.pointcount import CountingPolynomial, closure_counting_polynomial

logger = logging.getLogger(__name__)

PLAIN = 'plain'
TWO_PI = 'two_pi'


@dataclass(frozen=True)
class ZetaExpr:
    """Π (s-k)^{e_k}, при two_pi каждый множитель делится на 2π"""
    factors: Tuple[Tuple[int, int], ...]
    normalization: str = PLAIN
    truncation: Optional[int] = field(default=None)

    def __post_init__(self):
        if self.normalization not in (PLAIN, TWO_PI):
            raise InvalidInputError(f"Неизвестная нормировка {self.normalization!r}")
        merged = {}
        for k, exponent in self.factors:
            if k < 0:
                raise InvalidInputError(f"Степень множителя должна быть >= 0, получено {k}")
            merged[int(k)] = merged.get(int(k), 0) + int(exponent)
        factors = tuple((k, e) for k, e in sorted(merged.items()) if e != 0)
        object.__setattr__(self, 'factors', factors)

    @property
    def two_pi_power(self) -> int:
        """Степень 2π в знаменателе (отрицательная: в числителе)"""
        if self.normalization != TWO_PI:
            return 0
        return sum(e for _, e in self.factors)

    def invert(self) -> 'ZetaExpr':
        """Обратные показатели и смена нормировки: Курокава ↔ Манин"""
        normalization = TWO_PI if self.normalization == PLAIN else PLAIN
        return ZetaExpr(tuple((k, -e) for k, e in self.factors), normalization, self.truncation)

    @property
    def text(self) -> str:
        return render(self)


# ============================================================================
# ПОСТРОЕНИЕ
# ============================================================================
def kurokawa_zeta(polynomial: CountingPolynomial) -> ZetaExpr:
    return ZetaExpr(tuple((k, -a) for k, a in enumerate(polynomial.coefficients)), PLAIN)


def manin_motive(polynomial: CountingPolynomial) -> ZetaExpr:
    return ZetaExpr(tuple((k, a) for k, a in enumerate(polynomial.coefficients)), TWO_PI)


def closure_motive(truncation: int) -> ZetaExpr:
    """Π_{k=0}^{K} (s-k)/2π: по одной клетке в каждой размерности"""
    if truncation < 0:
        raise InvalidInputError(f"Усечение должно быть >= 0, получено {truncation}")
    # closure_counting_polynomial((K+1)//2) покрывает степени 0..K (и K+1 при нечётном K)
    coefficients = closure_counting_polynomial((truncation + 1) // 2).coefficients[:truncation + 1]
    motive = manin_motive(CountingPolynomial(coefficients))
    return ZetaExpr(motive.factors, TWO_PI, truncation)


def affine_space_polynomial(n: int) -> CountingPolynomial:
    """#A^n(F_q) = q^n"""
    return CountingPolynomial(tuple([0] * n + [1]))


def projective_space_polynomial(n: int) -> CountingPolynomial:
    """#P^n(F_q) = 1 + q + ... + q^n"""
    return CountingPolynomial(tuple([1] * (n + 1)))


# ============================================================================
# ОТОБРАЖЕНИЕ
# ============================================================================
def _power(base: str, exponent: int) -> str:
    return base if exponent == 1 else f"{base}^{exponent}"


def render(z: ZetaExpr) -> str:
    """
    Текстовая форма: множители по возрастанию k, показатель 1 без скобок.
    Примеры: "1/((s-0)(s-1))", "(s-0)(s-1)/(2*pi)^2".
    """
    numerator: List[str] = []
    denominator: List[str] = []
    for k, e in z.factors:
        item = f"(s-{k})"
        if e > 0:
            numerator.append(_power(item, e))
        else:
            denominator.append(_power(item, -e))
    power = z.two_pi_power
    if power > 0:
        denominator.append(_power("(2*pi)", power))
    elif power < 0:
        numerator.append(_power("(2*pi)", -power))

    top = "".join(numerator) or "1"
    if not denominator:
        return top
    if len(denominator) == 1:
        return f"{top}/{denominator[0]}"
    return f"{top}/({''.join(denominator)})"
