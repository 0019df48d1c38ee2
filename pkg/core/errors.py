# biring/core/errors.py
"""
Иерархия исключений проекта.

Все доменные ошибки наследуются от BiringError, чтобы CLI мог отличать
ошибки предметной области (код 3) от ошибок ввода (код 2).
"""


# ============================================================================
# БАЗОВОЕ ИСКЛЮЧЕНИЕ
# ============================================================================
class BiringError(Exception):
    """Базовая ошибка вычислений"""


# ============================================================================
# ЛИНЕЙНАЯ АЛГЕБРА
# ============================================================================
class DimensionMismatchError(BiringError, ValueError):
    """Несогласованные размеры матриц"""


class NonSquareMatrixError(BiringError, ValueError):
    """Операция требует квадратную матрицу"""


class SingularMatrixError(BiringError, ArithmeticError):
    """Матрица вырождена"""


# ============================================================================
# ПОСЛЕДОВАТЕЛЬНОСТИ
# ============================================================================
class InsufficientTermsError(BiringError):
    """Префикс не переопределяет ни одну рекурренту"""


# ============================================================================
# СИСТЕМЫ УПРАВЛЕНИЯ
# ============================================================================
class ZeroSequenceError(BiringError):
    """Нулевая последовательность не имеет канонической реализации с n >= 1"""


class NotControllableError(BiringError):
    """Система не вполне управляема"""


class NotCanonicalError(BiringError):
    """Система не каноническая (не cc или не co)"""


class NotEmbeddableError(BiringError):
    """Система ни cc, ни co: точки в грассманиане нет"""


class UnsupportedFieldError(BiringError):
    """Операция определена только над Q"""


# ============================================================================
# ПОДСЧЁТ ТОЧЕК
# ============================================================================
class EnumerationBudgetError(BiringError):
    """Перебор превышает допустимый бюджет без явного разрешения"""


# ============================================================================
# ВВОД
# ============================================================================
class TermBudgetError(BiringError):
    """Запрошено больше членов, чем разрешено лимитом"""


class InvalidInputError(BiringError, ValueError):
    """Некорректные входные данные (код выхода 2)"""
