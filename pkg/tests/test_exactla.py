# biring/tests/test_exactla.py
"""
Тесты точной линейной алгебры над Q и F_p.
"""

# ============================================================================
# ИМПОРТЫ
# ============================================================================
import sys
import os
import random
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.errors import (
    DimensionMismatchError,
    InvalidInputError,
    NonSquareMatrixError,
    SingularMatrixError,
)
from core.exactla import (
    PrimeField,
    RatMatrix,
    det,
    format_rational,
    kernel_basis,
    kron,
    mat_inverse,
    mat_mul,
    mat_pow,
    mat_vec,
    parse_rational,
    rank,
    solve,
    try_inverse,
)


def m(rows, field=parse_rational):
    return RatMatrix.from_rows(rows, field=field)


# ============================================================================
# ТЕСТ 1: РАЗБОР И ФОРМАТ ЧИСЕЛ
# ============================================================================
def test_parse_rational():
    print("🧪 Тест 1: parse_rational")
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -7 ") == Fraction(-7)
    assert parse_rational(4) == Fraction(4)
    for bad in (1.5, True, "1/0", "abc", None):
        with pytest.raises(InvalidInputError):
            parse_rational(bad)
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(Fraction(10)) == "10"


# ============================================================================
# ТЕСТ 2: ОПРЕДЕЛИТЕЛЬ, РАНГ, ОБРАТНАЯ
# ============================================================================
def test_det_rank_inverse():
    print("\n🧪 Тест 2: det / rank / inverse")
    a = m([[1, 2], [3, 4]])
    assert det(a) == -2
    assert rank(a) == 2
    assert det(RatMatrix(0, 0, ())) == 1

    inverse = mat_inverse(m([[2, 1], [1, 1]]))
    assert inverse == m([[1, -1], [-1, 2]])

    singular = m([[1, 2], [2, 4]])
    assert rank(singular) == 1
    assert det(singular) == 0
    assert try_inverse(singular) is None
    with pytest.raises(SingularMatrixError):
        mat_inverse(singular)

    # перестановка строк меняет знак
    assert det(m([[0, 1], [1, 0]])) == -1
    assert det(m([["1/2", 0], [0, "2/3"]])) == Fraction(1, 3)


def test_shape_errors():
    with pytest.raises(NonSquareMatrixError):
        det(m([[1, 2, 3]]))
    with pytest.raises(DimensionMismatchError):
        mat_mul(m([[1, 2]]), m([[1, 2]]))
    with pytest.raises(DimensionMismatchError):
        m([[1, 2], [3]])


# ============================================================================
# ТЕСТ 3: ЯДРО И РЕШЕНИЕ СИСТЕМ
# ============================================================================
def test_kernel_and_solve():
    print("\n🧪 Тест 3: kernel_basis / solve")
    assert kernel_basis(m([[1, 2], [2, 4]])) == [(Fraction(-2), Fraction(1))]
    assert kernel_basis(m([[1, 0], [0, 1]])) == []

    solution = solve(m([[1, 1], [1, -1]]), [Fraction(3), Fraction(1)])
    assert solution == [2, 1]
    assert solve(m([[1], [1]]), [Fraction(1), Fraction(2)]) is None


# ============================================================================
# ТЕСТ 4: ПРОСТЫЕ ПОЛЯ
# ============================================================================
def test_prime_field():
    print("\n🧪 Тест 4: F_p")
    f5 = PrimeField(5)
    assert f5(3) * f5(2) == 1
    assert f5(3) + 4 == 2
    assert PrimeField(7)(3).inverse() == 5
    assert f5(2) ** -1 == 3
    assert len(f5.elements()) == 5
    with pytest.raises(InvalidInputError):
        PrimeField(4)

    f3 = PrimeField(3)
    a = m([[1, 1], [1, 2]], field=f3)
    assert det(a) == 1
    singular = m([[1, 2], [2, 1]], field=f3)
    assert rank(singular) == 1
    assert mat_mul(a, mat_inverse(a)) == RatMatrix.identity(2, f3)


# ============================================================================
# ТЕСТ 5: СТЕПЕНИ И КРОНЕКЕРОВО ПРОИЗВЕДЕНИЕ
# ============================================================================
def test_power_and_kron():
    print("\n🧪 Тест 5: mat_pow / kron")
    assert mat_pow(m([[1, 1], [1, 0]]), 10).entry(0, 1) == 55
    assert mat_pow(m([[2]]), 0) == m([[1]])

    product = kron(RatMatrix.identity(2), m([[1, 2], [3, 4]]))
    assert (product.rows, product.cols) == (4, 4)
    assert product.entry(2, 3) == 2
    assert product.to_rows() == [[1, 2, 0, 0], [3, 4, 0, 0], [0, 0, 1, 2], [0, 0, 3, 4]]
    assert product.entry(0, 3) == 0
    assert all(isinstance(x, Fraction) for x in product.entries)


def test_reference_values():
    fib = m([[0, 1], [1, 1]])
    assert mat_mul(fib, fib) == m([[1, 1], [1, 2]])
    assert mat_inverse(fib) == m([[-1, 1], [1, 0]])
    assert rank(m([[0, 1], [1, 1], [1, 2]])) == 2
    assert rank(RatMatrix.zeros(3, 2)) == 0
    assert rank(RatMatrix.identity(3)) == 3
    assert mat_mul(m([[2]]), m([[3]])) == m([[6]])


# ============================================================================
# ТЕСТ 6: ИНВАРИАНТЫ НА СЛУЧАЙНЫХ МАТРИЦАХ
# ============================================================================
def random_rational_matrix(rng, rows, cols):
    return m([[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)]
              for _ in range(rows)])


def test_random_matrix_invariants():
    print("\n🧪 Тест 6: случайные матрицы над Q")
    rng = random.Random(2024)
    inverted = 0
    for _ in range(50):
        a = random_rational_matrix(rng, 3, 3)
        b = random_rational_matrix(rng, 3, 3)
        assert det(mat_mul(a, b)) == det(a) * det(b)
        assert rank(a) == rank(a.transpose())
        inverse = try_inverse(a)
        if inverse is None:
            assert det(a) == 0
            continue
        inverted += 1
        assert mat_mul(a, inverse) == RatMatrix.identity(3)
        assert mat_mul(inverse, a) == RatMatrix.identity(3)
    assert inverted > 0


def test_random_kernel_vectors():
    rng = random.Random(7)
    for _ in range(50):
        a = random_rational_matrix(rng, rng.randint(1, 3), 4)
        basis = kernel_basis(a)
        assert len(basis) == a.cols - rank(a)
        for v in basis:
            assert all(x == 0 for x in mat_vec(a, v))


# ============================================================================
# ТЕСТ 7: АКСИОМЫ ПОЛЯ F_p
# ============================================================================
@pytest.mark.parametrize("p", [2, 3, 5])
def test_prime_field_axioms(p):
    field = PrimeField(p)
    elements = field.elements()
    zero, one = field.zero, field.one
    for x in elements:
        assert x + zero == x
        assert x * one == x
        assert x + (-x) == zero
        if x != zero:
            assert x * x.inverse() == one
            assert x / x == one
        for y in elements:
            assert x + y == y + x
            assert x * y == y * x
            assert (x - y) + y == x
            for z in elements:
                assert (x + y) + z == x + (y + z)
                assert (x * y) * z == x * (y * z)
                assert x * (y + z) == x * y + x * z


def test_prime_field_hashing():
    f5 = PrimeField(5)
    assert len({f5(3), f5(8), f5(-2)}) == 1
    assert {f5(1): 'one'}[f5(6)] == 'one'
    assert PrimeField(3)(1) != f5(1)
