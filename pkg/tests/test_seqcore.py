# biring/tests/test_seqcore.py
"""
Тесты кольца линейных рекуррентных последовательностей.
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

from core.errors import InsufficientTermsError, InvalidInputError
from core.seqcore import (
    LinRecSequence,
    SequencePrefix,
    add,
    characteristic_polynomial,
    companion_matrix,
    constant,
    equal,
    equal_upto,
    fibonacci,
    from_characteristic_polynomial,
    geometric,
    hadamard,
    infer_recurrence,
    lucas,
    minimize,
    prefix,
    psi,
    scalar_mul,
    shift,
    term,
    unit_sequence,
    zero_sequence,
)
from core.exactla import RatMatrix


def seq(initial, coeffs):
    return LinRecSequence(tuple(initial), tuple(coeffs))


def random_sequences(count, seed=7, max_order=3):
    rng = random.Random(seed)
    result = []
    for _ in range(count):
        r = rng.randint(1, max_order)
        result.append(seq([rng.randint(-3, 3) for _ in range(r)], [rng.randint(-2, 2) for _ in range(r)]))
    return result


# ============================================================================
# ТЕСТ 1: ЧЛЕНЫ И ПРЕФИКСЫ
# ============================================================================
def test_terms_and_prefix():
    print("🧪 Тест 1: term / prefix")
    f = fibonacci()
    assert term(f, 10) == 55
    assert prefix(f, 8).terms == tuple(Fraction(x) for x in (0, 1, 1, 2, 3, 5, 8, 13))
    assert prefix(lucas(), 5).terms == (2, 1, 3, 4, 7)
    assert term(unit_sequence(), 0) == 1
    assert term(zero_sequence(), 100) == 0
    assert prefix(f, 1).terms == (0,)
    with pytest.raises(InvalidInputError):
        term(f, -1)


def test_invalid_sequence():
    with pytest.raises(InvalidInputError):
        seq([1, 2], [1])
    with pytest.raises(InvalidInputError):
        seq([1.5], [1])


# ============================================================================
# ТЕСТ 2: ВОССТАНОВЛЕНИЕ РЕКУРРЕНТЫ
# ============================================================================
def test_infer_recurrence():
    print("\n🧪 Тест 2: infer_recurrence")
    f = infer_recurrence(SequencePrefix((0, 1, 1, 2, 3, 5, 8, 13)))
    assert f.key == ((0, 1), (1, 1))

    assert infer_recurrence(SequencePrefix((0, 0, 0))) == zero_sequence()
    with pytest.raises(InsufficientTermsError):
        infer_recurrence(SequencePrefix((1, 2)))
    with pytest.raises(InsufficientTermsError):
        infer_recurrence(SequencePrefix(()))

    # рациональные члены
    g = infer_recurrence(SequencePrefix(("1", "1/2", "1/4")))
    assert g.key == ((1,), (Fraction(1, 2),))


def test_minimize():
    print("\n🧪 Тест 3: minimize")
    assert minimize(seq([1, 2], [3, -2])).key == ((1,), (2,))
    assert minimize(fibonacci()) == fibonacci()
    assert minimize(seq([0, 0], [1, 1])) == zero_sequence()
    for f in random_sequences(20):
        g = minimize(f)
        assert g.order <= f.order
        assert prefix(g, 12).terms == prefix(f, 12).terms


# ============================================================================
# ТЕСТ 4: КОЛЬЦЕВЫЕ ОПЕРАЦИИ
# ============================================================================
def test_add_and_scalar():
    print("\n🧪 Тест 4: add / scalar_mul")
    s = add(geometric(2), geometric(3))
    assert s.key == ((2, 5), (5, -6))
    assert add(fibonacci(), zero_sequence()) == fibonacci()
    assert scalar_mul(0, fibonacci()) == zero_sequence()
    assert equal(add(fibonacci(), scalar_mul(-1, fibonacci())), zero_sequence())
    assert prefix(scalar_mul("1/2", lucas()), 3).terms == (1, Fraction(1, 2), Fraction(3, 2))


def test_hadamard():
    print("\n🧪 Тест 5: hadamard")
    f2 = hadamard(fibonacci(), fibonacci())
    assert f2.key == ((0, 1, 1), (2, 2, -1))
    assert equal(hadamard(unit_sequence(), fibonacci()), fibonacci())
    assert hadamard(fibonacci(), zero_sequence()) == zero_sequence()
    assert equal(hadamard(geometric(2), geometric(3)), geometric(6))


def test_ring_laws():
    print("\n🧪 Тест 6: законы кольца")
    corpus = [fibonacci(), lucas(), geometric(-2, 3), constant(5)] + random_sequences(4, seed=11, max_order=2)
    for f in corpus:
        assert equal(hadamard(f, unit_sequence()), f)
        for g in corpus[:4]:
            assert equal(hadamard(f, g), hadamard(g, f))
            assert equal(add(f, g), add(g, f))
            for h in corpus[:3]:
                assert equal(hadamard(hadamard(f, g), h), hadamard(f, hadamard(g, h)))
                assert equal(hadamard(f, add(g, h)), add(hadamard(f, g), hadamard(f, h)))


def test_pi_n_multiplicative():
    """f_n: гомоморфизм колец для произведения Адамара"""
    corpus = [fibonacci(), lucas()] + random_sequences(3, seed=5)
    for f in corpus:
        for g in corpus:
            product = hadamard(f, g)
            for n in range(11):
                assert term(product, n) == term(f, n) * term(g, n)


# ============================================================================
# ТЕСТ 7: СДВИГ И PSI
# ============================================================================
def test_shift_and_psi():
    print("\n🧪 Тест 7: shift / psi")
    assert shift(fibonacci(), 1).initial == (1, 1)
    assert prefix(shift(fibonacci(), 3), 3).terms == (2, 3, 5)

    p2 = psi(fibonacci(), 2)
    assert p2.coeffs == (3, -1)
    assert prefix(p2, 5).terms == (0, 1, 3, 8, 21)
    assert equal(psi(fibonacci(), 1), fibonacci())
    assert psi(zero_sequence(), 3) == zero_sequence()
    with pytest.raises(InvalidInputError):
        psi(fibonacci(), 0)

    for f in [fibonacci(), lucas()] + random_sequences(3, seed=3):
        assert equal(psi(psi(f, 2), 3), psi(psi(f, 3), 2))
        assert equal(psi(f, 6), psi(psi(f, 2), 3))


# ============================================================================
# ТЕСТ 8: ХАРАКТЕРИСТИЧЕСКИЙ МНОГОЧЛЕН
# ============================================================================
def test_characteristic_polynomial():
    print("\n🧪 Тест 8: characteristic_polynomial / companion_matrix")
    poly = characteristic_polynomial(fibonacci())
    assert [int(c) for c in poly.all_coeffs()] == [1, -1, -1]
    assert from_characteristic_polynomial(poly, [2, 1]) == lucas()
    assert characteristic_polynomial(zero_sequence()).degree() == 0

    assert companion_matrix(fibonacci()) == RatMatrix.from_rows([[0, 1], [1, 1]])


# ============================================================================
# ТЕСТ 9: СРАВНЕНИЕ И ЦЕЛОЧИСЛЕННОСТЬ
# ============================================================================
def test_equality():
    print("\n🧪 Тест 9: equal / equal_upto")
    padded = seq([1, 2], [3, -2])
    assert equal(padded, geometric(2))
    assert equal_upto(padded, geometric(2), 20)
    assert not equal(fibonacci(), lucas())
    assert not equal_upto(fibonacci(), lucas(), 1)
    # совпадают на первых двух членах, но не дальше
    assert equal_upto(fibonacci(), seq([0, 1], [2, 0]), 2)
    assert not equal(fibonacci(), seq([0, 1], [2, 0]))

    assert prefix(add(fibonacci(), fibonacci()), 4).terms == (0, 2, 2, 4)
    assert add(fibonacci(), fibonacci()).initial == (0, 2)
    assert prefix(scalar_mul(2, fibonacci()), 4).terms == (0, 2, 2, 4)
    assert prefix(geometric(2), 4).terms == (1, 2, 4, 8)
    assert equal(shift(geometric(2), 2), scalar_mul(4, geometric(2)))
    assert equal(psi(geometric(2), 3), geometric(8))


def test_hadamard_terms_random():
    corpus = random_sequences(12, seed=99, max_order=4)
    for f, g in zip(corpus[::2], corpus[1::2]):
        product = hadamard(f, g)
        for n in range(51):
            assert term(product, n) == term(f, n) * term(g, n)


def test_integrality_preserved():
    corpus = [fibonacci(), lucas()] + random_sequences(4, seed=13)
    for f in corpus:
        assert f.integral
        for g in corpus[:3]:
            assert hadamard(f, g).integral
            assert add(f, g).integral
        assert shift(f, 3).integral
        assert psi(f, 2).integral
    assert not scalar_mul("1/3", fibonacci()).integral
