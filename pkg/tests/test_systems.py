# biring/tests/test_systems.py
"""
Тесты систем управления: реализация, канонические формы, транспонирование,
вложение в грассманиан.
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
    NotCanonicalError,
    NotControllableError,
    NotEmbeddableError,
    UnsupportedFieldError,
    ZeroSequenceError,
)
from core.exactla import PrimeField, RatMatrix, det, mat_mul, try_inverse
from core.seqcore import (
    LinRecSequence,
    equal,
    fibonacci,
    geometric,
    hadamard,
    lucas,
    minimize,
    unit_sequence,
    zero_sequence,
)
from core.coring import hankel_rank
from core.systems import (
    LinearSystem,
    cell_dimension,
    chart_minor,
    conjugate,
    control_canonical_form,
    controllability_matrix,
    equivalent,
    grassmann_embed,
    hankel_factorization_holds,
    in_cell,
    is_canonical,
    is_cc,
    is_co,
    markov,
    markov_sequence,
    markov_terms,
    observability_matrix,
    realize,
    transpose_system,
)


def system(a, b, c):
    return LinearSystem.from_lists(a, b, c)


def random_sequence(rng, max_order=4):
    while True:
        r = rng.randint(1, max_order)
        f = LinRecSequence(tuple(rng.randint(-5, 5) for _ in range(r)),
                           tuple(rng.randint(-3, 3) for _ in range(r)))
        if minimize(f).order > 0:
            return f


def random_system(rng, n):
    return system(
        [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)],
        [rng.randint(-2, 2) for _ in range(n)],
        [rng.randint(-2, 2) for _ in range(n)],
    )


def random_invertible(rng, n):
    while True:
        g = RatMatrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if try_inverse(g) is not None:
            return g


# ============================================================================
# ТЕСТ 1: МАТРИЦЫ УПРАВЛЯЕМОСТИ И НАБЛЮДАЕМОСТИ
# ============================================================================
def test_controllability_and_observability():
    print("🧪 Тест 1: c(Σ) / o(Σ)")
    assert controllability_matrix(system([[2]], [3], [5])).to_rows() == [[3]]
    assert observability_matrix(system([[2]], [3], [5])).to_rows() == [[5]]

    fib = realize(fibonacci())
    assert det(controllability_matrix(fib)) != 0
    assert det(observability_matrix(fib)) != 0

    zero_b = system([[1, 2], [3, 4]], [0, 0], [1, 1])
    assert controllability_matrix(zero_b).is_zero()
    assert not is_cc(zero_b)
    assert observability_matrix(transpose_system(zero_b)).is_zero()


def test_canonicity_predicates():
    s = system([[0]], [1], [0])
    assert is_cc(s) and not is_co(s) and not is_canonical(s)
    assert is_canonical(realize(fibonacci()))
    repeated = system([[1, 0], [0, 1]], [1, 0], [1, 0])
    assert not is_cc(repeated)


# ============================================================================
# ТЕСТ 2: МАРКОВСКИЕ ПАРАМЕТРЫ И РЕАЛИЗАЦИЯ
# ============================================================================
def test_markov():
    print("\n🧪 Тест 2: markov / realize")
    assert markov(system([[2]], [1], [3]), 4).terms == (3, 6, 12, 24)
    assert markov_sequence(system([[2]], [1], [3])).key == ((3,), (2,))
    assert markov_sequence(system([[1, 1], [0, 1]], [0, 0], [1, 1])) == zero_sequence()


def test_realize_examples():
    fib = realize(fibonacci())
    assert fib.n == 2
    assert fib.A.to_rows() == [[0, 1], [1, 1]]
    assert fib.B.entries == (1, 0)
    assert fib.C.entries == (0, 1)
    assert markov(fib, 5).terms == (0, 1, 1, 2, 3)

    g = realize(geometric(-4, 3))
    assert (g.A.entries, g.B.entries, g.C.entries) == ((-4,), (1,), (3,))
    u = realize(unit_sequence())
    assert (u.A.entries, u.B.entries, u.C.entries) == ((1,), (1,), (1,))

    with pytest.raises(ZeroSequenceError):
        realize(zero_sequence())


def test_realization_round_trip():
    rng = random.Random(17)
    for _ in range(100):
        f = random_sequence(rng)
        s = realize(f)
        assert s.n == hankel_rank(f)
        assert is_canonical(s)
        assert markov_sequence(s) == minimize(f)
        assert hankel_factorization_holds(s)


# ============================================================================
# ТЕСТ 3: ЭКВИВАЛЕНТНОСТЬ И ЗАМЕНА БАЗИСА
# ============================================================================
def test_equivalence():
    print("\n🧪 Тест 3: equivalent / conjugate")
    fib = realize(fibonacci())
    assert equivalent(fib, fib)
    g = RatMatrix.from_rows([[1, 1], [0, 1]])
    assert equivalent(fib, conjugate(fib, g))
    assert not equivalent(fib, realize(unit_sequence()))
    assert not equivalent(fib, realize(lucas()))
    with pytest.raises(NotCanonicalError):
        equivalent(fib, system([[0, 0], [0, 0]], [1, 0], [1, 0]))


def test_base_change_invariance():
    rng = random.Random(23)
    for _ in range(60):
        n = rng.randint(1, 3)
        s = random_system(rng, n)
        g = random_invertible(rng, n)
        t = conjugate(s, g)
        assert markov_terms(s, 2 * n + 1) == markov_terms(t, 2 * n + 1)
        assert is_cc(s) == is_cc(t)
        assert is_co(s) == is_co(t)


# ============================================================================
# ТЕСТ 4: КАНОНИЧЕСКАЯ ФОРМА УПРАВЛЕНИЯ
# ============================================================================
def test_control_canonical_form():
    print("\n🧪 Тест 4: control_canonical_form")
    form = control_canonical_form(system([[2]], [3], [5]))
    assert form.a == (2,)
    assert form.c == (15,)
    assert form.base_change.entries == (Fraction(1, 3),)

    fib = realize(fibonacci())
    fib_form = control_canonical_form(fib)
    assert fib_form.system == fib
    assert fib_form.a == (1, 1)
    assert fib_form.c == (0, 1)

    rng = random.Random(5)
    for _ in range(20):
        s = random_system(rng, rng.randint(1, 3))
        if not is_cc(s):
            continue
        form = control_canonical_form(s)
        assert form.system.B.entries[0] == 1
        assert controllability_matrix(form.system) == RatMatrix.identity(s.n)
        assert markov_terms(form.system, 2 * s.n) == markov_terms(s, 2 * s.n)
        assert control_canonical_form(form.system).system == form.system

    with pytest.raises(NotControllableError):
        control_canonical_form(system([[1, 0], [0, 1]], [1, 0], [1, 1]))


# ============================================================================
# ТЕСТ 5: ТРАНСПОНИРОВАНИЕ
# ============================================================================
def test_transpose_involution():
    print("\n🧪 Тест 5: transpose_system")
    rng = random.Random(31)
    for _ in range(100):
        n = rng.randint(1, 3)
        s = random_system(rng, n)
        t = transpose_system(s)
        assert transpose_system(t) == s
        assert is_cc(s) == is_co(t)
        assert is_co(s) == is_cc(t)
        assert markov_terms(s, 2 * n + 1) == markov_terms(t, 2 * n + 1)


# ============================================================================
# ТЕСТ 6: ГРАССМАНИАН
# ============================================================================
def test_grassmann_example():
    print("\n🧪 Тест 6: grassmann_embed")
    point = grassmann_embed(system([[2]], [1], [3]))
    assert point.K.to_rows() == [[-3, 1, 0], [-2, 0, 1]]
    assert point.M.to_rows() == [[1, 3, 2]]
    assert point.multi_index == (2, 3)
    assert mat_mul(point.M, point.K.transpose()).is_zero()
    assert cell_dimension(point) == 2
    assert chart_minor(point, (2, 3)) == 1
    assert in_cell(point)


def test_grassmann_co_only():
    point = grassmann_embed(system([[0]], [0], [1]))
    assert point.source == 'co'
    assert point.multi_index == (1, 3)
    assert point.K.to_rows() == [[1, 0, 0], [0, 0, 1]]
    assert cell_dimension(point) == 1
    assert in_cell(point)

    # cc, но не co при n = 2; транспонированная: только co
    cc_only = system([[0, 0], [1, 0]], [1, 0], [1, 0])
    assert is_cc(cc_only) and not is_co(cc_only)
    co_point = grassmann_embed(transpose_system(cc_only))
    assert co_point.multi_index == (1, 4)
    assert cell_dimension(co_point) == 3
    assert in_cell(co_point)


def test_grassmann_not_embeddable():
    with pytest.raises(NotEmbeddableError):
        grassmann_embed(system([[0]], [0], [0]))


def test_grassmann_random_points():
    rng = random.Random(41)
    checked = 0
    while checked < 50:
        n = rng.randint(1, 3)
        s = random_system(rng, n)
        if not is_cc(s):
            continue
        checked += 1
        point = grassmann_embed(s)
        assert point.multi_index == (2, n + 2)
        assert mat_mul(point.M, point.K.transpose()).is_zero()
        assert in_cell(point)
        assert cell_dimension(point) == 2 * n

        t = transpose_system(s)
        dual = grassmann_embed(t)
        if not is_cc(t):
            assert dual.multi_index == (1, n + 2)
            assert cell_dimension(dual) == 2 * n - 1
        assert in_cell(dual)


def test_canonical_point_dimension():
    f = LinRecSequence((1, 0, 2), (1, -1, 2))
    s = realize(f)
    assert s.n == 3
    assert cell_dimension(grassmann_embed(s)) == 6


# ============================================================================
# ТЕСТ 7: СОГЛАСОВАННОСТЬ С ПРОИЗВЕДЕНИЕМ АДАМАРА
# ============================================================================
def test_hadamard_markov_consistency():
    rng = random.Random(53)
    for _ in range(10):
        f, g = random_sequence(rng, 3), random_sequence(rng, 3)
        left = markov_sequence(realize(f))
        right = markov_sequence(realize(g))
        assert equal(hadamard(left, right), hadamard(f, g))


# ============================================================================
# ТЕСТ 8: СИСТЕМЫ НАД F_p
# ============================================================================
def test_markov_over_prime_field():
    print("\n🧪 Тест 8: markov над F_3")
    f3 = PrimeField(3)
    s = LinearSystem.from_lists([[0, 1], [1, 1]], [1, 0], [0, 1], field=f3)
    # числа Фибоначчи по модулю 3
    assert markov(s).terms == (0, 1, 1, 2, 0)
    assert markov(s, 8).terms == (0, 1, 1, 2, 0, 2, 2, 1)
    assert markov_terms(s, 3) == [f3(0), f3(1), f3(1)]
    assert is_canonical(s)
    with pytest.raises(UnsupportedFieldError):
        markov_sequence(s)
