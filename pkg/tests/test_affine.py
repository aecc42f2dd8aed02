import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from smalekit.affine import (
    DEFAULT_A,
    FREE,
    HYPERBOLIC,
    IDENTITY,
    AffineElement,
    AffineError,
    check_matrix,
    classify_element,
    conjugation_covariant,
    eigen_check,
    evaluate,
    fixed_leaf_density,
    fixed_point,
    moves_every_leaf,
    parse_word,
    reduced_words,
    smale_relation,
)

A = DEFAULT_A


def test_evaluate_examples():
    assert evaluate("").is_identity()
    assert evaluate("a a^-1").is_identity()
    g = evaluate("a t1 a^-1")
    assert g.n == 0 and g.t == (2, 1)  # A e1
    assert evaluate("a^2") == evaluate("a a")


def test_parse_word():
    assert parse_word("a^-2 * t1.t2") == [("a", -2), ("t1", 1), ("t2", 1)]
    with pytest.raises(AffineError):
        parse_word("b")


def test_fixed_point_examples():
    assert fixed_point(AffineElement(1, (0, 0), A)) == (0, 0)
    x = fixed_point(AffineElement(1, (1, 0), A))
    assert x == (0, -1)
    assert AffineElement(1, (1, 0), A)(x) == x
    assert fixed_point(AffineElement(0, (1, 0), A)) is None
    assert fixed_point(AffineElement(0, (0, 0), A)) == IDENTITY


def test_classification_examples():
    assert classify_element(evaluate("")).kind == IDENTITY
    c = classify_element(evaluate("a"))
    assert c.kind == HYPERBOLIC and (c.trace, c.det) == (3, 1)
    assert sympy.simplify(c.lam - (3 + sympy.sqrt(5)) / 2) == 0
    assert classify_element(evaluate("t2")).kind == FREE


def test_matrix_checks():
    with pytest.raises(AffineError):
        check_matrix(((1, 1), (0, 1)))  # parabolic
    with pytest.raises(AffineError):
        check_matrix(((2, 0), (0, 1)))  # det 2


def test_eigen_pattern():
    for n in (1, -1, 2, -3, 5):
        assert eigen_check(A, n)


def test_reduced_word_count():
    # 1 + 6 * sum 5^(k-1)
    assert sum(1 for _ in reduced_words(3)) == 1 + 6 + 30 + 150


def test_translations_move_every_leaf():
    for t in [(1, 0), (0, 1), (3, -5)]:
        assert moves_every_leaf(AffineElement(0, t, A))


def test_density_examples():
    r1 = fixed_leaf_density(1)
    assert r1.fixed_points > 0 and 0 < r1.plus_gap < 1
    r2 = fixed_leaf_density(2)
    assert r2.plus_gap <= r1.plus_gap and r2.minus_gap <= r1.minus_gap
    with pytest.raises(AffineError):
        fixed_leaf_density(1, ((0, 0), (0, 1)))


def test_smale_relation():
    g = AffineElement(1, (1, 0), A)
    x = fixed_point(g)
    assert smale_relation(x, g, x, g)
    with pytest.raises(AffineError):
        smale_relation((5, 5), g, x, g)
    with pytest.raises(AffineError):
        smale_relation(x, AffineElement(0, (1, 0), A), x, g)


elements = st.builds(
    lambda n, a, b: AffineElement(n, (a, b), A),
    st.integers(-4, 4), st.integers(-20, 20), st.integers(-20, 20),
)


@settings(max_examples=200, deadline=None)
@given(elements, elements, elements)
def test_group_laws(g, h, k):
    assert (g * h) * k == g * (h * k)
    assert (g * g.inverse()).is_identity()
    x = (Fraction(1, 3), Fraction(-2, 7))
    assert (g * h)(x) == g(h(x))


@settings(max_examples=200, deadline=None)
@given(elements, elements)
def test_fixed_points_exact(g, h):
    x = fixed_point(g)
    if g.n:
        assert g(x) == x
    assert conjugation_covariant(g, h)


def test_random_pairs_equivalent():
    rng = random.Random(1)
    for _ in range(100):
        g = AffineElement(rng.choice([1, -1, 2, -2, 3, 4]), (rng.randint(-9, 9), rng.randint(-9, 9)), A)
        h = AffineElement(rng.choice([1, -3, 4]), (rng.randint(-9, 9), rng.randint(-9, 9)), A)
        assert smale_relation(fixed_point(g), g, fixed_point(h), h)
