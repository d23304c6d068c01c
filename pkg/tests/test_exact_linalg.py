import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cellalg.errors import InputError
from cellalg.exact_linalg import (
    GF,
    QQ,
    ExactMatrix,
    Mod,
    Subspace,
    field_from_descriptor,
    is_prime,
    nullspace,
    rank,
    rref,
    solve,
)

small = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_rref_identity_and_rank_one():
    red, piv = rref(ExactMatrix.identity(3))
    assert red == ExactMatrix.identity(3) and piv == [0, 1, 2]
    red, piv = rref(ExactMatrix([[1, 1], [1, 1]]))
    assert red.tolist() == [[1, 1], [0, 0]] and piv == [0]


def test_rref_leaves_input_unchanged():
    m = ExactMatrix([[2, 4], [1, 3]])
    before = m.tolist()
    rref(m)
    assert m.tolist() == before


def test_rank_examples():
    assert rank(ExactMatrix.zeros(4, 4)) == 0
    assert rank(ExactMatrix([[1, 0], [0, 0]])) == 1
    assert rank(ExactMatrix([[0, 0], [0, 1]])) == 1


def test_nullspace_examples():
    assert nullspace(ExactMatrix.identity(3)).dim == 0
    ns = nullspace(ExactMatrix([[1, 1], [1, 1]]))
    assert ns.dim == 1 and (1, -1) in ns
    assert nullspace(ExactMatrix([[1, 0], [0, 0]])) == Subspace.from_vectors([[0, 1]], 2)


def test_solve_examples():
    assert solve(ExactMatrix([[2]]), [1]) == [Fraction(1, 2)]
    assert solve(ExactMatrix([[1, 1], [1, 1]]), [1, 0]) is None
    with pytest.raises(InputError):
        solve(ExactMatrix([[1, 0], [0, 1]]), [1])


def test_rational_canonical_form():
    x = QQ(Fraction(6, -4))
    assert x == Fraction(-3, 2) and x.denominator == 2
    assert QQ.format(QQ("4/2")) == "2" and QQ.parse(" -6/4 ") == Fraction(-3, 2)
    with pytest.raises(InputError):
        QQ.parse("1/0")


def test_prime_field_arithmetic():
    f = GF(7)
    a = f(3)
    assert a * a.inverse() == 1
    assert (a + f(5)) - f(5) == a
    assert f("1/2") * 2 == 1
    assert ExactMatrix([[1, 2], [3, 4]], f).det() == 5
    assert f.descriptor == "gf(7)" and field_from_descriptor("gf(7)") == f
    with pytest.raises(InputError):
        GF(8)
    with pytest.raises(InputError):
        GF(2**61 + 1)
    with pytest.raises(ZeroDivisionError):
        Mod(0, 7).inverse()


def test_large_prime_field():
    p = 2305843009213693951  # 2**61 - 1
    assert is_prime(p)
    f = GF(p)
    m = ExactMatrix([[p - 1, 2], [3, p - 5]], f)
    assert m.rank() == 2
    assert (m @ m).det() == m.det() * m.det()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_transpose_and_sympy(rows):
    m = ExactMatrix(rows)
    assert m.rank() == m.transpose().rank() == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_nullspace_dimension_and_kernel(rows):
    m = ExactMatrix(rows)
    ns = m.nullspace()
    assert ns.dim == m.cols - m.rank()
    for v in ns.basis:
        assert not any(m.apply(v))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent_and_canonical(rows):
    red, piv = ExactMatrix(rows).rref()
    again, piv2 = red.rref()
    assert again == red and piv == piv2
    # canonical: the span's echelon basis does not depend on the spanning set
    a = Subspace.from_vectors(rows, len(rows[0]))
    b = Subspace.from_vectors(list(reversed(rows)) + [[0] * len(rows[0])], len(rows[0]))
    assert a == b


@settings(max_examples=40, deadline=None)
@given(matrices(5, 5), st.lists(small, min_size=5, max_size=5))
def test_solve_consistency(rows, x):
    m = ExactMatrix(rows)
    b = m.apply(x[: m.cols])
    sol = solve(m, b)
    assert sol is not None and m.apply(sol) == b


@settings(max_examples=40, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 7, 101]))
def test_modp_rank_matches_sympy_modular(rows, p):
    from sympy import GF as SGF
    from sympy.polys.matrices import DomainMatrix

    dm = DomainMatrix([[SGF(p)(x) for x in r] for r in rows], (len(rows), len(rows[0])), SGF(p))
    assert ExactMatrix(rows, GF(p)).rank() == dm.rank()


@settings(max_examples=60, deadline=None)
@given(st.integers(-50, 50), st.integers(1, 50), st.integers(-50, 50), st.integers(1, 50))
def test_field_axioms_rational(a, b, c, d):
    x, y = QQ(Fraction(a, b)), QQ(Fraction(c, d))
    assert (x + y) - y == x
    if x:
        assert x * (1 / x) == 1


@pytest.mark.parametrize("field", [QQ, GF(2), GF(7), GF(2305843009213693951)], ids=str)
def test_rank_nullity_500_random(field):
    rng = random.Random(11)
    for _ in range(500):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = ExactMatrix([[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)], field)
        ns = m.nullspace()
        assert m.rank() + ns.dim == c
        if field is not QQ:
            assert all(0 <= x.v < field.p for row in m.rref()[0].tolist() for x in row)
