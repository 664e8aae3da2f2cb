from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF as SymGF, QQ as SymQQ
from sympy.polys.matrices import DomainMatrix

from qpsilt.errors import DimensionError, FieldMismatchError
from qpsilt.exactlin import GF, QQ, Field, Mat, kernel_basis, rank, solve

FIELDS = [QQ, GF(32003), GF(2), GF(5)]

small_mats = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


def sym_rank(rows, f):
    dom = SymQQ if f.p == 0 else SymGF(f.p)
    return DomainMatrix([[dom(x) for x in r] for r in rows], (len(rows), len(rows[0])), dom).rank()


@pytest.mark.parametrize("f", FIELDS, ids=lambda f: f.name)
@given(rows=small_mats)
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy(f, rows):
    assert f.rank(f.array(rows)) == sym_rank(rows, f)


@pytest.mark.parametrize("f", FIELDS, ids=lambda f: f.name)
@given(rows=small_mats)
@settings(max_examples=60, deadline=None)
def test_rank_nullity(f, rows):
    a = f.array(rows)
    k = f.kernel(a)
    assert k.shape[1] + f.rank(a) == a.shape[1]
    assert f.is_zero(f.matmul(a, k))


@pytest.mark.parametrize("f", FIELDS, ids=lambda f: f.name)
@given(rows=small_mats, data=st.data())
@settings(max_examples=60, deadline=None)
def test_solve_consistent_systems(f, rows, data):
    a = f.array(rows)
    x0 = f.array(data.draw(st.lists(st.integers(-3, 3), min_size=a.shape[1], max_size=a.shape[1])))
    b = f.matmul(a, x0)
    x = f.solve(a, b)
    assert x is not None
    assert np.array_equal(f.matmul(a, x), b)


def test_solve_inconsistent_returns_none():
    for f in FIELDS:
        a = f.array([[1, 0], [1, 0]])
        assert f.solve(a, f.array([1, 0])) is None


@pytest.mark.parametrize("f", FIELDS, ids=lambda f: f.name)
def test_rref_is_idempotent_and_canonical(f):
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = f.random(rng, (4, 6))
        r, piv = f.rref(a)
        r2, piv2 = f.rref(r)
        assert piv == piv2 and np.array_equal(r, r2)
        # row operations do not change the rref
        u = f.random(rng, (4, 4))
        if f.rank(u) == 4:
            assert np.array_equal(f.rref(f.matmul(u, a))[0], r)


def test_rational_arithmetic_is_exact():
    a = QQ.array([[1, 3], [2, 7]])
    inv = QQ.inverse(a)
    assert inv.dtype == object
    assert all(isinstance(x, Fraction) for x in inv.ravel())
    assert np.array_equal(QQ.matmul(a, inv), QQ.eye(2))
    assert QQ.matmul(QQ.array([[Fraction(1, 3)]]), QQ.array([[3]]))[0, 0] == 1


def test_prime_field_wraps():
    f = GF(7)
    assert f(10) == 3
    assert f(-1) == 6
    assert f.inv(3) * 3 % 7 == 1
    assert f(Fraction(1, 2)) == 4
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_field_parse_and_names():
    assert Field.parse("q") is QQ
    assert Field.parse("fp:32003") == GF(32003)
    assert GF(32003).name == "fp:32003" and QQ.name == "q"
    with pytest.raises(ValueError):
        Field.parse("fp:32004")
    with pytest.raises(ValueError):
        Field.parse("reals")


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        QQ.inverse(QQ.array([[1, 2], [2, 4]]))
    with pytest.raises(DimensionError):
        QQ.inverse(QQ.zeros((2, 3)))


def test_mat_wrapper_rejects_mixed_fields():
    a = Mat.of(QQ, [[1, 2], [3, 4]])
    b = Mat.of(GF(5), [[1, 0], [0, 1]])
    with pytest.raises(FieldMismatchError):
        a @ b
    assert rank(a) == 2
    assert kernel_basis(Mat.of(QQ, [[1, 1]])).cols == 1
    x = solve(a, Mat.of(QQ, [[1], [0]]))
    assert (a @ x) == Mat.of(QQ, [[1], [0]])


def test_in_span():
    f = GF(32003)
    basis = f.array([[1, 0, 1], [0, 1, 1]])
    assert f.in_span(basis, f.array([2, 3, 5]))
    assert not f.in_span(basis, f.array([0, 0, 1]))
    assert f.in_span(f.zeros((0, 3)), f.zeros(3))
