from __future__ import annotations

from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lieform.linalg import (Echelon, LinalgError, Matrix, Subspace, eigenspace_split, image_basis,
                            inverse, kernel_basis, quotient_and_section, solve)

small = st.integers(-4, 4).map(F)
fractions = st.builds(F, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def matrices(draw, max_rows=5, max_cols=5, entries=small):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return Matrix.from_rows([[draw(entries) for _ in range(c)] for _ in range(r)])


def test_kernel_examples():
    assert [list(v) for v in kernel_basis(Matrix.from_rows([[0]]))] == [[1]]
    assert kernel_basis(Matrix.identity(3)) == []
    (k,) = kernel_basis(Matrix.from_rows([[1, 1]]))
    assert k[0] == -k[1] != 0


def test_solve_examples():
    assert list(solve(Matrix.identity(2), [3, F(1, 2)])) == [3, F(1, 2)]
    assert solve(Matrix.from_rows([[1], [0]]), [0, 1]) is None
    assert list(solve(Matrix.from_rows([[2]]), [1])) == [F(1, 2)]


def test_quotient_examples():
    p, _ = quotient_and_section(2, [[1, 0]])
    assert p.nrows == 1
    p, _ = quotient_and_section(3, [])
    assert p == Matrix.identity(3)
    p, _ = quotient_and_section(2, [[1, 1], [2, 2]])
    assert p.nrows == 1


def test_eigenspace_examples():
    plus, minus = eigenspace_split(Matrix.identity(3))
    assert (len(plus), len(minus)) == (3, 0)
    plus, minus = eigenspace_split(Matrix.identity(2) * -1)
    assert (len(plus), len(minus)) == (0, 2)
    plus, minus = eigenspace_split(Matrix.from_rows([[0, 1], [1, 0]]))
    assert (len(plus), len(minus)) == (1, 1)
    with pytest.raises(LinalgError):
        eigenspace_split(Matrix.from_rows([[1, 1], [0, 1]]))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity_against_sympy(m):
    ker = kernel_basis(m)
    assert m.rank() + len(ker) == m.ncols
    assert m.rank() == sympy.Matrix(m.to_lists()).rank()
    for v in ker:
        assert all(x == 0 for x in m @ v)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_is_exact(m, data):
    b = [data.draw(fractions) for _ in range(m.nrows)]
    x = solve(m, b)
    consistent = sympy.Matrix(m.to_lists()).rank() == sympy.Matrix(m.to_lists()).row_join(sympy.Matrix(b)).rank()
    assert (x is not None) == consistent
    if x is not None:
        assert list(m @ x) == b


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4, fractions))
def test_inverse(m):
    if m.nrows != m.ncols:
        return
    if m.rank() < m.nrows:
        with pytest.raises(LinalgError):
            inverse(m)
    else:
        assert m @ inverse(m) == Matrix.identity(m.nrows)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.data())
def test_eigenspace_reconstruction(n, data):
    # conjugate a diagonal ±1 matrix by a unitriangular matrix
    signs = [data.draw(st.sampled_from([1, -1])) for _ in range(n)]
    u = Matrix.from_rows([[1 if i == j else (data.draw(small) if j > i else 0) for j in range(n)]
                          for i in range(n)])
    d = Matrix.from_rows([[signs[i] if i == j else 0 for j in range(n)] for i in range(n)])
    inv = u @ d @ inverse(u)
    plus, minus = eigenspace_split(inv)
    assert (len(plus), len(minus)) == (signs.count(1), signs.count(-1))
    for k in range(n):
        e = [1 if i == k else 0 for i in range(n)]
        half_plus = [(a + b) / 2 for a, b in zip(e, inv @ e)]
        half_minus = [(a - b) / 2 for a, b in zip(e, inv @ e)]
        assert Echelon(dict(enumerate(v)) for v in plus).contains(dict(enumerate(half_plus)))
        assert Echelon(dict(enumerate(v)) for v in minus).contains(dict(enumerate(half_minus)))


def test_echelon_membership_and_determinism():
    a = Echelon([{0: 2, 1: 4}, {1: 1, 2: 1}])
    assert a.contains({0: 1, 1: 3, 2: 1})
    assert not a.contains({2: 1})
    b = Echelon([{1: 1, 2: 1}, {0: 2, 1: 4}])
    assert a.reduced() == b.reduced()


def test_subspace_coordinates():
    s = Subspace.span([{"x": 1, "y": 1}, {"y": 2, "z": 2}])
    v = s.combine([3, 5])
    assert s.coords(v) == [3, 5]
    with pytest.raises(LinalgError):
        s.coords({"x": 1})


def test_image_basis_spans_columns():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6]])
    assert len(image_basis(m)) == 1
