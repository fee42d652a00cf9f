from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from qhowe.linalg import SparseOperator, determinant, fraction_rank, nullspace, solve_adjugate
from qhowe.scalars import LaurentPoly

qs = sympy.Symbol("q")


def to_sympy(p: LaurentPoly):
    return sum(sympy.Rational(c.numerator, c.denominator) * qs ** (e[0] if e else 0) for e, c in p.terms.items())


small = st.dictionaries(st.tuples(st.integers(-2, 2)), st.integers(-3, 3), max_size=3).map(LaurentPoly)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square))
def test_adjugate_against_sympy(A):
    n = len(A)
    X, d = solve_adjugate(A) if determinant(A) else (None, None)
    S = sympy.Matrix([[to_sympy(x) for x in row] for row in A])
    det = sympy.simplify(S.det())
    assert sympy.simplify(to_sympy(determinant(A)) - det) == 0
    if X is None:
        return
    for i in range(n):
        for j in range(n):
            acc = LaurentPoly()
            for t in range(n):
                acc = acc + A[i][t] * X[t][j]
            assert acc == (d if i == j else LaurentPoly())


@given(st.integers(1, 3), st.integers(1, 4), st.data())
def test_nullspace_dimension(m, n, data):
    A = data.draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))
    kernel = nullspace(A, n)
    for v in kernel:
        for row in A:
            acc = LaurentPoly()
            for a, x in zip(row, v):
                acc = acc + a * x
            assert not acc
    S = sympy.Matrix([[to_sympy(x) for x in row] for row in A])
    assert len(kernel) == n - S.rank(simplify=True)


def test_fraction_rank():
    assert fraction_rank([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 1
    assert fraction_rank([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(3)]]) == 2


def test_sparse_operator_composition():
    A = SparseOperator({0: {1: 2}, 1: {0: 3}}, [0, 1])
    B = SparseOperator({0: {0: 5}, 1: {1: 7}}, [0, 1])
    assert (A @ B).apply({0: 1, 1: 1}) == {1: 10, 0: 21}
    assert (A @ B).equals(SparseOperator({0: {1: 10}, 1: {0: 21}}, [0, 1]))
    assert A.first_difference(B) is not None
