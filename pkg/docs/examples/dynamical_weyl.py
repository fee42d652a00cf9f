"""
Dynamical Weyl group operators
==============================

A_{i,mu}(z) acts between weight spaces of (Lambda V)^(x)M. Composed along
reduced words they satisfy the symmetric group relations, not only the
braid relations.
"""

from fractions import Fraction

from qhowe.dynweyl import (
    IrrepSl2,
    a_universal,
    closed_form_values,
    symmetric_group_check,
    verify_theorem2,
    word_operator,
)
from qhowe.scalars import EvalPoint

# On an irreducible L_l the operator is one scalar per weight line.
L = IrrepSl2(4)
for m in L.weights:
    value = a_universal(L, m, [m]).column(m)[-m]
    closed = closed_form_values(4, m)[0]
    print(m, value == closed, closed)

# s_i s_i = 1 and the braid relation, checked at seeded rational points.
print(verify_theorem2(3, 2, (1, 1, 1), points=20, seed=1).render())
print(symmetric_group_check(3, 2, (1, 2, 1), (2, 1, 2), points=5, seed=2,
                            mus=[(2, 1, 0), (0, 1, 2)]).render())

# The operator for one word, evaluated at a point.
p = EvalPoint(Fraction(5, 3), [Fraction(1, 2), Fraction(3, 4), Fraction(7, 5)])
op = word_operator((1, 2, 1), (2, 1, 0), 2, p)
print(op.nnz(), "nonzero entries")
