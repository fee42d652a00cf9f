"""
The braiding matrix on two copies of the vector representation
===============================================================

Build the exact braiding on Lambda^1 V (x) Lambda^1 V for N = 2, look at its
entries, and check the braid relation at a few rational points.
"""

from fractions import Fraction

from qhowe.rmatrix import braiding, verify_inversion, verify_ybe
from qhowe.scalars import EvalPoint

# The matrix is a sparse operator whose entries are rational functions of q, z.
B = braiding(1, 1, 2)
for row, col, value in B.op.entries():
    print(row, "<-", col, ":", value)

# Entries evaluate exactly at any point away from the pole 1 - q^2 z = 0.
point = EvalPoint(Fraction(3, 2), [Fraction(1, 5)])
R = B.evaluate(point)
print(R.column(B.domain[1]))

# Braid relation on Lambda^1 (x) Lambda^1 (x) Lambda^1, then unitarity.
print(verify_ybe(1, 1, 1, 2, points=20, seed=0).render())
print(verify_inversion(1, 1, 2, points=20, seed=0).render())

# Larger exterior powers work the same way; the poles stay simple.
print(len(braiding(2, 2, 4).domain), "states in Lambda^2 (x) Lambda^2 for N=4")
