"""
Skew Howe duality on (Lambda C^N)^(x)M
======================================

The gl_N action and the gl_M action commute, and the joint highest-weight
vectors are single monomials indexed by Young diagrams in an N x M box.
"""

from qhowe.dynweyl import a_i_mu, howe_bridge
from qhowe.howe import decompose_multiplicities, tensor_str, verify_howe_commutation
from qhowe.report import Report

rep = verify_howe_commutation(3, 2)
print(rep.render().splitlines()[0])

# Every diagram appears once; the dimensions add up to 2^(NM).
rep = Report("decomposition")
for lam, mult in decompose_multiplicities(3, 2, rep):
    print(lam, mult)
print(rep.render())

# For M = 2 the gl_2 dynamical operator is the braiding up to a sign.
A = a_i_mu(1, (2, 1), 3)
print([tensor_str(b) for b in A.domain][:3], "...")
print(howe_bridge(2, 1, 3).render())
