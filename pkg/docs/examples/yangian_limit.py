"""
From the trigonometric braiding to the rational R-matrix
========================================================

Put q = exp(eps*hbar), z = exp(2*eps*u) and let eps go to zero. The distance
to the rational matrix shrinks linearly in eps.
"""

from fractions import Fraction

from qhowe.yangian import (
    FloatEvalConfig,
    limit_check,
    limit_estimate,
    rational_r,
    verify_rational_ybe,
)

R = rational_r(1, 1, 2)
print(R.evaluate(Fraction(37, 100), Fraction(1)).column(R.domain[1]))

cfg = FloatEvalConfig(eps=("1e-3", "1e-4", "1e-5"), precision=60)
rep = limit_check(1, 1, 2, cfg)
for row in rep.checks[0].details["distances"]:
    print(row)
print("ratios", rep.checks[0].details["ratios"])

# Richardson extrapolation removes the linear term.
est, target, ctx = limit_estimate(1, 1, 2, eps="1e-6")
key = next(k for k in sorted(target) if abs(abs(target[k]) - 1) > 1e-9)
print(ctx.nstr(est[key], 15), ctx.nstr(target[key], 15))

# The rational matrix satisfies the braid relation in additive form.
print(verify_rational_ybe(1, 1, 1, 2, samples=20, seed=0).render())
