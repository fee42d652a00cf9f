from fractions import Fraction
from itertools import product

import mpmath
import pytest
from hypothesis import given, strategies as st

from qhowe.howe import weight_subspace
from qhowe.linalg import SparseOperator
from qhowe.yangian import (
    FloatEvalConfig,
    limit_check,
    limit_digits_check,
    rational_r,
    verify_classical_sl2,
    verify_rational_invariance,
    verify_rational_ybe,
)


def test_j0_term_is_identity():
    for N in (2, 3):
        for k, kp in product(range(N + 1), repeat=2):
            R = rational_r(k, kp, N)
            j, M0 = R.terms[0]
            assert j == 0
            assert M0 == {b: {b: 1} for b in R.domain}


def test_k0_is_identity():
    for N in (1, 2, 3):
        for kp in range(N + 1):
            R = rational_r(0, kp, N)
            assert len(R.terms) == 1
            assert R.evaluate(Fraction(3, 7), Fraction(1)).equals(
                SparseOperator.identity(weight_subspace((0, kp), N), Fraction(1)))


@given(st.integers(1, 3), st.fractions(Fraction(-3), 3, max_denominator=9), st.fractions(Fraction(1, 4), 3, max_denominator=9))
def test_equal_degrees_have_smirnov_coefficients(j, u, hbar):
    R = rational_r(2, 2, 4)
    if any(u + hbar * i == 0 for i in range(1, j + 1)):
        return
    # with k = k' every factor 2/(2u + 2i hbar) is 1/(u + i hbar)
    expected = (-hbar) ** j
    for i in range(1, j + 1):
        expected = expected / i / (u + hbar * i)
    assert R.coefficient(j, u, hbar) == expected


def test_pole_structure():
    R = rational_r(2, 1, 3)
    assert R.pole_offsets() == [3]
    with pytest.raises(ZeroDivisionError):
        R.evaluate(Fraction(-3, 2), Fraction(1))


def test_classical_sl2():
    for N in (1, 2, 3, 4):
        assert verify_classical_sl2(N).passed


@pytest.mark.parametrize("ks,N", [((1, 1, 1), 2), ((2, 2, 2), 4), ((1, 2, 1), 3)])
def test_rational_ybe(ks, N):
    rep = verify_rational_ybe(*ks, N, samples=20, seed=4)
    assert rep.passed, rep.render()


def test_rational_invariance():
    assert verify_rational_invariance(1, 2, 3, samples=20, seed=1).passed


def test_limit_scaling():
    for k, kp, N in ((1, 1, 2), (2, 1, 3)):
        rep = limit_check(k, kp, N)
        assert rep.passed, rep.render()
        ratios = [float(r) for r in rep.checks[0].details["ratios"]]
        assert all(5 <= r <= 20 for r in ratios)


def test_limit_digits():
    assert limit_digits_check(1, 1, 2, digits=10).passed


def test_limit_check_detects_wrong_target(monkeypatch):
    from qhowe import yangian

    real = yangian._rat_float

    def shifted(k, kp, N, u, hbar):
        return real(k, kp, N, u * 2, hbar)

    monkeypatch.setattr(yangian, "_rat_float", shifted)
    assert not limit_check(1, 1, 2).passed


def test_float_config_validation():
    with pytest.raises(ValueError):
        FloatEvalConfig(eps=("1e-4", "1e-3"))
    with pytest.raises(ValueError):
        FloatEvalConfig(eps=("-1e-3",))
    cfg = FloatEvalConfig(precision=40)
    assert limit_check(1, 1, 2, cfg).passed
    assert mpmath.mp.dps == 15
