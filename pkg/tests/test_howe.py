from itertools import product
from math import comb

from qhowe.fock import Gen, basis_states
from qhowe.howe import (
    decompose_multiplicities,
    divided_power_action,
    gl_dimension,
    glm_action,
    gln_action,
    sl2_pair_action,
    transpose_partition,
    verify_howe_commutation,
    weight_subspace,
)
from qhowe.report import Report
from qhowe.scalars import ONE, TrackedFraction

q = TrackedFraction.var(0)


def test_gln_examples():
    assert gln_action(Gen("e", 1), None, {(0b10, 0): ONE}, 2) == {(0b01, 0): ONE}
    assert gln_action(Gen("t", 1), None, {(0b01, 0b01): ONE}, 2) == {(0b01, 0b01): q * q}


def test_glm_examples():
    assert glm_action(Gen("e", 1), {(0, 0b1): ONE}, 1) == {(0b1, 0): ONE}
    for N in (2, 3):
        for k, kp in product(range(N + 1), repeat=2):
            for st in weight_subspace((k, kp), N):
                v = {st: ONE}
                assert sl2_pair_action("K", v, N) == {st: TrackedFraction.var(0, k - kp) if k != kp else ONE}
                top = (1 << k) - 1, (1 << kp) - 1
                assert glm_action(Gen("t", 1), {top: ONE}, N) == {top: TrackedFraction.var(0, k) if k else ONE}


def test_divided_powers():
    act = lambda v: sl2_pair_action("E", v, 2)  # noqa: E731
    v = {(0b01, 0b01): ONE}
    assert divided_power_action(act, 0, v) == v
    killed = {(0b11, 0b00): ONE}
    assert not act(killed)
    assert not divided_power_action(act, 2, killed)


def test_weight_subspace_sizes():
    assert len(weight_subspace((2, 1), 3)) == 9
    assert len(weight_subspace((0, 0, 0), 3)) == 1
    assert len(weight_subspace((1, 1), 2)) == 4
    for N in range(1, 5):
        for mu in product(range(N + 1), repeat=2):
            assert len(weight_subspace(mu, N)) == comb(N, mu[0]) * comb(N, mu[1])


def test_howe_commutation_grid():
    for N, M in ((2, 2), (3, 2), (2, 3), (3, 3)):
        rep = verify_howe_commutation(N, M)
        assert rep.passed, rep.render()


def test_decomposition_small():
    for N, M in product((1, 2, 3), repeat=2):
        rep = Report("decomposition")
        result = decompose_multiplicities(N, M, rep)
        assert rep.passed, rep.render()
        assert all(mult == 1 for _, mult in result)


def test_decomposition_examples():
    assert sorted(decompose_multiplicities(1, 1)) == [((0,), 1), ((1,), 1)]
    lams = [lam for lam, _ in decompose_multiplicities(2, 2)]
    assert len(lams) == 6
    for lam, _ in decompose_multiplicities(3, 2):
        ell = sum(1 for x in lam if x >= 1)
        ellp = sum(1 for x in lam if x >= 2)
        assert transpose_partition(lam)[:2] == (ell, ellp)[:len(transpose_partition(lam))]


def test_weyl_dimension_against_counting():
    # dim of the gl_n irrep with highest weight (1^k) is C(n, k); (2,1) for gl_3 is 8
    for n in range(1, 6):
        for k in range(n + 1):
            assert gl_dimension((1,) * k, n) == comb(n, k)
    assert gl_dimension((2, 1), 3) == 8
    assert gl_dimension((2, 0), 2) == 3


def test_transpose_bookkeeping():
    for ell in range(4):
        for ellp in range(ell + 1):
            lam = (2,) * ellp + (1,) * (ell - ellp)
            assert transpose_partition(lam)[:2] == (ell, ellp)[:len(transpose_partition(lam))]


def test_total_dimension():
    for N, M in ((1, 1), (2, 2), (3, 2)):
        states = list(product(basis_states(N), repeat=M))
        assert len(states) == 2 ** (N * M)
