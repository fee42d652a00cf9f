from itertools import product

from hypothesis import given, strategies as st

from qhowe.fock import (
    FockVector,
    Gen,
    apply_psi,
    apply_psi_star,
    apply_t,
    basis_states,
    hayashi_action,
    highest_weight_vector,
    popcount,
    verify_hayashi_relations,
)
from qhowe.scalars import ONE, TrackedFraction


def wedge_oracle(i, mask, N):
    """psi*_i on a sorted wedge of indices: prepend, then sort counting transpositions."""
    occ = [j for j in range(1, N + 1) if mask >> (j - 1) & 1]
    if i in occ:
        return None
    word = [i] + occ
    sign = 1
    for a in range(len(word)):
        for b in range(len(word) - 1 - a):
            if word[b] > word[b + 1]:
                word[b], word[b + 1] = word[b + 1], word[b]
                sign = -sign
    return sign, mask | 1 << (i - 1)


def vec(mask, N, c=1):
    return FockVector.basis(mask, N, TrackedFraction.const(c))


def test_psi_star_examples():
    assert apply_psi_star(1, FockVector.vacuum(2)) == vec(0b01, 2)
    two = apply_psi_star(2, apply_psi_star(1, FockVector.vacuum(2)))
    assert two == vec(0b11, 2, -1)
    assert not apply_psi_star(1, vec(0b01, 2))


def test_psi_examples():
    assert not apply_psi(1, FockVector.vacuum(2))
    assert apply_psi(1, vec(0b01, 2)) == FockVector.vacuum(2)


@given(st.integers(1, 6).flatmap(lambda N: st.tuples(st.just(N), st.integers(1, N), st.integers(0, 2 ** N - 1))))
def test_psi_star_sign_matches_wedge_oracle(args):
    N, i, mask = args
    got = apply_psi_star(i, vec(mask, N))
    expected = wedge_oracle(i, mask, N)
    if expected is None:
        assert not got
    else:
        assert got == vec(expected[1], N, expected[0])


def test_canonical_anticommutation():
    for N in range(1, 5):
        for i, j in product(range(1, N + 1), repeat=2):
            for m in basis_states(N):
                v = vec(m, N)
                ss = apply_psi_star(i, apply_psi_star(j, v)) + apply_psi_star(j, apply_psi_star(i, v))
                aa = apply_psi(i, apply_psi(j, v)) + apply_psi(j, apply_psi(i, v))
                sa = apply_psi(i, apply_psi_star(j, v)) + apply_psi_star(j, apply_psi(i, v))
                assert not ss and not aa
                assert sa == (v if i == j else FockVector({}, N))


def test_t_examples():
    q = TrackedFraction.var(0)
    assert apply_t(1, 1, vec(0b01, 2)) == FockVector.basis(0b01, 2, q)
    assert apply_t(1, 1, FockVector.vacuum(2)) == FockVector.vacuum(2)
    for m in basis_states(2):
        v = vec(m, 2)
        lhs = apply_t(1, 1, apply_psi_star(1, apply_t(1, -1, v)))
        assert lhs == apply_psi_star(1, v).scale(q)


def test_hayashi_examples():
    assert hayashi_action(Gen("e", 1), None, vec(0b10, 2)) == vec(0b01, 2)
    assert not hayashi_action(Gen("e", 1), None, vec(0b01, 2))
    z = TrackedFraction.var(1)
    assert hayashi_action(Gen("e", 0), 1, vec(0b01, 2)) == FockVector.basis(0b10, 2, z)


def test_highest_weight_vectors():
    assert highest_weight_vector(0, 3) == FockVector.vacuum(3)
    assert highest_weight_vector(2, 4) == vec(0b0011, 4)
    for N in range(1, 6):
        for k in range(N + 1):
            v = highest_weight_vector(k, N)
            for i in range(1, N):
                assert not hayashi_action(Gen("e", i), None, v)


def test_hayashi_relations():
    for N in (2, 3, 4):
        rep = verify_hayashi_relations(N)
        assert rep.passed, rep.render()
        assert len(rep.checks) > 20


def test_central_element():
    for N in range(2, 6):
        for m in basis_states(N):
            v = FockVector.basis(m, N, ONE)
            for i in range(1, N + 1):
                v = hayashi_action(Gen("t", i), None, v)
            assert v == FockVector.basis(m, N, TrackedFraction.var(0, popcount(m)))
