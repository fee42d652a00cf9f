"""Tensor powers ``(Lambda V)^{(x)M}`` with commuting ``U_q gl_N`` and ``U_q gl_M`` actions.

A tensor basis state is a tuple of ``M`` bitmasks (one per factor). Vectors
are dicts ``state -> scalar``. The tensor power is identified with the Fock
space of ``N*M`` modes ordered factor by factor, so a factor-local Clifford
operator picks up the Koszul sign of the factors to its left.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb, prod
from typing import Callable, Sequence

from .fock import (
    Gen,
    _k_pair,
    basis_states,
    check_loop_relations,
    loop_relations,
    popcount,
    psi_bits,
    psi_star_bits,
    state_str,
)
from .linalg import SparseOperator, nullspace, vec_eq, vec_iadd
from .report import Report
from .scalars import ONE, LaurentPoly, TrackedFraction, q_int_inverse

__all__ = [
    "tensor_str",
    "weight_subspace",
    "gl_weight",
    "gln_action",
    "glm_action",
    "sl2_pair_action",
    "divided_power_action",
    "operator_on_subspace",
    "verify_howe_commutation",
    "decompose_multiplicities",
    "howe_grid_state",
    "gl_dimension",
    "transpose_partition",
]


def tensor_str(state: Sequence[int]) -> str:
    return "(x)".join(state_str(m) for m in state)


def weight_subspace(mu: Sequence[int], N: int) -> list[tuple]:
    """States whose r-th factor has degree ``mu[r]``; dimension ``prod C(N, mu_r)``."""
    for m in mu:
        if not 0 <= m <= N:
            raise ValueError(f"weight component {m} outside [0, {N}]")
    return list(product(*(basis_states(N, m) for m in mu)))


def all_states(N: int, M: int) -> list[tuple]:
    return list(product(basis_states(N), repeat=M))


def gl_weight(state: Sequence[int], N: int) -> tuple:
    """gl_N weight: occupation count of each index across the factors."""
    return tuple(sum(m >> (i - 1) & 1 for m in state) for i in range(1, N + 1))


def _bit(state, i, r):
    return state[r - 1] >> (i - 1) & 1


def _left_parity(state, r):
    return sum(popcount(m) for m in state[: r - 1]) & 1


def _psi_global(star: bool, i: int, r: int, state: tuple):
    """Global Clifford mode ``(i, r)``; returns (sign, state) or None."""
    fn = psi_star_bits if star else psi_bits
    res = fn(i, state[r - 1])
    if res is None:
        return None
    s, m = res
    if _left_parity(state, r):
        s = -s
    return s, state[: r - 1] + (m,) + state[r:]


def _hop(dst: int, r_dst: int, src: int, r_src: int, state: tuple):
    """``psi*_{dst, r_dst} psi_{src, r_src}``."""
    a = _psi_global(False, src, r_src, state)
    if a is None:
        return None
    b = _psi_global(True, dst, r_dst, a[1])
    if b is None:
        return None
    return a[0] * b[0], b[1]


def _exp(qe: int, spectral: dict | None = None):
    if not spectral:
        return (qe,) if qe else ()
    n = max(spectral) + 1
    e = [0] * n
    e[0] = qe
    for k, v in spectral.items():
        e[k] += v
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def _k_exp(i: int, N: int, state, r: int) -> int:
    """Exponent of q for ``k_{i,r}`` acting on the r-th factor."""
    a, b = _k_pair(i, N)
    return _bit(state, a, r) - _bit(state, b, r)


# ---------------------------------------------------------------------------
# gl_N via the iterated coproduct


def gln_terms(g: Gen, state: tuple, N: int, twists: Sequence[int | None] | None = None):
    """Terms ``(sign, new_state, exponent)`` of a gl_N generator on a basis state."""
    fam, i = g
    M = len(state)
    twists = list(twists) if twists is not None else [None] * M
    if fam in ("t", "tinv"):
        s = 1 if fam == "t" else -1
        n = sum(_bit(state, i, r) for r in range(1, M + 1))
        return [(1, state, _exp(s * n))]
    if fam in ("k", "kinv"):
        s = 1 if fam == "k" else -1
        n = sum(_k_exp(i, N, state, r) for r in range(1, M + 1))
        return [(1, state, _exp(s * n))]
    a, b = _k_pair(i, N)
    out = []
    for r in range(1, M + 1):
        z = twists[r - 1] if i == 0 else None
        if fam == "e":
            res = _hop(a, r, b, r, state)
            if res is None:
                continue
            sign, new = res
            qe = sum(_k_exp(i, N, state, s) for s in range(1, r))
            out.append((sign, new, _exp(qe, {z: 1} if z else None)))
        elif fam == "f":
            res = _hop(b, r, a, r, state)
            if res is None:
                continue
            sign, new = res
            qe = -sum(_k_exp(i, N, state, s) for s in range(r + 1, M + 1))
            out.append((sign, new, _exp(qe, {z: -1} if z else None)))
        else:
            raise ValueError(f"unknown generator family {fam}")
    return out


def _apply_terms(terms_fn: Callable, vec: dict) -> dict:
    out: dict = {}
    for st, c in vec.items():
        for sign, new, e in terms_fn(st):
            term = c.mul_monomial(e, sign) if (e or sign != 1) else c
            old = out.get(new)
            if old is None:
                out[new] = term
            else:
                s = old + term
                if s:
                    out[new] = s
                else:
                    del out[new]
    return out


def gln_action(g: Gen, twists: Sequence[int | None] | None, vec: dict, N: int) -> dict:
    """Iterated-coproduct action; ``twists[r]`` is the spectral variable of factor r."""
    return _apply_terms(lambda st: gln_terms(g, st, N, twists), vec)


# ---------------------------------------------------------------------------
# gl_M via the explicit generator sums


def _K_jr(j, r, state):
    return _bit(state, j, r) - _bit(state, j, r + 1)


def glm_terms(g: Gen, state: tuple, N: int):
    fam, r = g
    M = len(state)
    if fam in ("t", "tinv"):
        s = 1 if fam == "t" else -1
        return [(1, state, _exp(s * popcount(state[r - 1])))]
    if fam in ("k", "kinv"):
        s = 1 if fam == "k" else -1
        d = popcount(state[r - 1]) - popcount(state[r])
        return [(1, state, _exp(s * d))]
    if not 1 <= r <= M - 1:
        raise ValueError(f"gl_M index {r} out of range for M={M}")
    out = []
    for i in range(1, N + 1):
        if fam == "e":
            # psi*_{i,r} psi_{i,r+1} prod_{j>i} K_{j,r}; K acts first
            qe = sum(_K_jr(j, r, state) for j in range(i + 1, N + 1))
            res = _hop(i, r, i, r + 1, state)
            if res is None:
                continue
            out.append((res[0], res[1], _exp(qe)))
        elif fam == "f":
            # prod_{j<i} K^{-1}_{j,r} psi*_{i,r+1} psi_{i,r}; K acts last
            res = _hop(i, r + 1, i, r, state)
            if res is None:
                continue
            new = res[1]
            qe = -sum(_K_jr(j, r, new) for j in range(1, i))
            out.append((res[0], new, _exp(qe)))
        else:
            raise ValueError(f"unknown generator family {fam}")
    return out


def glm_action(g: Gen, vec: dict, N: int) -> dict:
    """``E_r, F_r, T_r^{+-1}, K_r^{+-1}`` (families e, f, t, tinv, k, kinv)."""
    return _apply_terms(lambda st: glm_terms(g, st, N), vec)


# ---------------------------------------------------------------------------
# the M = 2 operators written with the sign rule


def sl2_pair_terms(X: str, state: tuple, N: int):
    """``E, F, K, Kinv`` on ``Lambda V (x) Lambda V`` built from single-factor maps.

    ``(f (x) g)(v (x) w) = (-1)^{|g||v|} f v (x) g w``.
    """
    v, w = state
    if X in ("K", "Kinv"):
        s = 1 if X == "K" else -1
        return [(1, state, _exp(s * (popcount(v) - popcount(w))))]
    koszul = -1 if popcount(v) & 1 else 1
    out = []
    for i in range(1, N + 1):
        if X == "E":
            # (psi*_i (x) psi_i) prod_{j>i} K_j
            qe = sum(((v >> (j - 1)) & 1) - ((w >> (j - 1)) & 1) for j in range(i + 1, N + 1))
            a = psi_star_bits(i, v)
            b = psi_bits(i, w)
            if a is None or b is None:
                continue
            out.append((koszul * a[0] * b[0], (a[1], b[1]), _exp(qe)))
        elif X == "F":
            # -prod_{j<i} K_j^{-1} (psi_i (x) psi*_i)
            a = psi_bits(i, v)
            b = psi_star_bits(i, w)
            if a is None or b is None:
                continue
            nv, nw = a[1], b[1]
            qe = -sum(((nv >> (j - 1)) & 1) - ((nw >> (j - 1)) & 1) for j in range(1, i))
            out.append((-koszul * a[0] * b[0], (nv, nw), _exp(qe)))
        else:
            raise ValueError(f"unknown operator {X}")
    return out


def sl2_pair_action(X: str, vec: dict, N: int) -> dict:
    return _apply_terms(lambda st: sl2_pair_terms(X, st, N), vec)


def divided_power_action(act: Callable[[dict], dict], j: int, vec: dict) -> dict:
    """``X^{(j)} = X^j / [j]_q!`` for the operator ``act``."""
    for r in range(1, j + 1):
        vec = act(vec)
        if not vec:
            return {}
        if r > 1:
            inv = q_int_inverse(r)
            vec = {k: c * inv for k, c in vec.items()}
    return vec


def operator_on_subspace(act: Callable[[dict], dict], domain: Sequence) -> SparseOperator:
    return SparseOperator({b: act({b: ONE}) for b in domain}, domain)


# ---------------------------------------------------------------------------
# verification


def _gl_pairs(N, M):
    x_gens = [Gen(f, i) for f in ("e", "f") for i in range(1, N)] + \
             [Gen(f, i) for f in ("t", "tinv") for i in range(1, N + 1)]
    y_gens = [Gen(f, r) for f in ("e", "f") for r in range(1, M)] + \
             [Gen(f, r) for f in ("t", "tinv") for r in range(1, M + 1)]
    return x_gens, y_gens


def _Y_name(g):
    return {"e": "E", "f": "F", "t": "T", "tinv": "Tinv", "k": "K", "kinv": "Kinv"}[g.family] + str(g.index)


def verify_howe_commutation(N: int, M: int) -> Report:
    """``[x, Y] = 0`` for every gl_N generator x and gl_M generator Y, plus sl_2 relations."""
    report = Report("howe", config={"N": N, "M": M})
    states = all_states(N, M)
    x_gens, y_gens = _gl_pairs(N, M)
    xs = {g: {st: _apply_terms(lambda s, g=g: gln_terms(g, s, N), {st: ONE}) for st in states} for g in x_gens}
    ys = {g: {st: glm_action(g, {st: ONE}, N) for st in states} for g in y_gens}

    def lin(table, vec):
        out: dict = {}
        for st, c in vec.items():
            vec_iadd(out, table[st], c)
        return out

    for x in x_gens:
        for y in y_gens:
            witness = None
            for st in states:
                if not vec_eq(lin(xs[x], ys[y][st]), lin(ys[y], xs[x][st])):
                    witness = tensor_str(st)
                    break
            report.add(f"[{x},{_Y_name(y)}]=0", witness is None, witness)

    # U_q gl_M relations for the explicit sums
    def act_m(g, vec):
        return glm_action(g, vec, N)

    check_loop_relations(act_m, states, loop_relations(M, include_affine=False), report, label="glM:")
    if M == 2:
        _mode_sums(N, states, report)
    return report


def _mode_sums(N, states, report):
    """sl_2 relations of the sign-rule operators, and agreement with E_1, F_1."""

    def act(g, vec):
        X = {"e": "E", "f": "F", "k": "K", "kinv": "Kinv"}[g.family]
        return sl2_pair_action(X, vec, N)

    inv = TrackedFraction(LaurentPoly.monomial((1,), -1), [(2,)])  # 1/(q - q^-1)
    q2, qm2 = TrackedFraction.monomial((2,)), TrackedFraction.monomial((-2,))
    E, F, K, Ki = Gen("e", 1), Gen("f", 1), Gen("k", 1), Gen("kinv", 1)
    rels = [
        ("[E,F]=(K-K^-1)/(q-q^-1)", [(ONE, (E, F)), (-ONE, (F, E)), (-inv, (K,)), (inv, (Ki,))]),
        ("KEK^-1=q^2E", [(ONE, (K, E, Ki)), (-q2, (E,))]),
        ("KFK^-1=q^-2F", [(ONE, (K, F, Ki)), (-qm2, (F,))]),
    ]
    check_loop_relations(act, states, rels, report, label="modes:")
    for X, g in (("E", E), ("F", F), ("K", K)):
        ok = all(vec_eq(sl2_pair_action(X, {st: ONE}, N), glm_action(g, {st: ONE}, N)) for st in states)
        report.add(f"modes:{X} (sign rule) = {X}_1 (mode sums)", ok)


def transpose_partition(lam: Sequence[int]) -> tuple:
    lam = [x for x in lam if x > 0]
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > c) for c in range(lam[0]))


def gl_dimension(lam: Sequence[int], n: int) -> int:
    """Weyl dimension of the gl_n irreducible with highest weight ``lam``."""
    lam = list(lam) + [0] * (n - len(lam))
    num = prod(lam[i] - lam[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return num // den


def howe_grid_state(lam: Sequence[int], M: int) -> tuple:
    """Boxes of the diagram: factor r holds the rows i with ``lam_i >= r``."""
    return tuple(sum(1 << i for i, x in enumerate(lam) if x >= r) for r in range(1, M + 1))


def decompose_multiplicities(N: int, M: int, report: Report | None = None):
    """Joint highest-weight vectors of gl_N x gl_M, grouped by gl_N weight.

    Returns a list of ``(lam, multiplicity)``; checks go to ``report``.
    """
    report = report if report is not None else Report("decomposition", config={"N": N, "M": M})
    groups: dict = {}
    for st in all_states(N, M):
        key = (gl_weight(st, N), tuple(popcount(m) for m in st))
        groups.setdefault(key, []).append(st)
    raising = [Gen("e", i) for i in range(1, N)]
    Raising = [Gen("e", r) for r in range(1, M)]
    found = []
    grid_ok = True
    grid_witness = None
    for (lam, mu), space in sorted(groups.items()):
        rows: dict = {}
        for j, st in enumerate(space):
            images = [(("x", g), gln_action(g, None, {st: ONE}, N)) for g in raising]
            images += [(("Y", g), glm_action(g, {st: ONE}, N)) for g in Raising]
            for tag, img in images:
                for t, c in img.items():
                    rows.setdefault((tag, t), {})[j] = c.num
        mat = [[row.get(j, LaurentPoly()) for j in range(len(space))] for row in rows.values()]
        kernel = nullspace(mat, len(space)) if mat else [
            [LaurentPoly.const(int(i == j)) for i in range(len(space))] for j in range(len(space))]
        if kernel:
            found.append((lam, mu, len(kernel)))
            if len(kernel) == 1:
                support = [space[i] for i, c in enumerate(kernel[0]) if c]
                expected = howe_grid_state(lam, M)
                if support != [expected]:
                    grid_ok = False
                    grid_witness = grid_witness or f"lam={lam}: support {[tensor_str(s) for s in support]}"
    result = []
    partitions_ok = True
    for lam, mu, mult in found:
        is_partition = all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1)) and all(x <= M for x in lam)
        ltr = transpose_partition(lam)
        ltr = tuple(ltr) + (0,) * (M - len(ltr))
        if not is_partition or ltr != mu:
            partitions_ok = False
        result.append((lam, mult))
    total = sum(gl_dimension(lam, N) * gl_dimension(transpose_partition(lam) + (0,) * M, M) * mult
                for lam, mult in result)
    expected_lams = _partitions_in_box(N, M)
    report.add("multiplicity one", all(m == 1 for _, m in result),
               None if all(m == 1 for _, m in result) else str([r for r in result if r[1] != 1]))
    report.add("hw weights are partitions with gl_M weight = transpose", partitions_ok)
    report.add("every diagram in the N x M box occurs",
               sorted(lam for lam, _ in result) == sorted(expected_lams))
    report.add("dimension sum = 2^(NM)", total == 2 ** (N * M), f"{total} vs {2 ** (N * M)}" if total != 2 ** (N * M) else None)
    report.add("joint hw vectors are Howe grid monomials", grid_ok, grid_witness)
    return result


def _partitions_in_box(N, M):
    out = []

    def rec(prefix, maxpart):
        if len(prefix) == N:
            out.append(tuple(prefix))
            return
        for x in range(maxpart, -1, -1):
            rec(prefix + [x], x)

    rec([], M)
    return out


def dim_weight_subspace(mu: Sequence[int], N: int) -> int:
    return prod(comb(N, m) for m in mu)
