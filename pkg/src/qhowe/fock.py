"""Fermionic Fock space of ``C^N`` and the Hayashi representation.

A basis state is an int bitmask; bit ``i-1`` set means ``psi*_i`` is
occupied. The state stands for ``psi*_{i_1} ... psi*_{i_k}|0>`` with
``i_1 < ... < i_k``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, NamedTuple

from .linalg import vec_eq, vec_iadd
from .report import Report
from .scalars import ONE, LaurentPoly, TrackedFraction, q_binomial, q_int_inverse

__all__ = [
    "Gen",
    "FockVector",
    "basis_states",
    "state_str",
    "psi_star_bits",
    "psi_bits",
    "apply_psi_star",
    "apply_psi",
    "apply_t",
    "hayashi_action",
    "highest_weight_vector",
    "cartan_entry",
    "verify_hayashi_relations",
    "check_loop_relations",
]


class Gen(NamedTuple):
    """Generator of the quantum loop algebra: family in e, f, t, tinv, k, kinv."""

    family: str
    index: int

    def __str__(self):
        return f"{self.family}{self.index}"


def popcount(x: int) -> int:
    return bin(x).count("1")


def basis_states(N: int, k: int | None = None) -> list[int]:
    if k is None:
        return [m for kk in range(N + 1) for m in basis_states(N, kk)]
    return [sum(1 << (i - 1) for i in c) for c in combinations(range(1, N + 1), k)]


def state_str(mask: int) -> str:
    idx = [str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1]
    return "{" + ",".join(idx) + "}"


def psi_star_bits(i: int, mask: int):
    """``(sign, new_mask)`` for ``psi*_i`` on a basis state, or None."""
    bit = 1 << (i - 1)
    if mask & bit:
        return None
    sign = -1 if popcount(mask & (bit - 1)) & 1 else 1
    return sign, mask | bit


def psi_bits(i: int, mask: int):
    bit = 1 << (i - 1)
    if not mask & bit:
        return None
    sign = -1 if popcount(mask & (bit - 1)) & 1 else 1
    return sign, mask ^ bit


class FockVector:
    """Sparse vector in the Fock space of ``C^N``."""

    __slots__ = ("entries", "N")

    def __init__(self, entries: dict | None, N: int):
        self.N = N
        self.entries = {m: c for m, c in (entries or {}).items() if c}
        lim = 1 << N
        for m in self.entries:
            if not 0 <= m < lim:
                raise ValueError(f"state {m} has bits above N={N}")

    @classmethod
    def basis(cls, mask: int, N: int, coeff=ONE) -> "FockVector":
        return cls({mask: coeff}, N)

    @classmethod
    def vacuum(cls, N: int) -> "FockVector":
        return cls.basis(0, N)

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.entries)
        vec_iadd(out, other.entries)
        return FockVector(out, self.N)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "FockVector":
        return FockVector({m: v * c for m, v in self.entries.items()}, self.N)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.N == other.N and vec_eq(self.entries, other.entries)

    def __bool__(self):
        return bool(self.entries)

    def __repr__(self):
        if not self.entries:
            return "FockVector(0)"
        parts = [f"({c})*{state_str(m)}" for m, c in sorted(self.entries.items())]
        return "FockVector(" + " + ".join(parts) + ")"


def _map_states(v: FockVector, fn) -> FockVector:
    out: dict = {}
    for m, c in v.entries.items():
        r = fn(m)
        if r is None:
            continue
        sign, new, exp = r
        term = c.mul_monomial(exp, sign) if exp or sign != 1 else c
        old = out.get(new)
        if old is None:
            out[new] = term
        else:
            s = old + term
            if s:
                out[new] = s
            else:
                del out[new]
    return FockVector(out, v.N)


def apply_psi_star(i: int, v: FockVector) -> FockVector:
    def fn(m):
        r = psi_star_bits(i, m)
        return None if r is None else (r[0], r[1], ())

    return _map_states(v, fn)


def apply_psi(i: int, v: FockVector) -> FockVector:
    def fn(m):
        r = psi_bits(i, m)
        return None if r is None else (r[0], r[1], ())

    return _map_states(v, fn)


def apply_t(i: int, sign: int, v: FockVector) -> FockVector:
    bit = 1 << (i - 1)
    return _map_states(v, lambda m: (1, m, (sign,) if m & bit else ()))


def _spectral_exp(z, power):
    if z is None or power == 0:
        return ()
    e = [0] * (z + 1)
    e[z] = power
    return tuple(e)


def generator_on_state(g: Gen, mask: int, N: int, z: int | None = None):
    """Action of a generator on one basis state as ``(sign, mask, exponent)``.

    ``z`` is the index of the spectral variable twisting ``e_0, f_0``
    (None for the untwisted action).
    """
    fam, i = g
    if fam in ("t", "tinv"):
        if not 1 <= i <= N:
            raise ValueError(f"t index {i} out of range")
        s = 1 if fam == "t" else -1
        return 1, mask, ((s,) if mask >> (i - 1) & 1 else ())
    if fam in ("k", "kinv"):
        a, b = _k_pair(i, N)
        s = 1 if fam == "k" else -1
        d = (mask >> (a - 1) & 1) - (mask >> (b - 1) & 1)
        return 1, mask, ((s * d,) if d else ())
    if not 0 <= i <= N - 1:
        raise ValueError(f"generator index {i} out of range")
    # e_i = psi*_i psi_{i+1}, f_i = psi*_{i+1} psi_i, index 0 read as N
    a, b = _k_pair(i, N)
    if fam == "e":
        src, dst, zp = b, a, 1
    elif fam == "f":
        src, dst, zp = a, b, -1
    else:
        raise ValueError(f"unknown generator family {fam}")
    r = psi_bits(src, mask)
    if r is None:
        return None
    s1, m1 = r
    r = psi_star_bits(dst, m1)
    if r is None:
        return None
    s2, m2 = r
    exp = _spectral_exp(z, zp) if i == 0 else ()
    return s1 * s2, m2, exp


def _k_pair(i: int, N: int):
    """``k_i = t_a t_b^{-1}`` with ``(a, b) = (i, i+1)`` mod N, 1-based."""
    a = N if i % N == 0 else i % N
    b = a % N + 1
    return a, b


def hayashi_action(g: Gen, z: int | None, v: FockVector) -> FockVector:
    N = v.N
    return _map_states(v, lambda m: generator_on_state(g, m, N, z))


def highest_weight_vector(k: int, N: int) -> FockVector:
    if not 0 <= k <= N:
        raise ValueError("need 0 <= k <= N")
    return FockVector.basis((1 << k) - 1, N)


def cartan_entry(i: int, j: int, N: int) -> int:
    """``(alpha_i | alpha_j)`` for the affine root system, indices mod N."""
    def alpha(r):
        a, b = _k_pair(r, N)
        v = [0] * (N + 1)
        v[a] += 1
        v[b] -= 1
        return v

    return sum(x * y for x, y in zip(alpha(i), alpha(j)))


def t_weight_pairing(t_index: int, j: int, N: int) -> int:
    """``(epsilon_t | alpha_j)``."""
    a, b = _k_pair(j, N)
    return (t_index == a) - (t_index == b)


# ---------------------------------------------------------------------------
# relation checking


def _qpow(n):
    return TrackedFraction.monomial((n,)) if n else ONE


_Q_MINUS_QINV_INV = None


def _inv_q_minus_qinv():
    # 1/(q - q^-1) = -q/(1 - q^2)
    global _Q_MINUS_QINV_INV
    if _Q_MINUS_QINV_INV is None:
        _Q_MINUS_QINV_INV = TrackedFraction(LaurentPoly.monomial((1,), -1), [(2,)])
    return _Q_MINUS_QINV_INV


def loop_relations(N: int, include_affine: bool = True, gl_t: bool = True):
    """Defining relations as ``(name, [(coeff, word), ...])``; words act right to left."""
    idx = range(0, N) if include_affine else range(1, N)
    rels = []
    for i in idx:
        rels.append((f"k{i}*kinv{i}=1", [(ONE, (Gen("k", i), Gen("kinv", i))), (-ONE, ())]))
        for j in idx:
            if j > i:
                rels.append((f"k{i}k{j}=k{j}k{i}",
                             [(ONE, (Gen("k", i), Gen("k", j))), (-ONE, (Gen("k", j), Gen("k", i)))]))
            a = cartan_entry(i, j, N)
            rels.append((f"k{i} e{j} kinv{i}=q^{a} e{j}",
                         [(ONE, (Gen("k", i), Gen("e", j), Gen("kinv", i))), (-_qpow(a), (Gen("e", j),))]))
            rels.append((f"k{i} f{j} kinv{i}=q^{-a} f{j}",
                         [(ONE, (Gen("k", i), Gen("f", j), Gen("kinv", i))), (-_qpow(-a), (Gen("f", j),))]))
            comm = [(ONE, (Gen("e", i), Gen("f", j))), (-ONE, (Gen("f", j), Gen("e", i)))]
            if i == j:
                c = _inv_q_minus_qinv()
                comm += [(-c, (Gen("k", i),)), (c, (Gen("kinv", i),))]
            rels.append((f"[e{i},f{j}]", comm))
            if i != j:
                d = 1 - a
                for fam in ("e", "f"):
                    terms = []
                    for r in range(d + 1):
                        coeff = TrackedFraction(q_binomial(d, r) * (-1) ** r)
                        word = (Gen(fam, i),) * r + (Gen(fam, j),) + (Gen(fam, i),) * (d - r)
                        terms.append((coeff, word))
                    rels.append((f"serre_{fam}({i},{j})", terms))
    if gl_t:
        for t in range(1, N + 1):
            rels.append((f"t{t}*tinv{t}=1", [(ONE, (Gen("t", t), Gen("tinv", t))), (-ONE, ())]))
            for j in idx:
                p = t_weight_pairing(t, j, N)
                rels.append((f"t{t} e{j} tinv{t}", [(ONE, (Gen("t", t), Gen("e", j), Gen("tinv", t))),
                                                    (-_qpow(p), (Gen("e", j),))]))
                rels.append((f"t{t} f{j} tinv{t}", [(ONE, (Gen("t", t), Gen("f", j), Gen("tinv", t))),
                                                    (-_qpow(-p), (Gen("f", j),))]))
            for u in range(t + 1, N + 1):
                rels.append((f"t{t}t{u}=t{u}t{t}", [(ONE, (Gen("t", t), Gen("t", u))),
                                                  (-ONE, (Gen("t", u), Gen("t", t)))]))
    if include_affine:
        rels.append(("prod k_i = 1", [(ONE, tuple(Gen("k", i) for i in range(N))), (-ONE, ())]))
    return rels


def check_loop_relations(act, basis: Iterable, relations, report: Report, label: str = "") -> Report:
    """Check every relation on every basis state; ``act(gen, vec) -> vec``."""
    basis = list(basis)
    for name, terms in relations:
        witness = None
        for b in basis:
            total: dict = {}
            for coeff, word in terms:
                vec = {b: coeff}
                for g in reversed(word):
                    vec = act(g, vec)
                    if not vec:
                        break
                vec_iadd(total, vec)
            if total:
                witness = f"state {b!r}"
                break
        report.add(f"{label}{name}", witness is None, witness)
    return report


def _fock_act(N, z):
    def act(g, vec):
        return hayashi_action(g, z, FockVector(vec, N)).entries

    return act


def verify_hayashi_relations(N: int, z: int | None = 1, points=None) -> Report:
    """All quantum loop algebra relations on the Fock space, exactly.

    ``points`` is accepted for interface symmetry; the check is symbolic.
    """
    if not 2 <= N <= 62:
        raise ValueError("need 2 <= N <= 62")
    report = Report("hayashi", config={"N": N, "z": z})
    check_loop_relations(_fock_act(N, z), basis_states(N), loop_relations(N), report)
    # central element prod t_i acts by q^k on the degree-k part
    ok = True
    witness = None
    for m in basis_states(N):
        v = {m: ONE}
        for t in range(1, N + 1):
            v = hayashi_action(Gen("t", t), z, FockVector(v, N)).entries
        if not vec_eq(v, {m: _qpow(popcount(m))}):
            ok, witness = False, state_str(m)
            break
    report.add("prod t_i = q^k on degree k", ok, witness)
    return report


def apply_divided(g: Gen, j: int, z: int | None, v: FockVector) -> FockVector:
    """``g^j / [j]_q!``."""
    for r in range(1, j + 1):
        v = hayashi_action(g, z, v)
        if r > 1:
            v = v.scale(q_int_inverse(r))
    return v
