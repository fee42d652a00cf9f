"""The rational R-matrix obtained as the ``q -> 1`` limit of the braiding family.

``R^rat_{k,k'}(u, hbar) = sum_j c_j(u, hbar) M_j`` with integer matrices
``M_j = F^j E^j`` (k >= k') or ``E^j F^j`` (k <= k') built from the classical
operators ``E = sum psi*_i (x) psi_i``, ``F = -sum psi_i (x) psi*_i``, and

    c_j = (-hbar)^j / j! * prod_{i=1}^j 2 / (2u + hbar (2i + |k-k'|)).

Doubling the denominators keeps every pole of the form ``2u + hbar*n`` with
integer ``n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import mpmath

from .fock import Gen, popcount
from .howe import gln_terms, sl2_pair_terms, tensor_str, weight_subspace
from .linalg import SparseOperator, vec_iadd
from .report import Report
from .rmatrix import r_matrix
from .sampling import random_rational
from .scalars import LaurentPoly, poly_to_json

__all__ = [
    "FloatEvalConfig",
    "RationalRMatrix",
    "classical_pair_action",
    "rational_r",
    "verify_rational_ybe",
    "verify_classical_sl2",
    "limit_check",
    "limit_estimate",
]


def classical_pair_action(X: str, vec: dict, N: int) -> dict:
    """``E`` or ``F`` at ``q = 1`` on ``Lambda V (x) Lambda V`` (integer coefficients)."""
    out: dict = {}
    for st, c in vec.items():
        for sign, new, _ in sl2_pair_terms(X, st, N):
            vec_iadd(out, {new: sign * c})
    return out


def classical_gln_action(g: Gen, vec: dict, N: int) -> dict:
    out: dict = {}
    for st, c in vec.items():
        for sign, new, _ in gln_terms(g, st, N):
            vec_iadd(out, {new: sign * c})
    return out


@dataclass
class RationalRMatrix:
    k: int
    kp: int
    N: int
    domain: list
    terms: list = field(default_factory=list)  # [(j, {col: {row: int}})]

    @property
    def shift(self) -> int:
        return abs(self.k - self.kp)

    def coefficient(self, j: int, u, hbar):
        """``c_j(u, hbar)``; exact for Fractions, floating for mpmath numbers."""
        c = (-hbar) ** j / factorial(j)
        for i in range(1, j + 1):
            c = c * 2 / (2 * u + hbar * (2 * i + self.shift))
        return c

    def pole_offsets(self) -> list:
        """Integers ``n`` such that the entries have poles on ``2u + hbar*n = 0``."""
        jmax = max((j for j, _ in self.terms), default=0)
        return [2 * i + self.shift for i in range(1, jmax + 1)]

    def evaluate(self, u, hbar) -> SparseOperator:
        for n in self.pole_offsets():
            if 2 * u + hbar * n == 0:
                raise ZeroDivisionError(f"pole 2u + {n} hbar = 0")
        cols: dict = {b: {} for b in self.domain}
        for j, mat in self.terms:
            c = self.coefficient(j, u, hbar)
            for b, col in mat.items():
                vec_iadd(cols[b], col, c)
        return SparseOperator(cols, self.domain, self.domain)

    def cleared(self) -> dict:
        """Entries times ``prod_i (2u + hbar (2i + |k-k'|))`` as polynomials in ``(u, hbar)``."""
        offsets = self.pole_offsets()
        u, h = LaurentPoly.var(0), LaurentPoly.var(1)
        cols: dict = {b: {} for b in self.domain}
        for j, mat in self.terms:
            c = LaurentPoly.monomial((0, j), Fraction((-2) ** j, factorial(j)))
            for n in offsets[j:]:
                c = c * (u * 2 + h * n)
            for b, col in mat.items():
                for r, x in col.items():
                    cols[b][r] = cols[b].get(r, LaurentPoly()) + c * x
        return {b: {r: v for r, v in col.items() if v} for b, col in cols.items()}

    def to_json(self) -> dict:
        return {
            "kind": "rational-r",
            "N": self.N, "k": self.k, "kp": self.kp,
            "coefficient": "c_j = (-hbar)^j/j! * prod_{i=1..j} 2/(2u + hbar*(2i + |k-kp|))",
            "basis": [tensor_str(b) for b in self.domain],
            "terms": [
                {"j": j, "entries": [
                    {"row": self.domain.index(r), "col": self.domain.index(b), "value": v}
                    for b in self.domain for r, v in sorted(mat.get(b, {}).items())]}
                for j, mat in self.terms
            ],
        }

    def cleared_json(self) -> dict:
        idx = {b: i for i, b in enumerate(self.domain)}
        return {
            "kind": "rational-r-cleared",
            "N": self.N, "k": self.k, "kp": self.kp,
            "variables": ["u", "hbar"],
            "cleared_by": [f"2u+{n}hbar" for n in self.pole_offsets()],
            "basis": [tensor_str(b) for b in self.domain],
            "entries": [{"row": idx[r], "col": idx[b], "value": poly_to_json(v, 2)}
                        for b, col in self.cleared().items() for r, v in sorted(col.items())],
        }


def rational_r(k: int, kp: int, N: int) -> RationalRMatrix:
    if not (0 <= k <= N and 0 <= kp <= N):
        raise ValueError(f"degrees ({k},{kp}) outside [0,{N}]")
    domain = weight_subspace((k, kp), N)
    first, second = ("E", "F") if k >= kp else ("F", "E")
    R = RationalRMatrix(k, kp, N, domain)
    j = 0
    while True:
        mat = {}
        for b in domain:
            v = {b: 1}
            for _ in range(j):
                v = classical_pair_action(first, v, N)
            for _ in range(j):
                v = classical_pair_action(second, v, N)
            if v:
                mat[b] = v
        if not mat:
            break
        R.terms.append((j, mat))
        j += 1
    return R


def _flip(vec: dict) -> dict:
    out = {}
    for (v, w), c in vec.items():
        out[(w, v)] = -c if popcount(v) * popcount(w) % 2 else c
    return out


def _rcheck_rat(k, kp, N, u, hbar) -> SparseOperator:
    R = rational_r(k, kp, N).evaluate(u, hbar)
    return SparseOperator({b: _flip(col) for b, col in R.cols.items()}, R.domain)


def _triple(R: SparseOperator, pos: int, vec: dict) -> dict:
    out: dict = {}
    for st, c in vec.items():
        for new, x in R.column(st[pos:pos + 2]).items():
            vec_iadd(out, {st[:pos] + new + st[pos + 2:]: x * c})
    return out


def _sample_uh(rng):
    u = [random_rational(rng, Fraction(-3), Fraction(3)) for _ in range(3)]
    hbar = random_rational(rng, Fraction(1, 4), Fraction(3))
    return u, hbar


def verify_rational_ybe(k1: int, k2: int, k3: int, N: int, samples: int = 20, seed: int = 0,
                        report: Report | None = None) -> Report:
    """Additive braid relation and gl_N invariance at rational ``(u_1, u_2, u_3, hbar)``."""
    report = report if report is not None else Report(
        "yangian", config={"N": N, "k": [k1, k2, k3], "samples": samples, "seed": seed})
    rng = random.Random(seed)
    states = weight_subspace((k1, k2, k3), N)
    done, rejected, fail = 0, 0, None
    while done < samples:
        (u1, u2, u3), hbar = _sample_uh(rng)
        try:
            A = _rcheck_rat(k2, k3, N, u2 - u3, hbar)
            B = _rcheck_rat(k1, k3, N, u1 - u3, hbar)
            C = _rcheck_rat(k1, k2, N, u1 - u2, hbar)
        except ZeroDivisionError:
            rejected += 1
            continue
        done += 1
        for st in states:
            v = {st: Fraction(1)}
            lhs = _triple(A, 0, _triple(B, 1, _triple(C, 0, v)))
            rhs = _triple(C, 1, _triple(B, 0, _triple(A, 1, v)))
            if lhs != rhs and fail is None:
                bad = next(x for x in sorted(set(lhs) | set(rhs)) if lhs.get(x, 0) != rhs.get(x, 0))
                fail = f"u={[str(u1), str(u2), str(u3)]} hbar={hbar}: entry ({tensor_str(bad)}, {tensor_str(st)})"
    report.add(f"rational ybe N={N} ({k1},{k2},{k3}) at {samples} samples", fail is None, fail)
    report.config["rejected_samples"] = rejected
    return report


def verify_rational_invariance(k: int, kp: int, N: int, samples: int = 20, seed: int = 0,
                               report: Report | None = None) -> Report:
    """``[x, R^rat(u, hbar)] = 0`` for classical ``e_i, f_i`` acting diagonally."""
    report = report if report is not None else Report("yangian-invariance", config={"N": N, "k": k, "kp": kp})
    rng = random.Random(seed)
    domain = weight_subspace((k, kp), N)
    gens = [Gen(f, i) for f in ("e", "f") for i in range(1, N)]
    R0 = rational_r(k, kp, N)
    bad = {}
    done = 0
    while done < samples:
        (u, _, _), hbar = _sample_uh(rng)
        try:
            R = R0.evaluate(u, hbar)
        except ZeroDivisionError:
            continue
        done += 1
        for g in gens:
            for b in domain:
                xb = classical_gln_action(g, {b: Fraction(1)}, N)
                lhs = R.apply(xb)
                rhs = classical_gln_action(g, R.apply({b: Fraction(1)}), N)
                if lhs != rhs:
                    bad.setdefault(str(g), f"u={u} hbar={hbar} at {tensor_str(b)}")
                    break
    for g in gens:
        report.add(f"gl_N invariance of R^rat N={N} ({k},{kp}) {g}", str(g) not in bad, bad.get(str(g)))
    return report


def verify_classical_sl2(N: int, report: Report | None = None) -> Report:
    """``[E, F]`` acts by ``k - k'`` on ``Lambda^k (x) Lambda^k'`` at ``q = 1``."""
    report = report if report is not None else Report("classical-sl2", config={"N": N})
    for k in range(N + 1):
        for kp in range(N + 1):
            ok = True
            for b in weight_subspace((k, kp), N):
                v = {b: 1}
                ef = classical_pair_action("E", classical_pair_action("F", v, N), N)
                fe = classical_pair_action("F", classical_pair_action("E", v, N), N)
                comm = dict(ef)
                vec_iadd(comm, fe, -1)
                if comm != ({b: k - kp} if k != kp else {}):
                    ok = False
                    break
            report.add(f"[E,F] = k-k' on ({k},{kp}), N={N}", ok)
    return report


# ---------------------------------------------------------------------------
# the limit, in high precision


@dataclass
class FloatEvalConfig:
    eps: tuple = ("1e-3", "1e-4", "1e-5")
    precision: int = 60
    u: str = "0.37"
    hbar: str = "1"

    def __post_init__(self):
        vals = [mpmath.mpf(e) for e in self.eps]
        if any(v <= 0 for v in vals) or any(a <= b for a, b in zip(vals, vals[1:])):
            raise ValueError("eps must be positive and strictly decreasing")


def _trig_r_float(k, kp, N, eps, u, hbar, ctx):
    q = ctx.exp(eps * hbar)
    z = ctx.exp(2 * eps * u)
    R = r_matrix(k, kp, N)
    return {(r, b): v.evaluate_float([q, z], ctx) for r, b, v in R.entries()}


def _rat_float(k, kp, N, u, hbar):
    R = rational_r(k, kp, N)
    out = {}
    for j, mat in R.terms:
        c = R.coefficient(j, u, hbar)
        for b, col in mat.items():
            for r, x in col.items():
                out[(r, b)] = out.get((r, b), 0) + c * x
    return out


def _distance(a: dict, b: dict, ctx):
    keys = set(a) | set(b)
    return max((abs(a.get(x, 0) - b.get(x, 0)) for x in keys), default=ctx.mpf(0))


def limit_check(k: int, kp: int, N: int, cfg: FloatEvalConfig | None = None,
                report: Report | None = None) -> Report:
    """Distance from ``R(e^{eps hbar}, e^{2 eps u})`` to ``R^rat(u, hbar)`` shrinks linearly in eps.

    Passes when each successive distance ratio lies within a factor 2 of the
    eps ratio, or when every distance is below ``10^{-(precision-10)}``
    (the trigonometric matrix is then eps-independent, as for ``k = 0``).
    """
    cfg = cfg or FloatEvalConfig()
    report = report if report is not None else Report("limit", config={"N": N, "k": k, "kp": kp})
    ctx = mpmath.mp.clone()
    ctx.dps = cfg.precision
    u, hbar = ctx.mpf(cfg.u), ctx.mpf(cfg.hbar)
    target = _rat_float(k, kp, N, u, hbar)
    eps = [ctx.mpf(e) for e in cfg.eps]
    dists = [_distance(_trig_r_float(k, kp, N, e, u, hbar, ctx), target, ctx) for e in eps]
    floor = ctx.mpf(10) ** (-(cfg.precision - 10))
    table = [{"eps": ctx.nstr(e, 3), "distance": ctx.nstr(d, 8)} for e, d in zip(eps, dists)]
    if all(d < floor for d in dists):
        ok, slopes = True, []
    else:
        slopes = []
        ok = True
        for (e1, d1), (e2, d2) in zip(zip(eps, dists), zip(eps[1:], dists[1:])):
            if d2 == 0:
                ok = False
                slopes.append(None)
                continue
            ratio, expected = d1 / d2, e1 / e2
            slopes.append(ctx.nstr(ratio, 6))
            ok &= expected / 2 <= ratio <= expected * 2
    report.add(f"limit O(eps) N={N} ({k},{kp})", ok, None if ok else str(table),
               distances=table, ratios=slopes)
    return report


def limit_estimate(k: int, kp: int, N: int, eps="1e-6", u="0.37", hbar="1", precision: int = 60):
    """Richardson estimate ``(10 R(eps/10) - R(eps))/9`` of the limit, with error O(eps^2)."""
    ctx = mpmath.mp.clone()
    ctx.dps = precision
    e, uu, hh = ctx.mpf(eps), ctx.mpf(u), ctx.mpf(hbar)
    a = _trig_r_float(k, kp, N, e, uu, hh, ctx)
    b = _trig_r_float(k, kp, N, e / 10, uu, hh, ctx)
    est = {x: (10 * b.get(x, 0) - a.get(x, 0)) / 9 for x in set(a) | set(b)}
    return est, _rat_float(k, kp, N, uu, hh), ctx


def limit_digits_check(k: int, kp: int, N: int, digits: int = 10, report: Report | None = None, **kw) -> Report:
    """Extrapolated limit entries agree with ``R^rat`` to ``digits`` significant digits."""
    report = report if report is not None else Report("limit-digits", config={"N": N, "k": k, "kp": kp})
    est, target, ctx = limit_estimate(k, kp, N, **kw)
    tol = ctx.mpf(10) ** (-digits)
    worst = 0
    for x in set(est) | set(target):
        a, b = est.get(x, 0), target.get(x, 0)
        scale = max(abs(b), ctx.mpf(1) * 10 ** -30)
        worst = max(worst, abs(a - b) / scale if abs(b) > 1e-30 else abs(a - b))
    report.add(f"limit entries match R^rat to {digits} digits N={N} ({k},{kp})", worst < tol,
               None if worst < tol else f"worst relative error {ctx.nstr(worst, 5)}")
    return report


__all__ += ["verify_rational_invariance", "limit_digits_check", "classical_gln_action"]
