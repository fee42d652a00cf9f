"""Sparse vectors/operators over exact scalars and fraction-free elimination.

Vectors are plain dicts ``basis -> scalar`` with no stored zeros. Scalars may
be ``TrackedFraction``, ``LaurentPoly`` or ``Fraction``; all that is needed is
``+``, ``*`` and truthiness.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .scalars import EvalPoint, InexactDivisionError, LaurentPoly, TrackedFraction

__all__ = [
    "vec_add",
    "vec_scale",
    "vec_sub",
    "vec_eq",
    "vec_evaluate",
    "SparseOperator",
    "bareiss_echelon",
    "nullspace",
    "solve_adjugate",
    "determinant",
    "fraction_rank",
]


def vec_add(a: dict, b: dict, c=None) -> dict:
    """Return ``a + c*b`` as a new dict."""
    out = dict(a)
    vec_iadd(out, b, c)
    return out


def vec_iadd(acc: dict, b: dict, c=None) -> dict:
    for k, v in b.items():
        if c is not None:
            v = v * c
        old = acc.get(k)
        if old is None:
            if v:
                acc[k] = v
        else:
            s = old + v
            if s:
                acc[k] = s
            else:
                del acc[k]
    return acc


def vec_scale(a: dict, c) -> dict:
    out = {}
    for k, v in a.items():
        w = v * c
        if w:
            out[k] = w
    return out


def vec_sub(a: dict, b: dict) -> dict:
    return vec_add(a, b, -1)


def vec_eq(a: dict, b: dict) -> bool:
    if a.keys() != b.keys():
        return False
    return all(a[k] == b[k] for k in a)


def vec_evaluate(a: dict, point: EvalPoint) -> dict:
    out = {}
    for k, v in a.items():
        w = _eval_scalar(v, point)
        if w:
            out[k] = w
    return out


def _eval_scalar(v, point):
    if isinstance(v, TrackedFraction):
        return v.evaluate(point)
    if isinstance(v, LaurentPoly):
        return v.evaluate(point.values)
    return v


class SparseOperator:
    """Column-sparse matrix: ``cols[domain_state] = {codomain_state: scalar}``."""

    __slots__ = ("cols", "domain", "codomain")

    def __init__(self, cols: dict | None = None, domain: Sequence | None = None,
                 codomain: Sequence | None = None):
        self.cols = {k: v for k, v in (cols or {}).items() if v}
        self.domain = list(domain) if domain is not None else None
        self.codomain = list(codomain) if codomain is not None else None

    @classmethod
    def from_function(cls, fn: Callable[[Hashable], dict], domain: Iterable,
                      codomain: Sequence | None = None) -> "SparseOperator":
        domain = list(domain)
        return cls({b: fn(b) for b in domain}, domain, codomain)

    @classmethod
    def identity(cls, basis: Iterable, one=1) -> "SparseOperator":
        basis = list(basis)
        return cls({b: {b: one} for b in basis}, basis, basis)

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for b, c in vec.items():
            col = self.cols.get(b)
            if col:
                vec_iadd(out, col, c)
        return out

    def column(self, b) -> dict:
        return self.cols.get(b, {})

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        cols = {b: self.apply(col) for b, col in other.cols.items()}
        return SparseOperator(cols, other.domain, self.codomain)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        cols = {b: dict(c) for b, c in self.cols.items()}
        for b, c in other.cols.items():
            cols[b] = vec_add(cols.get(b, {}), c)
        return SparseOperator(cols, self.domain or other.domain, self.codomain or other.codomain)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "SparseOperator":
        return SparseOperator({b: vec_scale(col, c) for b, col in self.cols.items()},
                              self.domain, self.codomain)

    def map_entries(self, fn) -> "SparseOperator":
        cols = {}
        for b, col in self.cols.items():
            new = {}
            for r, v in col.items():
                w = fn(v)
                if w:
                    new[r] = w
            cols[b] = new
        return SparseOperator(cols, self.domain, self.codomain)

    def evaluate(self, point: EvalPoint) -> "SparseOperator":
        return self.map_entries(lambda v: _eval_scalar(v, point))

    def entries(self):
        for b, col in self.cols.items():
            for r, v in col.items():
                yield r, b, v

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def equals(self, other: "SparseOperator") -> bool:
        keys = set(self.cols) | set(other.cols)
        return all(vec_eq(self.cols.get(k, {}), other.cols.get(k, {})) for k in keys)

    def first_difference(self, other: "SparseOperator"):
        """First ``(row, col, mine, theirs)`` where the operators differ, or None."""
        for k in _ordered(set(self.cols) | set(other.cols)):
            a, b = self.cols.get(k, {}), other.cols.get(k, {})
            for r in _ordered(set(a) | set(b)):
                x, y = a.get(r, 0), b.get(r, 0)
                if not _scalar_eq(x, y):
                    return r, k, x, y
        return None

    def dense(self, domain: Sequence | None = None, codomain: Sequence | None = None, zero=0):
        domain = list(domain if domain is not None else self.domain)
        codomain = list(codomain if codomain is not None else self.codomain)
        idx = {b: i for i, b in enumerate(codomain)}
        rows = [[zero] * len(domain) for _ in codomain]
        for j, b in enumerate(domain):
            for r, v in self.cols.get(b, {}).items():
                if r not in idx:
                    raise KeyError(f"codomain state {r} missing from basis")
                rows[idx[r]][j] = v
        return rows


def _scalar_eq(x, y):
    if isinstance(x, (TrackedFraction, LaurentPoly)):
        return x == y
    if isinstance(y, (TrackedFraction, LaurentPoly)):
        return y == x
    return x == y


def _ordered(keys):
    try:
        return sorted(keys)
    except TypeError:
        return list(keys)


# ---------------------------------------------------------------------------
# fraction-free elimination over Laurent polynomials


def _exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    if d == 1:
        return p
    return p.exact_div(d)


def bareiss_echelon(A: Sequence[Sequence[LaurentPoly]]):
    """Fraction-free row echelon form.

    Returns ``(R, pivots, swaps)``; ``R[i][pivots[i]]`` is the leading
    principal minor of order ``i+1`` on the pivot columns.
    """
    M = [[x if isinstance(x, LaurentPoly) else LaurentPoly.const(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    prev = LaurentPoly.const(1)
    r = 0
    pivots = []
    swaps = 0
    for c in range(n):
        if r >= m:
            break
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[p], M[r] = M[r], M[p]
            swaps += 1
        piv = M[r][c]
        for i in range(r + 1, m):
            mic = M[i][c]
            row_i = M[i]
            row_r = M[r]
            for j in range(c + 1, n):
                val = piv * row_i[j]
                if mic:
                    val = val - mic * row_r[j]
                row_i[j] = _exact(val, prev) if val else val
            row_i[c] = LaurentPoly()
        prev = piv
        pivots.append(c)
        r += 1
    return M, pivots, swaps


def nullspace(A: Sequence[Sequence[LaurentPoly]], ncols: int | None = None) -> list[list[LaurentPoly]]:
    """Polynomial basis of the right kernel of ``A`` (one vector per free column)."""
    if not A:
        n = ncols or 0
        return [[LaurentPoly.const(1 if i == j else 0) for i in range(n)] for j in range(n)]
    R, pivots, _ = bareiss_echelon(A)
    n = len(R[0])
    free = [c for c in range(n) if c not in pivots]
    last = R[len(pivots) - 1][pivots[-1]] if pivots else LaurentPoly.const(1)
    basis = []
    for f in free:
        x = [LaurentPoly() for _ in range(n)]
        x[f] = last
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            s = LaurentPoly()
            for j in range(pc + 1, n):
                if R[i][j] and x[j]:
                    s = s + R[i][j] * x[j]
            x[pc] = _exact(-s, R[i][pc]) if s else LaurentPoly()
        basis.append(x)
    return basis


def solve_adjugate(A: Sequence[Sequence[LaurentPoly]]):
    """Return ``(X, d)`` with ``A @ X == d * I`` and ``d = ±det(A) != 0``."""
    n = len(A)
    aug = [list(row) + [LaurentPoly.const(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(A)]
    R, pivots, _ = bareiss_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    d = R[n - 1][n - 1]
    X = [[LaurentPoly() for _ in range(n)] for _ in range(n)]
    for col in range(n):
        for i in range(n - 1, -1, -1):
            s = d * R[i][n + col]
            for j in range(i + 1, n):
                if R[i][j] and X[j][col]:
                    s = s - R[i][j] * X[j][col]
            X[i][col] = _exact(s, R[i][i]) if s else LaurentPoly()
    return X, d


def determinant(A: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    n = len(A)
    if n == 0:
        return LaurentPoly.const(1)
    R, pivots, swaps = bareiss_echelon(A)
    if len(pivots) < n:
        return LaurentPoly()
    d = R[n - 1][n - 1]
    return -d if swaps % 2 else d


def fraction_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q by plain Gaussian elimination."""
    M = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[p], M[rank] = M[rank], M[p]
        inv = 1 / M[rank][c]
        for i in range(rank + 1, len(M)):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


__all__ += ["vec_iadd", "InexactDivisionError"]
