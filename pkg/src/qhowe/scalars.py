"""Exact scalars: Laurent polynomials in ``q, z_1, ..., z_M`` and fractions whose
denominators are products of factors ``1 - q^a z^m``.

Variable 0 is always ``q``; variables ``1..M`` are spectral parameters.
Exponent vectors are tuples with trailing zeros stripped, so polynomials of
different arity mix freely.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import zip_longest
from typing import Iterable, Mapping, Sequence

__all__ = [
    "LaurentPoly",
    "TrackedFraction",
    "EvalPoint",
    "PoleError",
    "InexactDivisionError",
    "q_int",
    "q_factorial",
    "q_binomial",
    "q_int_inverse",
    "one_minus",
    "ZERO",
    "ONE",
    "Q",
    "frac_to_json",
    "frac_from_json",
    "poly_to_json",
    "poly_from_json",
]


class PoleError(ZeroDivisionError):
    """Raised when a denominator factor vanishes at an evaluation point."""

    def __init__(self, factor, point=None):
        self.factor = factor
        self.point = point
        super().__init__(f"pole at point: factor {factor_str(factor)} vanishes")


class InexactDivisionError(ArithmeticError):
    pass


def _strip(e):
    n = len(e)
    while n and e[n - 1] == 0:
        n -= 1
    return e if n == len(e) else e[:n]


def _eadd(a, b):
    if not b:
        return a
    if not a:
        return b
    if len(a) == len(b):
        return _strip(tuple(x + y for x, y in zip(a, b)))
    return _strip(tuple(x + y for x, y in zip_longest(a, b, fillvalue=0)))


def _esub(a, b):
    return _strip(tuple(x - y for x, y in zip_longest(a, b, fillvalue=0)))


def _eneg(a):
    return tuple(-x for x in a)


def _escale(a, t):
    return _strip(tuple(t * x for x in a))


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _coerce_coeff(c):
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class LaurentPoly:
    """Sparse multivariate Laurent polynomial with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        if terms is None:
            self.terms = {}
        else:
            t = {}
            for e, c in terms.items():
                c = _coerce_coeff(c)
                if c:
                    e = _strip(tuple(e))
                    t[e] = _norm(t.get(e, 0) + c)
                    if not t[e]:
                        del t[e]
            self.terms = t

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = _coerce_coeff(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "LaurentPoly":
        coeff = _coerce_coeff(coeff)
        return cls._raw({_strip(tuple(exp)): coeff} if coeff else {})

    @classmethod
    def var(cls, index: int, power: int = 1) -> "LaurentPoly":
        e = [0] * (index + 1)
        e[index] = power
        return cls.monomial(e)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get((), 0)

    def nvars(self) -> int:
        return max((len(e) for e in self.terms), default=0)

    def max_degree(self, index: int) -> int:
        return max(_get(e, index) for e in self.terms)

    def min_degree(self, index: int) -> int:
        return min(_get(e, index) for e in self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): _norm(Fraction(other))} if other else {})
        return NotImplemented

    # -- ring operations --------------------------------------------------

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        t = dict(a)
        for e, c in b.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = _norm(v + c)
                if v:
                    t[e] = v
                else:
                    del t[e]
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _coerce_coeff(other)
            if not c:
                return LaurentPoly()
            return LaurentPoly._raw({e: _norm(v * c) for e, v in self.terms.items()})
        if not self.terms or not other.terms:
            return LaurentPoly()
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            if eb == ():
                if cb == 1:
                    return LaurentPoly._raw(dict(a))
                return LaurentPoly._raw({e: _norm(c * cb) for e, c in a.items()})
            return LaurentPoly._raw({_eadd(e, eb): _norm(c * cb) for e, c in a.items()})
        t = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = _eadd(ea, eb)
                v = t.get(e)
                t[e] = ca * cb if v is None else v + ca * cb
        return LaurentPoly._raw({e: _norm(c) for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise InexactDivisionError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return LaurentPoly.monomial(_escale(e, n), Fraction(c) ** n)
        r = LaurentPoly.const(1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def mul_monomial(self, exp, coeff=1):
        exp = _strip(tuple(exp))
        return LaurentPoly._raw({_eadd(e, exp): _norm(c * coeff) for e, c in self.terms.items()})

    # -- division ---------------------------------------------------------

    def div_one_minus(self, v):
        """Quotient by ``1 - x^v`` if exact, else ``None``."""
        if not self.terms:
            return LaurentPoly()
        j = next(i for i, x in enumerate(v) if x)
        vj = v[j]
        lines: dict = {}
        for e, c in self.terms.items():
            t, _ = divmod(_get(e, j), vj)
            base = _esub(e, _escale(v, t))
            lines.setdefault(base, {})[t] = c
        out = {}
        for base, coeffs in lines.items():
            ts = sorted(coeffs)
            lo, hi = ts[0], ts[-1]
            acc = 0
            for t in range(lo, hi):
                acc += coeffs.get(t, 0)
                if acc:
                    out[_eadd(base, _escale(v, t))] = _norm(acc)
            acc += coeffs[hi]
            if acc:
                return None
        return LaurentPoly._raw(out)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other``; raises InexactDivisionError otherwise."""
        q, r = self.divmod_lex(other)
        if r:
            raise InexactDivisionError("division is not exact")
        return q

    def divmod_lex(self, other: "LaurentPoly"):
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if len(other.terms) == 1:
            (e, c), = other.terms.items()
            ne, ic = _eneg(e), Fraction(1) / c
            return self.mul_monomial(ne, ic), LaurentPoly()
        n = max(self.nvars(), other.nvars())

        def pad(e):
            return e + (0,) * (n - len(e))

        d = {pad(e): c for e, c in other.terms.items()}
        dlead = max(d)
        dlow = min(d)
        dcoef = d[dlead]
        rem = {pad(e): c for e, c in self.terms.items()}
        quot = {}
        if not rem:
            return LaurentPoly(), LaurentPoly()
        bound = tuple(a - b for a, b in zip(min(rem), dlow))
        # an exact quotient has per-variable degrees inside these boxes
        lo = [min(e[i] for e in rem) - min(e[i] for e in d) for i in range(n)]
        hi = [max(e[i] for e in rem) - max(e[i] for e in d) for i in range(n)]
        while rem:
            lead = max(rem)
            m = tuple(a - b for a, b in zip(lead, dlead))
            if m < bound or any(not lo[i] <= m[i] <= hi[i] for i in range(n)):
                break
            c = Fraction(rem[lead]) / dcoef
            quot[m] = quot.get(m, 0) + c
            for e, dc in d.items():
                k = tuple(a + b for a, b in zip(e, m))
                v = rem.get(k, 0) - c * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot), LaurentPoly(rem)

    # -- substitution -----------------------------------------------------

    def invert_var(self, index: int) -> "LaurentPoly":
        return LaurentPoly._raw({_flip(e, index): c for e, c in self.terms.items()})

    def permute_vars(self, perm: Mapping[int, int]) -> "LaurentPoly":
        return LaurentPoly._raw({_perm(e, perm): c for e, c in self.terms.items()})

    def map_exponents(self, fn) -> "LaurentPoly":
        """Substitute monomials: each exponent tuple ``e`` becomes ``fn(e)``."""
        out: dict = {}
        for e, c in self.terms.items():
            ne = _strip(tuple(fn(e)))
            out[ne] = out.get(ne, 0) + c
        return LaurentPoly(out)

    def set_zero(self, index: int) -> "LaurentPoly":
        out = {}
        for e, c in self.terms.items():
            d = _get(e, index)
            if d < 0:
                raise PoleError(("var", index))
            if d == 0:
                out[e] = c
        return LaurentPoly._raw(out)

    def evaluate(self, values: Sequence) -> Fraction:
        cache: list[dict] = [dict() for _ in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for i, k in enumerate(e):
                if k:
                    pc = cache[i]
                    p = pc.get(k)
                    if p is None:
                        p = pc[k] = Fraction(values[i]) ** k
                    term *= p
            total += term
        return total

    def evaluate_float(self, values: Sequence, ctx=None):
        """Evaluate at floating values; ``ctx`` is an mpmath context or None."""
        total = 0
        for e, c in self.terms.items():
            if isinstance(c, Fraction):
                term = ctx.mpf(c.numerator) / c.denominator if ctx else c.numerator / c.denominator
            else:
                term = ctx.mpf(c) if ctx else c
            for i, k in enumerate(e):
                if k:
                    term = term * values[i] ** k
            total = total + term
        return total

    # -- display ----------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_display_key, reverse=True):
            c = self.terms[e]
            mono = _mono_str(e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _display_key(e):
    return (tuple(reversed(e)),)


_VARNAMES = ["q"] + [f"z{i}" for i in range(1, 64)]


def _mono_str(e):
    out = []
    for i, k in enumerate(e):
        if k == 1:
            out.append(_VARNAMES[i])
        elif k:
            out.append(f"{_VARNAMES[i]}^{k}")
    return "*".join(out)


def _get(e, i):
    return e[i] if i < len(e) else 0


def _flip(e, i):
    if i >= len(e) or not e[i]:
        return e
    lst = list(e)
    lst[i] = -lst[i]
    return tuple(lst)


def _perm(e, perm):
    n = max([len(e)] + [j + 1 for j in perm.values()])
    out = [0] * n
    for i, k in enumerate(e):
        out[perm.get(i, i)] += k
    return _strip(tuple(out))


# ---------------------------------------------------------------------------
# denominator factors


def _canon_factor(v):
    """Return (sign_flip, canonical exponent) for the factor ``1 - x^v``.

    Canonical: first nonzero spectral exponent positive, or the q-exponent
    positive for q-only factors. ``1 - x^{-v} = -x^{-v} (1 - x^v)``.
    """
    v = _strip(tuple(v))
    if not v:
        raise ZeroDivisionError("factor 1 - 1 is identically zero")
    lead = next((x for x in v[1:] if x), None)
    if lead is None:
        lead = v[0]
    if lead > 0:
        return False, v
    return True, _eneg(v)


def factor_str(v) -> str:
    if isinstance(v, tuple) and v and v[0] == "var":
        return _VARNAMES[v[1]]
    return f"(1 - {_mono_str(v) or '1'})"


def one_minus(v) -> "TrackedFraction":
    """The polynomial ``1 - x^v`` as a fraction."""
    return TrackedFraction(LaurentPoly({(): 1, _strip(tuple(v)): -1}))


class TrackedFraction:
    """Laurent polynomial over a multiset of ``1 - x^v`` factors.

    Equality is semantic. Cancellation only strips tracked factors that
    divide the numerator exactly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=None, den: Mapping | Iterable | None = None):
        if num is None:
            num = LaurentPoly()
        elif not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num)
        if not den:
            self.num = num
            self.den = ()
            return
        items = den.items() if isinstance(den, Mapping) else ((v, 1) for v in den)
        cnt: Counter = Counter()
        for v, k in items:
            if k < 0:
                raise ValueError("negative multiplicity")
            flip, cv = _canon_factor(v)
            if flip:
                # 1/(1 - x^-v) = -x^v / (1 - x^v)
                num = num.mul_monomial(_escale(cv, k), (-1) ** k)
            cnt[cv] += k
        self.num = num
        self.den = _freeze(cnt)
        self._cancel()

    @classmethod
    def _raw(cls, num, den=()):
        f = cls.__new__(cls)
        f.num = num
        f.den = den
        return f

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "TrackedFraction":
        return cls._raw(p, ())

    @classmethod
    def const(cls, c) -> "TrackedFraction":
        return cls._raw(LaurentPoly.const(c))

    @classmethod
    def monomial(cls, exp, coeff=1) -> "TrackedFraction":
        return cls._raw(LaurentPoly.monomial(exp, coeff))

    @classmethod
    def var(cls, index: int, power: int = 1) -> "TrackedFraction":
        return cls._raw(LaurentPoly.var(index, power))

    def _cancel(self):
        if not self.den:
            return
        if not self.num.terms:
            self.den = ()
            return
        num = self.num
        cnt = Counter(dict(self.den))
        for v in list(cnt):
            while cnt[v]:
                qt = num.div_one_minus(v)
                if qt is None:
                    break
                num = qt
                cnt[v] -= 1
        # replace 1 - x^{g u} by 1 - x^{d u} when the cyclotomic cofactor divides
        for v in list(cnt):
            if not cnt[v]:
                continue
            g = _gcd_vec(v)
            if g == 1:
                continue
            for d in _proper_divisors(g):
                sub = tuple(x // g * d for x in v)
                if not cnt[v]:
                    break
                while cnt[v]:
                    qt = (num * LaurentPoly({(): 1, _strip(sub): -1})).div_one_minus(v)
                    if qt is None:
                        break
                    num = qt
                    cnt[v] -= 1
                    cnt[_strip(sub)] += 1
        self.num = num
        self.den = _freeze(cnt)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_polynomial(self) -> bool:
        return not self.den

    def denominator_factors(self) -> list:
        out = []
        for v, k in self.den:
            out.extend([v] * k)
        return out

    def denominator_poly(self) -> LaurentPoly:
        d = LaurentPoly.const(1)
        for v, k in self.den:
            d = d * LaurentPoly({(): 1, v: -1}) ** k
        return d

    def __bool__(self):
        return bool(self.num.terms)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return TrackedFraction._raw(-self.num, self.den)

    def __add__(self, other):
        if not isinstance(other, TrackedFraction):
            if isinstance(other, LaurentPoly):
                other = TrackedFraction._raw(other)
            else:
                other = TrackedFraction.const(other)
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            f = TrackedFraction._raw(self.num + other.num, self.den)
            if f.den:
                f._cancel()
            return f
        a, b = Counter(dict(self.den)), Counter(dict(other.den))
        lcm = a | b
        na = self.num * _factor_product(lcm - a)
        nb = other.num * _factor_product(lcm - b)
        f = TrackedFraction._raw(na + nb, _freeze(lcm))
        f._cancel()
        return f

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, TrackedFraction):
            other = TrackedFraction(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TrackedFraction):
            if isinstance(other, LaurentPoly):
                num = self.num * other
                f = TrackedFraction._raw(num, self.den)
            else:
                c = _coerce_coeff(other)
                return TrackedFraction._raw(self.num * c, self.den if c else ())
        else:
            if not self.den and not other.den:
                return TrackedFraction._raw(self.num * other.num)
            cnt = Counter(dict(self.den))
            cnt.update(dict(other.den))
            f = TrackedFraction._raw(self.num * other.num, _freeze(cnt))
        f._cancel()
        return f

    __rmul__ = __mul__

    def mul_monomial(self, exp, coeff=1) -> "TrackedFraction":
        return TrackedFraction._raw(self.num.mul_monomial(exp, coeff), self.den)

    def __truediv__(self, other):
        if not isinstance(other, TrackedFraction):
            if isinstance(other, LaurentPoly):
                other = TrackedFraction._raw(other)
            else:
                c = _coerce_coeff(other)
                if not c:
                    raise ZeroDivisionError("division by zero")
                return TrackedFraction._raw(self.num * (Fraction(1) / c), self.den)
        if not other.num.terms:
            raise ZeroDivisionError("division by zero fraction")
        # self / other = self.num * other.den / (self.den * other.num)
        top = self.num * other.denominator_poly()
        bn = other.num
        if bn.is_monomial():
            (e, c), = bn.terms.items()
            return TrackedFraction(top.mul_monomial(_eneg(e), Fraction(1) / c), dict(self.den))
        if len(bn.terms) == 2:
            (e1, c1), (e2, c2) = sorted(bn.terms.items())
            if c1 == -c2:
                # c1 x^e1 (1 - x^{e2-e1})
                v = _esub(e2, e1)
                cnt = Counter(dict(self.den))
                cnt[v] += 1
                return TrackedFraction(top.mul_monomial(_eneg(e1), Fraction(1) / c1), cnt)
        peeled = _peel_binomials(bn, [400])
        if peeled is not None:
            (e, c), found = peeled
            cnt = Counter(dict(self.den))
            cnt.update(found)
            return TrackedFraction(top.mul_monomial(_eneg(e), Fraction(1) / c), cnt)
        qt, r = top.divmod_lex(bn)
        if not r:
            return TrackedFraction(qt, dict(self.den))
        raise InexactDivisionError(
            f"denominator {bn} is not a product of tracked factors"
        )

    def __pow__(self, n: int):
        if n < 0:
            return TrackedFraction.const(1) / (self ** (-n))
        r = TrackedFraction.const(1)
        for _ in range(n):
            r = r * self
        return r

    def div_qint(self, n: int) -> "TrackedFraction":
        return self * q_int_inverse(n)

    # -- equality ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TrackedFraction):
            if isinstance(other, LaurentPoly):
                other = TrackedFraction._raw(other)
            elif isinstance(other, (int, Fraction)):
                other = TrackedFraction.const(other)
            else:
                return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        a, b = Counter(dict(self.den)), Counter(dict(other.den))
        common = a & b
        return self.num * _factor_product(b - common) == other.num * _factor_product(a - common)

    __hash__ = None  # semantic equality has no cheap canonical hash

    # -- substitution -----------------------------------------------------

    def invert_var(self, index: int) -> "TrackedFraction":
        return TrackedFraction(
            self.num.invert_var(index),
            {_flip(v, index): k for v, k in self.den},
        )

    def permute_vars(self, perm: Mapping[int, int]) -> "TrackedFraction":
        return TrackedFraction(
            self.num.permute_vars(perm),
            {_perm(v, perm): k for v, k in self.den},
        )

    def map_exponents(self, fn) -> "TrackedFraction":
        return TrackedFraction(self.num.map_exponents(fn),
                               {_strip(tuple(fn(v))): k for v, k in self.den})

    def set_zero(self, index: int) -> "TrackedFraction":
        num = self.num.set_zero(index)
        den = {}
        for v, k in self.den:
            d = _get(v, index)
            if d > 0:
                continue
            if d < 0:
                raise PoleError(v)
            den[v] = k
        return TrackedFraction(num, den)

    def evaluate(self, point: "EvalPoint") -> Fraction:
        vals = point.values
        d = Fraction(1)
        for v, k in self.den:
            fv = 1 - LaurentPoly._raw({v: 1}).evaluate(vals)
            if fv == 0:
                raise PoleError(v, point)
            d *= fv ** k
        return self.num.evaluate(vals) / d

    def evaluate_float(self, values, ctx=None):
        d = 1
        for v, k in self.den:
            d = d * (1 - LaurentPoly._raw({v: 1}).evaluate_float(values, ctx)) ** k
        return self.num.evaluate_float(values, ctx) / d

    def cleared(self, factors: Iterable) -> LaurentPoly:
        """Numerator after multiplying by the given factor multiset."""
        cnt = Counter()
        num = self.num
        for v in factors:
            flip, cv = _canon_factor(v)
            if flip:
                num = num.mul_monomial(cv, -1)
            cnt[cv] += 1
        own = Counter(dict(self.den))
        if own - cnt:
            raise ValueError("clearing set does not contain the denominator")
        return num * _factor_product(cnt - own)

    # -- display ----------------------------------------------------------

    def __repr__(self):
        return f"TrackedFraction({self})"

    def __str__(self):
        if not self.den:
            return str(self.num)
        den = "*".join(
            factor_str(v) + (f"^{k}" if k > 1 else "") for v, k in self.den
        )
        return f"({self.num}) / ({den})"


def _peel_binomials(p: LaurentPoly, budget: list, depth: int = 24):
    """Write ``p`` as ``c x^e prod (1 - x^v)``; returns ``((e, c), Counter of v)`` or None.

    Depth-first over candidate exponents read off the support; a greedy choice
    can strand a cofactor such as ``1 + q``, so failed branches backtrack.
    """
    if p.is_monomial():
        (e, c), = p.terms.items()
        return (e, c), Counter()
    if depth == 0 or budget[0] <= 0:
        return None
    budget[0] -= 1
    n = p.nvars()
    low = min(_pad(e, n) for e in p.terms)
    cands = set()
    for e in p.terms:
        d = tuple(a - b for a, b in zip(_pad(e, n), low))
        g = _gcd_vec(d)
        if g:
            cands.update(_strip(tuple(x // t for x in d)) for t in [1, *_proper_divisors(g), g])
    for v in sorted(cands, key=lambda v: -sum(abs(x) for x in v)):
        if not any(v):
            continue
        qt, r = p.divmod_lex(LaurentPoly.const(1) - LaurentPoly.monomial(v))
        if r:
            continue
        sub = _peel_binomials(qt, budget, depth - 1)
        if sub is not None:
            sub[1][v] += 1
            return sub
    return None


def _pad(e, n):
    return tuple(e) + (0,) * (n - len(e))


def _freeze(cnt: Counter):
    return tuple(sorted((v, k) for v, k in cnt.items() if k))


def _factor_product(cnt: Counter) -> LaurentPoly:
    p = LaurentPoly.const(1)
    for v, k in cnt.items():
        for _ in range(k):
            p = p * LaurentPoly._raw({(): 1, v: -1})
    return p


def _gcd_vec(v):
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def _proper_divisors(g):
    return [d for d in range(1, g) if g % d == 0]


ZERO = TrackedFraction.const(0)
ONE = TrackedFraction.const(1)
Q = LaurentPoly.var(0)


# ---------------------------------------------------------------------------
# q-combinatorics


def q_int(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    return LaurentPoly({(n - 1 - 2 * i,): 1 for i in range(n)})


def q_factorial(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    r = LaurentPoly.const(1)
    for j in range(1, n + 1):
        r = r * q_int(j)
    return r


def q_binomial(n: int, j: int) -> LaurentPoly:
    if not 0 <= j <= n:
        raise ValueError("q_binomial needs 0 <= j <= n")
    return q_factorial(n).exact_div(q_factorial(j) * q_factorial(n - j))


_QINV_CACHE: dict = {}


def q_int_inverse(n: int) -> TrackedFraction:
    """``1/[n]_q = q^{n-1} (1 - q^2) / (1 - q^{2n})``."""
    f = _QINV_CACHE.get(n)
    if f is None:
        if n < 1:
            raise ZeroDivisionError("[0]_q = 0")
        if n == 1:
            f = ONE
        else:
            num = LaurentPoly({(n - 1,): 1, (n + 1,): -1})
            f = TrackedFraction._raw(num, (((2 * n,), 1),))
        _QINV_CACHE[n] = f
    return f


# ---------------------------------------------------------------------------
# evaluation points


class EvalPoint:
    """Exact assignment of ``q`` and the spectral variables."""

    __slots__ = ("q_value", "z_values")

    def __init__(self, q_value, z_values: Sequence = ()):
        q_value = Fraction(q_value)
        if q_value == 0 or abs(q_value) == 1:
            raise ValueError("q must be nonzero with |q| != 1")
        z_values = [Fraction(z) for z in z_values]
        if any(z == 0 for z in z_values):
            raise ValueError("spectral values must be nonzero")
        self.q_value = q_value
        self.z_values = z_values

    @property
    def values(self):
        return [self.q_value, *self.z_values]

    def with_z(self, z_values) -> "EvalPoint":
        return EvalPoint(self.q_value, z_values)

    def to_json(self):
        return {"q": str(self.q_value), "z": [str(z) for z in self.z_values]}

    def __repr__(self):
        return f"EvalPoint(q={self.q_value}, z={[str(z) for z in self.z_values]})"


def evaluate(f, point: EvalPoint) -> Fraction:
    if isinstance(f, LaurentPoly):
        return f.evaluate(point.values)
    return f.evaluate(point)


# ---------------------------------------------------------------------------
# JSON


def _coeff_json(e, c, nvars):
    c = Fraction(c)
    return {
        "exp": list(e) + [0] * (nvars - len(e)),
        "num": str(c.numerator),
        "den": str(c.denominator),
    }


def poly_to_json(p: LaurentPoly, nvars: int | None = None) -> dict:
    if nvars is None:
        nvars = max(p.nvars(), 1)
    return {"terms": [_coeff_json(e, p.terms[e], nvars) for e in sorted(p.terms, key=lambda e: e + (0,) * (nvars - len(e)))]}


def poly_from_json(obj: Mapping) -> LaurentPoly:
    t = {}
    for term in obj["terms"]:
        t[tuple(term["exp"])] = Fraction(int(term["num"]), int(term["den"]))
    return LaurentPoly(t)


def frac_to_json(f: TrackedFraction, nvars: int | None = None) -> dict:
    if nvars is None:
        nvars = max([f.num.nvars(), 1] + [len(v) for v, _ in f.den])
    out = poly_to_json(f.num, nvars)
    denoms = []
    for v, k in f.den:
        pad = list(v) + [0] * (nvars - len(v))
        for _ in range(k):
            denoms.append({"a": pad[0], "m": pad[1:]})
    out["denoms"] = denoms
    return out


def frac_from_json(obj: Mapping) -> TrackedFraction:
    num = poly_from_json(obj)
    den: Counter = Counter()
    for d in obj.get("denoms", []):
        if "monomial" in d:
            num = num.mul_monomial(_eneg(_strip(tuple(d["monomial"]))))
        else:
            den[_strip((d["a"], *d["m"]))] += 1
    return TrackedFraction(num, den)
