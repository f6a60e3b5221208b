"""Exact arithmetic in the field Q(q,t).

A :class:`RationalQT` is a pair of coprime integer polynomials in ``q`` and
``t``.  The heavy lifting (multiplication, gcd, exact division) is delegated
to FLINT through python-flint; this module only keeps the fraction reduced
and in a canonical form so that equality is plain structural equality.
"""

from __future__ import annotations

import re
from fractions import Fraction

import flint

CTX = flint.fmpz_mpoly_ctx.get(("q", "t"), "lex")
_Q, _T = CTX.gens()
_ONE = CTX.from_dict({(0, 0): 1})
_ZERO = CTX.from_dict({})


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtEvaluationPoint(ValueError):
    pass


def _as_mpoly(x):
    if isinstance(x, flint.fmpz_mpoly):
        return x
    if isinstance(x, int):
        return CTX.from_dict({(0, 0): x}) if x else _ZERO
    if isinstance(x, dict):
        return CTX.from_dict({k: v for k, v in x.items() if v})
    raise TypeError(f"cannot make a polynomial from {type(x).__name__}")


class RationalQT:
    """Reduced fraction ``num/den`` of integer polynomials in q and t.

    Canonical form: ``gcd(num, den) = 1`` (integer content included) and the
    lex-leading coefficient of ``den`` is positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1, _reduced=False):
        if isinstance(num, RationalQT):
            if den == 1:
                self.num, self.den = num.num, num.den
                return
            other = num / RationalQT(den)
            self.num, self.den = other.num, other.den
            return
        if isinstance(num, Fraction):
            num, den = num.numerator, _as_mpoly(den) * num.denominator
        n = _as_mpoly(num)
        d = _as_mpoly(den)
        if not _reduced:
            n, d = _reduce(n, d)
        self.num = n
        self.den = d

    # -- construction helpers ------------------------------------------------

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> RationalQT:
        """c * q^a * t^b, negative exponents allowed."""
        if c == 0:
            return ZERO
        c = Fraction(c)
        num = {(max(a, 0), max(b, 0)): c.numerator}
        den = {(max(-a, 0), max(-b, 0)): c.denominator}
        return cls(CTX.from_dict(num), CTX.from_dict(den))

    @classmethod
    def from_terms(cls, terms: dict, den_terms: dict | None = None) -> RationalQT:
        """Build from {(qexp, texp): coefficient} dictionaries (rational coefficients allowed)."""
        n = _frac_dict_to_mpoly(terms)
        d = _frac_dict_to_mpoly(den_terms) if den_terms is not None else (_ONE, 1)
        return cls(n[0] * d[1], d[0] * n[1])

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RationalQT):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if self.den.is_one() and other.den.is_one():
            return RationalQT(self.num + other.num, _ONE, True)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RationalQT(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.is_one():
            return RationalQT(self.num * other.den + other.num * self.den, self.den * other.den)
        d1 = self.den / g
        d2 = other.den / g
        return RationalQT(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalQT(-self.num, self.den, True)

    def __sub__(self, other):
        if not isinstance(other, RationalQT):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalQT):
            if isinstance(other, int):
                if other == 0:
                    return ZERO
                if self.den.is_one():
                    return RationalQT(self.num * other, _ONE, True)
                return RationalQT(self.num * other, self.den)
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if self.den.is_one() and other.den.is_one():
            return RationalQT(self.num * other.num, _ONE, True)
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        # cross-cancel before multiplying
        a, b, c, d = self.num, self.den, other.num, other.den
        if not d.is_one():
            g = a.gcd(d)
            if not g.is_one():
                a, d = a / g, d / g
        if not b.is_one():
            g = c.gcd(b)
            if not g.is_one():
                c, b = c / g, b / g
        n, dd = a * c, b * d
        if dd.leading_coefficient() < 0:
            n, dd = -n, -dd
        return RationalQT(n, dd, True)

    __rmul__ = __mul__

    def inverse(self) -> RationalQT:
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero in Q(q,t)")
        n, d = self.den, self.num
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RationalQT(n, d, True)

    def __truediv__(self, other):
        if not isinstance(other, RationalQT):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalQT(self.num ** k, self.den ** k, True)

    def __eq__(self, other):
        if not isinstance(other, RationalQT):
            other = _coerce(other)
            if other is NotImplemented:
                return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num.terms()), tuple(self.den.terms())))

    # -- substitutions -------------------------------------------------------

    def bar(self) -> RationalQT:
        """Substitute q -> 1/q, t -> 1/t."""
        return _invert_vars(self, swap=False)

    def swap_qt(self) -> RationalQT:
        """Exchange q and t."""
        return RationalQT(self.num.compose(_T, _Q), self.den.compose(_T, _Q))

    def invert_swap(self) -> RationalQT:
        """Substitute (q, t) -> (1/t, 1/q)."""
        return _invert_vars(self, swap=True)

    def subs(self, q=None, t=None) -> RationalQT:
        """Substitute rational functions for q and/or t."""
        qq = Q if q is None else _coerce(q)
        tt = T if t is None else _coerce(t)
        return _eval_mpoly(self.num, qq, tt) / _eval_mpoly(self.den, qq, tt)

    def evaluate(self, q0, t0) -> Fraction:
        """Exact value at a rational point."""
        q0, t0 = Fraction(q0), Fraction(t0)
        d = _eval_at(self.den, q0, t0)
        if d == 0:
            raise PoleAtEvaluationPoint(f"denominator {self.den} vanishes at q={q0}, t={t0}")
        return _eval_at(self.num, q0, t0) / d

    # -- inspection ----------------------------------------------------------

    def terms(self) -> dict:
        """{(qexp, texp): int} of the numerator; only meaningful for polynomials."""
        if not self.den.is_one():
            raise ValueError(f"{self} is not a polynomial")
        return {tuple(int(e) for e in k): int(c) for k, c in self.num.terms()}

    def has_nonnegative_coefficients(self) -> bool:
        return self.den.is_one() and all(int(c) >= 0 for _, c in self.num.terms())

    def to_json(self) -> dict:
        return {"num": _mpoly_json(self.num), "den": _mpoly_json(self.den)}

    @classmethod
    def from_json(cls, obj) -> RationalQT:
        if isinstance(obj, (int, str)):
            return parse_qt(str(obj))
        n = {(a, b): Fraction(c) for a, b, c in obj["num"]}
        d = {(a, b): Fraction(c) for a, b, c in obj["den"]}
        return cls.from_terms(n, d)

    def __str__(self):
        n = format_poly(self.num)
        if self.den.is_one():
            return n
        d = format_poly(self.den)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1 or int(self.den.leading_coefficient()) != 1 and self.den.total_degree() > 0:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RationalQT({str(self)!r})"

    def latex(self) -> str:
        if not self.den.is_one():
            return r"\frac{%s}{%s}" % (format_poly(self.num, latex=True), format_poly(self.den, latex=True))
        return format_poly(self.num, latex=True)


def _reduce(n, d):
    if d.is_zero():
        raise DivisionByZero("zero denominator")
    if n.is_zero():
        return _ZERO, _ONE
    if not d.is_one():
        g = n.gcd(d)
        if not g.is_one():
            n = n / g
            d = d / g
        if d.leading_coefficient() < 0:
            n, d = -n, -d
    return n, d


def _coerce(x):
    if isinstance(x, RationalQT):
        return x
    if isinstance(x, int):
        return RationalQT(_as_mpoly(x), _ONE, True)
    if isinstance(x, Fraction):
        return RationalQT(x.numerator, x.denominator)
    if isinstance(x, flint.fmpz_mpoly):
        return RationalQT(x, _ONE, True)
    return NotImplemented


def _frac_dict_to_mpoly(terms):
    """Clear denominators of a {(a,b): Fraction} dict; returns (mpoly, common_den)."""
    from math import lcm

    terms = {k: Fraction(v) for k, v in terms.items() if v}
    L = 1
    for v in terms.values():
        L = lcm(L, v.denominator)
    return CTX.from_dict({k: int(v * L) for k, v in terms.items()}), L


def _invert_vars(r: RationalQT, swap: bool) -> RationalQT:
    # p(1/q,1/t) = q^-degq t^-degt * p~(q,t) with p~ the reversed polynomial
    def rev(p):
        dq, dt = (int(x) for x in p.degrees())
        if swap:
            return CTX.from_dict({(dt - int(b), dq - int(a)): c for (a, b), c in p.terms()}), (dt, dq)
        return CTX.from_dict({(dq - int(a), dt - int(b)): c for (a, b), c in p.terms()}), (dq, dt)

    n, (nq, nt) = rev(r.num)
    d, (dq, dt) = rev(r.den)
    # result = n * q^-nq t^-nt / (d * q^-dq t^-dt)
    eq, et = dq - nq, dt - nt
    n = n * CTX.from_dict({(max(eq, 0), max(et, 0)): 1})
    d = d * CTX.from_dict({(max(-eq, 0), max(-et, 0)): 1})
    return RationalQT(n, d)


def _eval_at(p, q0: Fraction, t0: Fraction) -> Fraction:
    s = Fraction(0)
    for (a, b), c in p.terms():
        s += int(c) * q0 ** int(a) * t0 ** int(b)
    return s


def _eval_mpoly(p, qq: RationalQT, tt: RationalQT) -> RationalQT:
    s = ZERO
    for (a, b), c in p.terms():
        s = s + (qq ** int(a)) * (tt ** int(b)) * int(c)
    return s


def _mpoly_json(p):
    return [[int(a), int(b), str(int(c))] for (a, b), c in sorted(p.terms(), key=lambda kv: tuple(int(e) for e in kv[0]))]


def format_poly(p, latex: bool = False, ascending: bool | None = None) -> str:
    """Render an integer polynomial in q,t.

    Plain text uses ``q^2*t+q`` (terms by descending exponents); LaTeX uses the
    ascending ``1+qt+q^2t`` order used in typeset tables.
    """
    if isinstance(p, RationalQT):
        if not p.is_polynomial():
            return p.latex() if latex else str(p)
        p = p.num
    if ascending is None:
        ascending = latex
    items = [((int(a), int(b)), int(c)) for (a, b), c in p.terms()]
    if not items:
        return "0"
    items.sort(reverse=not ascending)
    out = []
    for (a, b), c in items:
        factors = []
        for v, e in (("q", a), ("t", b)):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{{{e}}}" if latex and e > 9 else f"{v}^{e}")
        mono = ("" if latex else "*").join(factors)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'' if latex else '*'}{mono}"
        sign = "-" if c < 0 else "+"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += sign + body
    return s


_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_FACTOR_RE = re.compile(r"(\d+|q|t)(?:\^\{?(-?\d+)\}?)?")


def parse_qt(text: str) -> RationalQT:
    """Parse a polynomial in q,t such as ``q^2*t+q``, ``1+qt`` or ``q^{10}t^2``.

    A single top-level ``/`` separating two parenthesized or bare polynomials is
    also accepted.
    """
    s = text.replace(" ", "").replace("$", "")
    if not s:
        raise ValueError("empty polynomial")
    depth = 0
    for i, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "/" and depth == 0:
            return parse_qt(s[:i]) / parse_qt(s[i + 1:])
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    terms = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).replace("*", "")
        coef, a, b = 1, 0, 0
        p = 0
        while p < len(body):
            f = _FACTOR_RE.match(body, p)
            if not f:
                raise ValueError(f"cannot parse term {body!r} in {text!r}")
            e = int(f.group(2)) if f.group(2) is not None else 1
            if f.group(1) == "q":
                a += e
            elif f.group(1) == "t":
                b += e
            else:
                coef *= int(f.group(1)) ** e
            p = f.end()
        terms[(a, b)] = terms.get((a, b), 0) + sign * coef
        pos = m.end()
    return RationalQT.from_terms(terms)


ZERO = RationalQT(_ZERO, _ONE, True)
ONE = RationalQT(_ONE, _ONE, True)
Q = RationalQT(_Q, _ONE, True)
T = RationalQT(_T, _ONE, True)


def qt(x) -> RationalQT:
    """Coerce ints, Fractions and polynomial strings into :class:`RationalQT`."""
    if isinstance(x, str):
        return parse_qt(x)
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot coerce {x!r} into Q(q,t)")
    return r


def normalize(raw_num, raw_den) -> RationalQT:
    return qt(raw_num) / qt(raw_den) if not _is_zero_like(raw_den) else _raise_div()


def _is_zero_like(x):
    return qt(x).is_zero()


def _raise_div():
    raise DivisionByZero("zero denominator")


def q_int(k: int, var: RationalQT = T) -> RationalQT:
    """The k-integer [k] = (1 - v^k)/(1 - v) as a polynomial."""
    s = ZERO
    for i in range(k):
        s = s + var ** i
    return s


def q_factorial(k: int, var: RationalQT = T) -> RationalQT:
    r = ONE
    for i in range(1, k + 1):
        r = r * q_int(i, var)
    return r
