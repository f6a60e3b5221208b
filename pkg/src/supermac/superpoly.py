"""Polynomials in superspace and the classical bases m and p.

A :class:`SuperPolynomial` in N variables is a sparse dict keyed by
``(mask, exps)`` where ``mask`` is a bitmask of anticommuting variables
(bit ``i-1`` for theta_i, always stored in increasing index order) and
``exps`` the exponent tuple of the commuting variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache

from .combinat import (
    SuperPartition,
    enumerate_superpartitions,
    sign_m,
    z_classical,
    z_qt,
)
from .qt import ONE, ZERO, RationalQT, qt


class NotSymmetric(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def theta_sign(I: int, J: int) -> int:
    """Sign of theta_I * theta_J = sign * theta_{I|J} (0 if they overlap)."""
    if I & J:
        return 0
    s = 0
    j = J
    while j:
        low = j & -j
        s += _popcount(I & ~((low << 1) - 1))
        j ^= low
    return -1 if s & 1 else 1


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def mask_indices(mask: int) -> list[int]:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _acc(d: dict, key, c):
    if key in d:
        s = d[key] + c
        if s.is_zero():
            del d[key]
        else:
            d[key] = s
    elif not c.is_zero():
        d[key] = c


class SuperPolynomial:
    """Sparse element of Q(q,t)[x_1..x_N] tensor the exterior algebra on theta_1..theta_N."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {} if terms is None else terms

    # -- constructors --------------------------------------------------------

    @classmethod
    def constant(cls, n: int, c=1) -> SuperPolynomial:
        c = qt(c)
        return cls(n, {} if c.is_zero() else {(0, (0,) * n): c})

    @classmethod
    def x(cls, n: int, i: int, power: int = 1) -> SuperPolynomial:
        e = [0] * n
        e[i - 1] = power
        return cls(n, {(0, tuple(e)): ONE})

    @classmethod
    def theta(cls, n: int, i: int) -> SuperPolynomial:
        return cls(n, {(1 << (i - 1), (0,) * n): ONE})

    @classmethod
    def from_x_dict(cls, n: int, d: dict, mask: int = 0) -> SuperPolynomial:
        return cls(n, {(mask, e): c for e, c in d.items() if not c.is_zero()})

    def copy(self) -> SuperPolynomial:
        return SuperPolynomial(self.n, dict(self.terms))

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, RationalQT)):
            other = SuperPolynomial.constant(self.n, other)
        return self.n == other.n and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def fermionic_degrees(self) -> set[int]:
        return {_popcount(mask) for mask, _ in self.terms}

    def theta_block(self, mask: int) -> dict:
        """{exps: coeff} of the theta_mask component."""
        return {e: c for (k, e), c in self.terms.items() if k == mask}

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, SuperPolynomial):
            other = SuperPolynomial.constant(self.n, other)
        self._check(other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            _acc(d, k, c)
        return SuperPolynomial(self.n, d)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SuperPolynomial):
            other = SuperPolynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> SuperPolynomial:
        c = qt(c)
        if c.is_zero():
            return SuperPolynomial(self.n)
        if c.is_one():
            return self.copy()
        return SuperPolynomial(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SuperPolynomial):
            return self.scale(other)
        self._check(other)
        d: dict = {}
        for (m1, e1), c1 in self.terms.items():
            for (m2, e2), c2 in other.terms.items():
                s = theta_sign(m1, m2)
                if not s:
                    continue
                key = (m1 | m2, tuple(a + b for a, b in zip(e1, e2)))
                c = c1 * c2
                _acc(d, key, c if s > 0 else -c)
        return SuperPolynomial(self.n, d)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        r = SuperPolynomial.constant(self.n, 1)
        for _ in range(k):
            r = r * self
        return r

    def map_coefficients(self, fn) -> SuperPolynomial:
        d = {}
        for k, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                d[k] = v
        return SuperPolynomial(self.n, d)

    # -- variable manipulations ---------------------------------------------

    def act(self, sigma, mode: str = "both") -> SuperPolynomial:
        """Relabel variable i as sigma(i) (sigma given 1-based, one-line notation).

        ``mode`` selects which variables move: ``"x"``, ``"theta"`` or ``"both"``.
        """
        sigma = tuple(sigma)
        if sorted(sigma) != list(range(1, self.n + 1)):
            raise ValueError(f"{sigma} is not a permutation of 1..{self.n}")
        d: dict = {}
        for (mask, e), c in self.terms.items():
            if mode in ("x", "both"):
                ne = [0] * self.n
                for i, a in enumerate(e):
                    ne[sigma[i] - 1] = a
                ne = tuple(ne)
            else:
                ne = e
            sign = 1
            nm = mask
            if mode in ("theta", "both") and mask:
                images = [sigma[i - 1] for i in mask_indices(mask)]
                sign = _perm_sign(images)
                nm = mask_of(images)
            _acc(d, (nm, ne), c if sign > 0 else -c)
        return SuperPolynomial(self.n, d)

    def restrict_last(self) -> SuperPolynomial:
        """Set x_N = theta_N = 0 and drop the last variable."""
        top = 1 << (self.n - 1)
        d = {}
        for (mask, e), c in self.terms.items():
            if mask & top or e[-1]:
                continue
            d[(mask, e[:-1])] = c
        return SuperPolynomial(self.n - 1, d)

    def embed(self, n: int, offset: int = 0) -> SuperPolynomial:
        """View as a polynomial in n variables, shifting indices by offset."""
        d = {}
        for (mask, e), c in self.terms.items():
            ne = (0,) * offset + e + (0,) * (n - offset - self.n)
            d[(mask << offset, ne)] = c
        return SuperPolynomial(n, d)

    def __repr__(self):
        return f"SuperPolynomial({self.n}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (mask, e), c in sorted(self.terms.items(), key=lambda kv: kv[0]):
            th = "".join(f"θ{i}" for i in mask_indices(mask))
            xs = "".join(f"x{i + 1}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a)
            mono = th + xs
            cs = str(c)
            if mono:
                parts.append(mono if c.is_one() else f"({cs})*{mono}")
            else:
                parts.append(cs)
        return " + ".join(parts)


def _perm_sign(seq) -> int:
    inv = sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inv & 1 else 1


# ---------------------------------------------------------------------------
# bases


def _multiset_perms(items):
    """Distinct permutations of a multiset, as tuples."""
    items = sorted(items)
    if not items:
        yield ()
        return
    prev = None
    for i, x in enumerate(items):
        if x == prev:
            continue
        prev = x
        for rest in _multiset_perms(items[:i] + items[i + 1:]):
            yield (x,) + rest


def monomial(lam: SuperPartition, N: int) -> SuperPolynomial:
    """m_Lambda: sum over distinct images of theta_1..theta_m x^Lambda."""
    m = lam.m
    if N < len(lam.a) + len(lam.s):
        raise ValueError(f"m_{lam} needs at least {len(lam.a) + len(lam.s)} variables")
    bos = lam.s + (0,) * (N - m - len(lam.s))
    d = {}
    for pos in itertools.permutations(range(N), m):
        rest = [i for i in range(N) if i not in pos]
        sign = _perm_sign(pos)
        mask = mask_of(p + 1 for p in pos)
        for arr in _multiset_perms(bos):
            e = [0] * N
            for p, a in zip(pos, lam.a):
                e[p] = a
            for p, a in zip(rest, arr):
                e[p] = a
            d[(mask, tuple(e))] = ONE if sign > 0 else -ONE
    return SuperPolynomial(N, d)


def power_sum_single(N: int, k: int, fermionic: bool, offset: int = 0, total: int | None = None) -> SuperPolynomial:
    """p_k or p~_k on the variables offset+1..offset+N of a total-variable ring."""
    total = N + offset if total is None else total
    d = {}
    for i in range(offset, offset + N):
        e = [0] * total
        e[i] = k
        d[((1 << i) if fermionic else 0, tuple(e))] = ONE
    return SuperPolynomial(total, d)


def powersum(lam: SuperPartition, N: int, offset: int = 0, total: int | None = None) -> SuperPolynomial:
    total = N + offset if total is None else total
    r = SuperPolynomial.constant(total, 1)
    for k in lam.a:
        r = r * power_sum_single(N, k, True, offset, total)
    for k in lam.s:
        r = r * power_sum_single(N, k, False, offset, total)
    return r


# ---------------------------------------------------------------------------
# basis expansions


@dataclass
class BasisExpansion:
    basis: str
    degree: tuple
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if not v.is_zero()}
        for k in self.coeffs:
            if k.degree != tuple(self.degree):
                raise ValueError(f"{k} does not have degree {self.degree}")

    def __getitem__(self, lam) -> RationalQT:
        if isinstance(lam, str):
            lam = SuperPartition.parse(lam)
        return self.coeffs.get(lam, ZERO)

    def items(self):
        order = {L: i for i, L in enumerate(enumerate_superpartitions(*self.degree))}
        return sorted(self.coeffs.items(), key=lambda kv: order[kv[0]])

    def __eq__(self, other):
        return self.basis == other.basis and tuple(self.degree) == tuple(other.degree) and self.coeffs == other.coeffs

    def __add__(self, other):
        _same(self, other)
        d = dict(self.coeffs)
        for k, v in other.coeffs.items():
            d[k] = d.get(k, ZERO) + v
        return BasisExpansion(self.basis, self.degree, d)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> BasisExpansion:
        c = qt(c)
        return BasisExpansion(self.basis, self.degree, {k: v * c for k, v in self.coeffs.items()})

    def map_coefficients(self, fn) -> BasisExpansion:
        return BasisExpansion(self.basis, self.degree, {k: fn(v) for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "degree": list(self.degree),
            "coeffs": {str(k): v.to_json() for k, v in self.items()},
        }

    @classmethod
    def from_json(cls, obj) -> BasisExpansion:
        return cls(
            obj["basis"],
            tuple(obj["degree"]),
            {SuperPartition.parse(k): RationalQT.from_json(v) for k, v in obj["coeffs"].items()},
        )

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({v})*{self.basis}[{k}]" for k, v in self.items())


def _same(a, b):
    if a.basis != b.basis or tuple(a.degree) != tuple(b.degree):
        raise ValueError(f"cannot combine {a.basis}{a.degree} with {b.basis}{b.degree}")


def homogeneous_degree(f: SuperPolynomial) -> tuple[int, int]:
    degs = {(sum(e), bin(mask).count("1")) for mask, e in f.terms}
    if len(degs) != 1:
        raise ValueError(f"polynomial is not bihomogeneous: degrees {sorted(degs)}")
    return degs.pop()


def expand_monomial(f: SuperPolynomial, degree: tuple | None = None, check: bool = True) -> BasisExpansion:
    """Coefficients in the monomial basis, read off the theta_1..theta_m block."""
    if f.is_zero():
        if degree is None:
            raise ValueError("degree needed for the zero polynomial")
        return BasisExpansion("m", degree, {})
    n, m = homogeneous_degree(f) if degree is None else degree
    N = f.n
    mask = (1 << m) - 1
    coeffs = {}
    for lam in enumerate_superpartitions(n, m):
        if len(lam.a) + len(lam.s) > N:
            continue
        c = f.terms.get((mask, lam.composition(N)))
        if c is not None:
            coeffs[lam] = c
    out = BasisExpansion("m", (n, m), coeffs)
    if check and to_polynomial(out, N) != f:
        raise NotSymmetric("polynomial is not invariant under simultaneous permutations")
    return out


def to_polynomial(e: BasisExpansion, N: int) -> SuperPolynomial:
    basis_fn = {"m": monomial, "p": powersum}[e.basis]
    r = SuperPolynomial(N)
    for lam, c in e.coeffs.items():
        r = r + basis_fn(lam, N).scale(c)
    return r


# ---------------------------------------------------------------------------
# p <-> m transition (integer matrices, inverted once per degree)


@cache
def p_to_m(n: int, m: int) -> dict:
    """{Lambda: {Omega: Fraction}} with p_Lambda = sum M[Lambda][Omega] m_Omega."""
    N = n + m
    out = {}
    for lam in enumerate_superpartitions(n, m):
        e = expand_monomial(powersum(lam, N), (n, m), check=False)
        out[lam] = {k: v.evaluate(1, 1) for k, v in e.coeffs.items()}
    return out


@cache
def m_to_p(n: int, m: int) -> dict:
    """Inverse transition {Omega: {Lambda: Fraction}}: m_Omega = sum c p_Lambda."""
    labels = enumerate_superpartitions(n, m)
    k = len(labels)
    P = p_to_m(n, m)
    # Gauss-Jordan on [M | I] where row i of M is p_{labels[i]} in m coordinates
    A = [[P[L].get(O, Fraction(0)) for O in labels] + [Fraction(int(i == j)) for j in range(k)] for i, L in enumerate(labels)]
    for col in range(k):
        piv = next((r for r in range(col, k) if A[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError(f"power sums of degree ({n}|{m}) are dependent")
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(k):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    inv = [row[k:] for row in A]
    # p = M m  =>  m_j = sum_i inv[j][i] p_i
    return {O: {L: inv[j][i] for i, L in enumerate(labels) if inv[j][i] != 0} for j, O in enumerate(labels)}


def expand_powersum(f, degree: tuple | None = None) -> BasisExpansion:
    """p-basis coefficients of a symmetric superpolynomial or an m-expansion."""
    if isinstance(f, SuperPolynomial):
        if degree is None and not f.is_zero():
            degree = homogeneous_degree(f)
        n, m = degree
        if f.n < n + m:
            raise ValueError(f"need at least {n + m} variables for independent power sums of degree ({n}|{m})")
        f = expand_monomial(f, degree)
    if f.basis == "p":
        return f
    if f.basis != "m":
        raise ValueError(f"cannot convert {f.basis}-expansion to p")
    n, m = f.degree
    T_ = m_to_p(n, m)
    d: dict = {}
    for O, c in f.coeffs.items():
        for L, r in T_[O].items():
            d[L] = d.get(L, ZERO) + c * r
    return BasisExpansion("p", (n, m), d)


def p_to_monomial_expansion(f: BasisExpansion) -> BasisExpansion:
    if f.basis == "m":
        return f
    n, m = f.degree
    P = p_to_m(n, m)
    d: dict = {}
    for L, c in f.coeffs.items():
        for O, r in P[L].items():
            d[O] = d.get(O, ZERO) + c * r
    return BasisExpansion("m", (n, m), d)


def to_basis(f: BasisExpansion, basis: str) -> BasisExpansion:
    if basis == f.basis:
        return f
    if basis == "p":
        return expand_powersum(f)
    if basis == "m":
        return p_to_monomial_expansion(f)
    raise ValueError(f"unknown target basis {basis}")


# ---------------------------------------------------------------------------
# scalar products and homomorphisms


def pairing_weight(lam: SuperPartition) -> RationalQT:
    return z_qt(lam) * sign_m(lam.m)


def inner_qt(f: BasisExpansion, g: BasisExpansion) -> RationalQT:
    """The (q,t) scalar product, diagonal on power sums."""
    if tuple(f.degree) != tuple(g.degree):
        return ZERO
    fp, gp = expand_powersum(f), expand_powersum(g)
    s = ZERO
    for L, c in fp.coeffs.items():
        d = gp.coeffs.get(L)
        if d is not None:
            s = s + c * d * pairing_weight(L)
    return s


def inner_one(f: BasisExpansion, g: BasisExpansion) -> RationalQT:
    """The q=t=1 scalar product (rational-valued for rational inputs)."""
    if tuple(f.degree) != tuple(g.degree):
        return ZERO
    fp, gp = expand_powersum(f), expand_powersum(g)
    s = ZERO
    for L, c in fp.coeffs.items():
        d = gp.coeffs.get(L)
        if d is not None:
            s = s + c * d * (sign_m(L.m) * z_classical(L))
    return s


def _one_minus(a, b):
    return ONE - RationalQT.monomial(a, b)


def hom_factor(h: str, lam: SuperPartition) -> RationalQT:
    """Eigenvalue of the homomorphism h on p_Lambda."""
    if h == "omega_qt":
        r = RationalQT(-1) ** sum(lam.a)
        for k in lam.s:
            r = r * (RationalQT(-1) ** (k - 1)) * _one_minus(k, 0) / _one_minus(0, k)
        return r
    if h == "omega_tilde_q":
        return RationalQT.monomial(sum(lam.a), 0)
    if h == "Omega_qt":
        return hom_factor("omega_tilde_q", lam) * hom_factor("omega_qt", lam)
    if h == "omega":
        return RationalQT((-1) ** (lam.n - len(lam.s)))
    if h == "phi":
        r = ONE
        for k in lam.s:
            r = r * _one_minus(0, k)
        return r
    raise ValueError(f"unknown homomorphism {h!r}")


HOMOMORPHISMS = ("omega_qt", "omega_tilde_q", "Omega_qt", "omega", "phi")


def apply_hom(h: str, f: BasisExpansion) -> BasisExpansion:
    fp = expand_powersum(f)
    return BasisExpansion("p", fp.degree, {L: c * hom_factor(h, L) for L, c in fp.coeffs.items()})
