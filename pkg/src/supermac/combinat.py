"""Partitions, superpartitions, compositions and their diagram statistics.

A superpartition is stored as ``(a; s)``: ``a`` strictly decreasing (the
fermionic parts, at most one zero) and ``s`` an ordinary partition.  The
diagram pair ``(circ, star)`` is derived on demand: ``star`` is the sorted
union of ``a`` and ``s``, ``circ`` the sorted union of ``a_i + 1`` and ``s``.
Cells are 1-based ``(row, column)`` pairs throughout.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cache
from math import comb, factorial, prod

from .qt import ONE, T, RationalQT, q_factorial

# ---------------------------------------------------------------------------
# ordinary partitions (plain tuples, no trailing zeros)


def strip(parts) -> tuple:
    return tuple(p for p in parts if p)


def conjugate_partition(lam) -> tuple:
    lam = strip(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def dominates(lam, mu) -> bool:
    """True if lam >= mu in dominance order (same size assumed)."""
    s1 = s2 = 0
    for i in range(max(len(lam), len(mu))):
        s1 += lam[i] if i < len(lam) else 0
        s2 += mu[i] if i < len(mu) else 0
        if s1 < s2:
            return False
    return s1 == s2


def partitions(n: int, max_part: int | None = None):
    """Partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def arm_leg_partition(lam, cell) -> tuple[int, int]:
    i, j = cell
    lam = strip(lam)
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError(f"cell {cell} is not in the diagram of {lam}")
    return lam[i - 1] - j, conjugate_partition(lam)[j - 1] - i


def cells(lam):
    for i, row in enumerate(strip(lam), start=1):
        for j in range(1, row + 1):
            yield (i, j)


def n_stat(lam) -> int:
    """n(lam) = sum (i-1) lam_i."""
    return sum(i * p for i, p in enumerate(strip(lam)))


def z_partition(lam) -> int:
    lam = strip(lam)
    return prod(k ** lam.count(k) * factorial(lam.count(k)) for k in set(lam))


def inversions(parts) -> int:
    """#{i < j : parts_i > parts_j}; zeros in the padding count."""
    return sum(1 for i, j in itertools.combinations(range(len(parts)), 2) if parts[i] > parts[j])


# ---------------------------------------------------------------------------
# superpartitions

_SPART_RE = re.compile(r"^\(?([0-9,^]*);([0-9,^]*)\)?$")


def _parse_parts(text: str) -> list[int]:
    out = []
    for tok in filter(None, text.split(",")):
        if "^" in tok:  # exponent notation 1^3
            base, k = tok.split("^")
            out.extend([int(base)] * int(k))
        else:
            out.append(int(tok))
    return out


@dataclass(frozen=True, order=False)
class SuperPartition:
    a: tuple
    s: tuple

    def __post_init__(self):
        a, s = tuple(self.a), tuple(self.s)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "s", s)
        if any(x < 0 for x in a + s):
            raise ValueError(f"negative part in ({a};{s})")
        if any(a[i] <= a[i + 1] for i in range(len(a) - 1)):
            raise ValueError(f"fermionic parts {a} must be strictly decreasing")
        if any(s[i] < s[i + 1] for i in range(len(s) - 1)) or 0 in s:
            raise ValueError(f"bosonic parts {s} must form a partition without zeros")

    # -- parsing / printing --------------------------------------------------

    @classmethod
    def parse(cls, text: str, legacy: bool = False) -> SuperPartition:
        """Parse ``"a1,a2;s1,s2"`` (either side may be empty).

        With ``legacy=True`` explicit zero parts on the bosonic side (as in a
        label such as ``(3;0)``) are dropped instead of rejected.
        """
        if isinstance(text, SuperPartition):
            return text
        m = _SPART_RE.match(text.replace(" ", ""))
        if not m:
            raise ValueError(f"bad superpartition {text!r}; expected 'a1,a2,...;s1,s2,...'")
        a = _parse_parts(m.group(1))
        s = _parse_parts(m.group(2))
        if legacy:
            s = [x for x in s if x]
        return cls(tuple(a), tuple(s))

    @classmethod
    def partition(cls, lam) -> SuperPartition:
        return cls((), strip(lam))

    def __str__(self):
        return ",".join(map(str, self.a)) + ";" + ",".join(map(str, self.s))

    def __repr__(self):
        return f"SuperPartition('{self}')"

    def label(self) -> str:
        """Parenthesized form such as ``(2,0;1,1)``."""
        return f"({self})"

    # -- basic data ----------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return sum(self.a) + sum(self.s)

    @property
    def degree(self) -> tuple[int, int]:
        return (self.n, self.m)

    def star(self) -> tuple:
        return strip(sorted(self.a + self.s, reverse=True))

    def circ(self) -> tuple:
        return strip(sorted(tuple(x + 1 for x in self.a) + self.s, reverse=True))

    def to_star_circ(self) -> tuple[tuple, tuple]:
        """(circ, star) diagram pair."""
        return self.circ(), self.star()

    @classmethod
    def from_star_circ(cls, circ, star) -> SuperPartition:
        circ, star = strip(circ), strip(star)
        if any(circ[i] < circ[i + 1] for i in range(len(circ) - 1)) or any(
            star[i] < star[i + 1] for i in range(len(star) - 1)
        ):
            raise ValueError("diagram pair must consist of partitions")
        L = len(circ)
        if len(star) > L:
            raise ValueError(f"{star} is not contained in {circ}")
        st = star + (0,) * (L - len(star))
        diff = [c - s for c, s in zip(circ, st)]
        if any(d not in (0, 1) for d in diff):
            raise ValueError(f"{circ}/{star} is not a horizontal strip")
        cc, cs = conjugate_partition(circ), conjugate_partition(star)
        cs = cs + (0,) * (len(cc) - len(cs))
        if len(cs) > len(cc) or any(x - y not in (0, 1) for x, y in zip(cc, cs)):
            raise ValueError(f"{circ}/{star} is not a vertical strip")
        a = tuple(s for s, d in zip(st, diff) if d)
        s = tuple(x for x, d in zip(st, diff) if not d and x)
        return cls(a, s)

    def conjugate(self) -> SuperPartition:
        return SuperPartition.from_star_circ(conjugate_partition(self.circ()), conjugate_partition(self.star()))

    def fermionic_rows(self) -> set[int]:
        circ, star = self.circ(), self.star()
        return {i + 1 for i in range(len(circ)) if circ[i] != (star[i] if i < len(star) else 0)}

    def fermionic_columns(self) -> set[int]:
        return self.conjugate().fermionic_rows()

    def composition(self, N: int | None = None) -> tuple:
        """(a, s) padded with zeros to length N."""
        base = self.a + self.s
        if N is None:
            return base
        if N < len(base):
            raise ValueError(f"{self} needs at least {len(base)} variables")
        return base + (0,) * (N - len(base))

    def reversed_composition(self, N: int) -> tuple:
        """Lambda^R: fermionic block reversed followed by the padded bosonic block reversed."""
        s = self.s + (0,) * (N - self.m - len(self.s))
        if N - self.m < len(self.s):
            raise ValueError(f"{self} needs at least {self.m + len(self.s)} variables")
        return tuple(reversed(self.a)) + tuple(reversed(s))

    def circ_star_key(self):
        return (self.star(), self.circ())

    def is_concatenable(self) -> bool:
        return not self.s or (self.m > 0 and self.a[-1] >= self.s[0])

    def concatenation(self) -> tuple:
        if not self.is_concatenable():
            raise ValueError(f"{self} is not concatenable")
        return strip(self.a + self.s)


def parse(text: str) -> SuperPartition:
    return SuperPartition.parse(text)


def dominance_leq(omega: SuperPartition, lam: SuperPartition) -> bool:
    if omega.degree != lam.degree:
        return False
    return dominates(lam.star(), omega.star()) and dominates(lam.circ(), omega.circ())


def _distinct_decreasing(total: int, m: int, upper: int):
    """Strictly decreasing m-tuples of nonneg ints with sum total and first part <= upper."""
    if m == 0:
        if total == 0:
            yield ()
        return
    # minimum sum of m distinct nonneg parts below the first: C(m-1, 2) + ...
    for first in range(min(total, upper), -1, -1):
        rest = total - first
        if rest < comb(m - 1, 2):
            continue
        for tail in _distinct_decreasing(rest, m - 1, first - 1):
            yield (first,) + tail


@cache
def enumerate_superpartitions(n: int, m: int) -> tuple:
    """All superpartitions of degree (n|m).

    Order: (star, circ) compared lexicographically, largest first.  This
    refines dominance and reproduces the row order of the reference Kostka
    tables.
    """
    out = []
    for k in range(n + 1):
        for a in _distinct_decreasing(k, m, k):
            for s in partitions(n - k):
                out.append(SuperPartition(a, s))
    out.sort(key=lambda L: L.circ_star_key(), reverse=True)
    return tuple(out)


# ---------------------------------------------------------------------------
# compositions and the Bruhat order


def sort_perm(eta) -> tuple:
    """Minimal-length permutation w with eta = w(eta^+), in one-line notation.

    w[j] is the position (0-based) of the j-th entry of eta^+, ties broken
    left to right.
    """
    return tuple(sorted(range(len(eta)), key=lambda i: (-eta[i], i)))


def bruhat_leq_perm(u, w) -> bool:
    """Tableau criterion for u <= w in the Bruhat order of S_N."""
    n = len(u)
    for k in range(1, n):
        a = sorted(u[:k])
        b = sorted(w[:k])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def perm_length(w) -> int:
    return inversions(w)


def bruhat_less(nu, eta) -> bool:
    """nu strictly below eta in the Bruhat order on compositions."""
    if len(nu) != len(eta):
        raise ValueError("compositions must have equal length")
    if tuple(nu) == tuple(eta):
        return False
    if sum(nu) != sum(eta):
        return False
    np_, ep = tuple(sorted(nu, reverse=True)), tuple(sorted(eta, reverse=True))
    if np_ != ep:
        return dominates(ep, np_)
    return bruhat_leq_perm(sort_perm(eta), sort_perm(nu))


def compositions(n: int, N: int):
    """Weak compositions of n into N parts."""
    if N == 0:
        if n == 0:
            yield ()
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, N - 1):
            yield (first,) + rest


def composition_cells(gamma):
    for i, g in enumerate(gamma, start=1):
        for j in range(1, g + 1):
            yield (i, j)


def arm_leg_composition(gamma, cell) -> dict:
    """Arm, co-arm, leg, co-leg and the two halves of the leg of a cell."""
    i, j = cell
    if not (1 <= i <= len(gamma) and 1 <= j <= gamma[i - 1]):
        raise ValueError(f"cell {cell} is not in the diagram of {gamma}")
    gi = gamma[i - 1]
    up = sum(1 for k in range(i - 1) if j <= gamma[k] + 1 <= gi)
    down = sum(1 for k in range(i, len(gamma)) if j <= gamma[k] <= gi)
    coleg = sum(1 for k in range(i - 1) if gamma[k] >= gi) + sum(1 for k in range(i, len(gamma)) if gamma[k] > gi)
    return {"a": gi - j, "a'": j - 1, "l": up + down, "l'": coleg, "l_up": up, "l_down": down}


def coleg(gamma, i: int) -> int:
    """#{k < i : gamma_k >= gamma_i} + #{k > i : gamma_k > gamma_i} (1-based i)."""
    gi = gamma[i - 1]
    return sum(1 for k in range(i - 1) if gamma[k] >= gi) + sum(1 for k in range(i, len(gamma)) if gamma[k] > gi)


# ---------------------------------------------------------------------------
# superpartition statistics


def _one_minus(a: int, b: int) -> RationalQT:
    return ONE - RationalQT.monomial(a, b)


def b_cells(lam: SuperPartition):
    """Cells of star not lying both in a fermionic row and a fermionic column."""
    rows, cols = lam.fermionic_rows(), lam.fermionic_columns()
    return [c for c in cells(lam.star()) if not (c[0] in rows and c[1] in cols)]


def _arm_leg_in(lam, cell):
    """Arm and leg of a cell measured in partition lam (cell may lie outside lam)."""
    i, j = cell
    lam = strip(lam)
    row = lam[i - 1] if i <= len(lam) else 0
    col = conjugate_partition(lam)
    c = col[j - 1] if j <= len(col) else 0
    return row - j, c - i


def hooks_updown(lam: SuperPartition) -> tuple[RationalQT, RationalQT]:
    star, circ = lam.star(), lam.circ()
    up = down = ONE
    for c in b_cells(lam):
        a_s, l_s = _arm_leg_in(star, c)
        a_c, l_c = _arm_leg_in(circ, c)
        up = up * _one_minus(a_s + 1, l_c)
        down = down * _one_minus(a_c, l_s + 1)
    return up, down


def hooks_updown_all_cells(lam: SuperPartition) -> tuple[RationalQT, RationalQT]:
    """Same products taken over every cell of star (no cancellation)."""
    star, circ = lam.star(), lam.circ()
    up = down = ONE
    for c in cells(star):
        a_s, l_s = _arm_leg_in(star, c)
        a_c, l_c = _arm_leg_in(circ, c)
        up = up * _one_minus(a_s + 1, l_c)
        down = down * _one_minus(a_c, l_s + 1)
    return up, down


def z_qt(lam: SuperPartition) -> RationalQT:
    """z_Lambda(q,t) without the (-1)^{C(m,2)} sign."""
    r = RationalQT.monomial(sum(lam.a), 0, z_partition(lam.s))
    for k in lam.s:
        r = r * _one_minus(k, 0) / _one_minus(0, k)
    return r


def z_classical(lam: SuperPartition) -> int:
    return z_partition(lam.s)


def sign_m(m: int) -> int:
    return -1 if comb(m, 2) % 2 else 1


def f_stat(lam: SuperPartition, N: int) -> RationalQT:
    """prod_j [n_j]_t! over part multiplicities of s padded to N - m (zeros counted)."""
    s = lam.s + (0,) * (N - lam.m - len(lam.s))
    r = ONE
    for k in set(s):
        r = r * q_factorial(s.count(k))
    return r


def inv_stat(lam: SuperPartition, N: int) -> int:
    s = lam.s + (0,) * (N - lam.m - len(lam.s))
    return inversions(s)


def c_normalization(lam: SuperPartition, N: int) -> RationalQT:
    """c_Lambda(t) = (-1)^{C(m,2)} / (f(t) t^inv) at N variables."""
    return RationalQT(sign_m(lam.m)) / (f_stat(lam, N) * T ** inv_stat(lam, N))


def d_stat(lam: SuperPartition) -> int:
    """Sum over B-cells of the cells above lying in a fermionic row and a fermionic column."""
    rows, cols = lam.fermionic_rows(), lam.fermionic_columns()
    total = 0
    for i, j in b_cells(lam):
        if j in cols:
            total += sum(1 for k in range(1, i) if k in rows)
    return total


def n_bar(lam: SuperPartition) -> int:
    """n(S Lambda) - d(Lambda) with S Lambda the skew diagram circ / staircase(m+1)."""
    circ = lam.circ()
    m = lam.m
    stair = [m - k for k in range(m + 1)]  # (m, m-1, ..., 0)
    total = 0
    for i, row in enumerate(circ, start=1):
        inner = stair[i - 1] if i <= len(stair) else 0
        total += (i - 1) * max(row - inner, 0)
    return total - d_stat(lam)


def stats(lam: SuperPartition, N: int | None = None) -> dict:
    if N is None:
        N = lam.n + lam.m
    return {
        "z": z_qt(lam),
        "f": f_stat(lam, N),
        "inv": inv_stat(lam, N),
        "c": c_normalization(lam, N),
        "n": n_stat(lam.star()),
        "nbar": n_bar(lam),
        "d": d_stat(lam),
    }
