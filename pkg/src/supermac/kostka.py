"""Schur superpolynomials, the modified basis S, and generalized (q,t)-Kostka matrices."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import cache
from importlib import resources

from .combinat import SuperPartition, enumerate_superpartitions, n_bar
from .macdonald import integral_form, macdonald_super
from .qt import ONE, ZERO, PoleAtEvaluationPoint, RationalQT, format_poly, parse_qt
from .superpoly import BasisExpansion, apply_hom, expand_powersum


class SingularBasis(ArithmeticError):
    pass


def _spart(x) -> SuperPartition:
    return SuperPartition.parse(x) if isinstance(x, str) else x


@cache
def schur_super(lam) -> BasisExpansion:
    """P_Lambda at q = t = 0, coefficient by coefficient."""
    lam = _spart(lam)
    P = macdonald_super(lam).expansion
    coeffs = {}
    for om, c in P.coeffs.items():
        try:
            coeffs[om] = RationalQT(c.evaluate(0, 0))
        except PoleAtEvaluationPoint as exc:
            raise PoleAtEvaluationPoint(f"coefficient of m_{om.label()} in P_{lam.label()} has a pole at q=t=0") from exc
    return BasisExpansion("m", P.degree, coeffs)


@cache
def modified_S(lam) -> BasisExpansion:
    """phi(s_Lambda) in the power-sum basis."""
    return apply_hom("phi", schur_super(_spart(lam)))


def _solve(columns: dict, labels, target: BasisExpansion) -> dict:
    """Express target (p-basis) in the basis {label: p-expansion} by Gauss-Jordan elimination."""
    inv = _inverse_matrix(tuple(labels), columns)
    tp = expand_powersum(target)
    out = {}
    for om in labels:
        s = ZERO
        for L, c in tp.coeffs.items():
            w = inv[om].get(L)
            if w is not None:
                s = s + w * c
        if not s.is_zero():
            out[om] = s
    return out


_INV_CACHE: dict = {}


def _inverse_matrix(labels, columns) -> dict:
    """{Omega: {L: w}} such that coefficient of S_Omega in f is sum_L w * [p_L] f."""
    key = labels
    if key in _INV_CACHE:
        return _INV_CACHE[key]
    k = len(labels)
    # row r of A = p-coordinates (indexed by labels) of S_{labels[r]}
    A = [[columns[om].coeffs.get(L, ZERO) for L in labels] + [ONE if i == j else ZERO for j in range(k)] for i, om in enumerate(labels)]
    for col in range(k):
        piv = next((r for r in range(col, k) if not A[r][col].is_zero()), None)
        if piv is None:
            raise SingularBasis("S-basis is singular")
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col].inverse()
        A[col] = [x * pv for x in A[col]]
        for r in range(k):
            if r != col and not A[r][col].is_zero():
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    # A_right = M^{-1} where M[i][L] = [p_L] S_i; f = sum_i c_i S_i => [p_L] f = sum_i c_i M[i][L]
    # so c = f_p M^{-1}: c_i = sum_L f_L Minv[L][i]
    Minv = [row[k:] for row in A]
    out = {om: {L: Minv[j][i] for j, L in enumerate(labels) if not Minv[j][i].is_zero()} for i, om in enumerate(labels)}
    _INV_CACHE[key] = out
    return out


def expand_in_S(f: BasisExpansion) -> BasisExpansion:
    n, m = f.degree
    labels = enumerate_superpartitions(n, m)
    cols = {om: modified_S(om) for om in labels}
    return BasisExpansion("S", (n, m), _solve(cols, labels, f))


@dataclass
class KostkaMatrix:
    degree: tuple
    labels: tuple
    entries: dict = field(default_factory=dict)  # (Omega, Lambda) -> RationalQT

    def __getitem__(self, key) -> RationalQT:
        om, lam = key
        return self.entries.get((_spart(om), _spart(lam)), ZERO)

    def non_polynomial(self) -> list:
        return [(k, v) for k, v in self.entries.items() if not v.is_polynomial()]


@cache
def kostka_matrix(n: int, m: int) -> KostkaMatrix:
    labels = enumerate_superpartitions(n, m)
    entries = {}
    for lam in labels:
        for om, c in expand_in_S(integral_form(lam)).coeffs.items():
            entries[(om, lam)] = c
    return KostkaMatrix((n, m), labels, entries)


# ---------------------------------------------------------------------------
# conjecture and symmetry sweeps


@dataclass
class CheckReport:
    name: str
    degree: tuple
    examined: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "degree": list(self.degree),
            "examined": self.examined,
            "passed": self.passed,
            "failures": [[str(x) for x in f] for f in self.failures],
        }


def check_positivity(n: int, m: int) -> CheckReport:
    K = kostka_matrix(n, m)
    rep = CheckReport("positivity", (n, m))
    for om in K.labels:
        for lam in K.labels:
            rep.examined += 1
            v = K[om, lam]
            if not (v.is_polynomial() and v.has_nonnegative_coefficients()):
                rep.failures.append((om, lam, v))
    return rep


def check_sym1(n: int, m: int) -> CheckReport:
    """K_{Omega Lambda}(q,t) = K_{Omega' Lambda'}(t,q)."""
    K = kostka_matrix(n, m)
    rep = CheckReport("sym1", (n, m))
    for om in K.labels:
        for lam in K.labels:
            rep.examined += 1
            if K[om, lam] != K[om.conjugate(), lam.conjugate()].swap_qt():
                rep.failures.append((om, lam))
    return rep


def sym2_rhs(K: KostkaMatrix, om, lam) -> RationalQT:
    om, lam = _spart(om), _spart(lam)
    pref = RationalQT.monomial(n_bar(lam.conjugate()), n_bar(lam))
    return pref * K[om.conjugate(), lam].bar()


def check_sym2(n: int, m: int) -> CheckReport:
    """K_{Omega Lambda}(q,t) = q^{nbar(Lambda')} t^{nbar(Lambda)} K_{Omega' Lambda}(1/q,1/t)."""
    K = kostka_matrix(n, m)
    rep = CheckReport("sym2", (n, m))
    for om in K.labels:
        for lam in K.labels:
            rep.examined += 1
            if K[om, lam] != sym2_rhs(K, om, lam):
                rep.failures.append((om, lam))
    return rep


def check_psi(lam) -> bool:
    """Sending S_Omega to S_{circ(Omega)} maps J_Lambda to the classical J of circ(Lambda)."""
    lam = _spart(lam)
    if lam.m != 1:
        raise ValueError("the projection is defined for fermionic degree 1")
    n = lam.n
    K = kostka_matrix(n, 1)
    Kc = kostka_matrix(n + 1, 0)
    target = SuperPartition.partition(lam.circ())
    sums: dict = {}
    for om in K.labels:
        mu = SuperPartition.partition(om.circ())
        sums[mu] = sums.get(mu, ZERO) + K[om, lam]
    return all(sums.get(mu, ZERO) == Kc[mu, target] for mu in Kc.labels)


def refine_kostka(mu, lam) -> dict:
    """{Lambda: {Omega: K_{Omega Lambda}}} over the one-circle versions of lam and mu.

    Raises if the summed refinements depend on the choice of Lambda.
    """
    mu, lam = tuple(mu), tuple(lam)
    n = sum(lam) - 1
    K = kostka_matrix(n, 1)
    out = {}
    totals = set()
    for L in K.labels:
        if L.circ() != lam:
            continue
        row = {om: K[om, L] for om in K.labels if om.circ() == mu}
        out[L] = row
        totals.add(sum(row.values(), ZERO))
    if len(totals) > 1:
        raise AssertionError(f"refinement of K_{mu},{lam} depends on the choice of superpartition")
    return out


def phi_projection(lam) -> dict:
    """{mu: coefficient} of the image of J_Lambda when S_Omega -> S_concat(Omega) or 0."""
    lam = _spart(lam)
    K = kostka_matrix(lam.n, lam.m)
    out = {}
    for om in K.labels:
        if om.is_concatenable():
            mu = om.concatenation()
            c = K[om, lam]
            if not c.is_zero():
                out[mu] = c
    return out


def check_phi_concat(lam) -> bool:
    lam = _spart(lam)
    if lam.m != 1 or not lam.is_concatenable():
        raise ValueError(f"{lam} is not a concatenable superpartition of fermionic degree 1")
    lam_c = SuperPartition.partition(lam.concatenation())
    Kc = kostka_matrix(lam.n, 0)
    image = phi_projection(lam)
    expected = {mu.s: Kc[mu, lam_c] for mu in Kc.labels if not Kc[mu, lam_c].is_zero()}
    return image == expected


# ---------------------------------------------------------------------------
# tables


def _cell(v: RationalQT, latex: bool) -> str:
    return format_poly(v, latex=latex)


def table_rows(n: int, m: int, transpose: bool):
    """(labels, grid) with grid[r][c] = K_{r c}, or K_{c r} when transposed (reference layout)."""
    K = kostka_matrix(n, m)
    L = K.labels
    if transpose:
        grid = [[K[c, r] for c in L] for r in L]
    else:
        grid = [[K[r, c] for c in L] for r in L]
    return L, grid


def render_table(labels, grid, fmt: str) -> str:
    names = [lam.label() for lam in labels]
    if fmt == "json":
        obj = {names[i]: {names[j]: _cell(grid[i][j], False) for j in range(len(names))} for i in range(len(names))}
        return json.dumps(obj, separators=(",", ":"))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + names)
        for i, nm in enumerate(names):
            w.writerow([nm] + [_cell(v, False) for v in grid[i]])
        return buf.getvalue()
    if fmt == "latex":
        cols = "c|" + "c|" * len(names)
        lines = [f"\\begin{{tabular}}{{{cols}}}"]
        lines.append(" & " + " & ".join(f"${nm}$" for nm in names) + " \\\\ \\hline")
        for i, nm in enumerate(names):
            lines.append(f"${nm}$ & " + " & ".join(f"${_cell(v, True)}$" for v in grid[i]) + " \\\\ \\hline")
        lines.append("\\end{tabular}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit_table(n: int, m: int, fmt: str = "json", transpose: bool = False) -> str:
    labels, grid = table_rows(n, m, transpose)
    return render_table(labels, grid, fmt)


# ---------------------------------------------------------------------------
# golden reference tables

GOLDEN_DEGREES = ((1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2))


def golden_text(n: int, m: int) -> str:
    return resources.files("supermac").joinpath(f"data/kostka_{n}_{m}.tex").read_text()


def _cells(line: str) -> list[str]:
    body = line.removesuffix(" \\\\ \\hline")
    return [c.strip().strip("$") for c in body.split("&")]


def golden_entries(n: int, m: int) -> dict:
    """{(row label, column label): RationalQT} from a bundled table in reference layout."""
    lines = golden_text(n, m).splitlines()
    header = [SuperPartition.parse(x) for x in _cells(lines[1])[1:]]
    out = {}
    for line in lines[2:-1]:
        cells = _cells(line)
        row = SuperPartition.parse(cells[0])
        for col, cell in zip(header, cells[1:]):
            out[(row, col)] = parse_qt(cell)
    return out


def compare_with_golden(n: int, m: int) -> list:
    """Mismatching (row, col, expected, computed) in reference layout (row = Lambda, col = Omega)."""
    K = kostka_matrix(n, m)
    bad = []
    gold = golden_entries(n, m)
    for (r, c), v in gold.items():
        got = K[c, r]
        if got != v:
            bad.append((r, c, v, got))
    if len(gold) != len(K.labels) ** 2:
        bad.append(("size", len(gold), len(K.labels) ** 2))
    return bad
