"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) or directly when this file is run as a script.
All comparisons are exact; the constant-term checks compare every
coefficient of q^k for k < 12.
"""

import sys
from math import comb

from supermac import ct, hecke, kostka, macdonald
from supermac.combinat import SuperPartition, compositions, enumerate_superpartitions
from supermac.qt import Q, T, RationalQT

Q_ORDER = 12
TABLE_DEGREES = kostka.GOLDEN_DEGREES
UP_TO_4_2 = [(n, m) for n in range(5) for m in range(3)]
UP_TO_3_2 = [(n, m) for n in range(4) for m in range(3)]

RESULTS: dict = {}
P = SuperPartition.parse


def record(key, title, ok, detail=""):
    RESULTS[key] = (title, ok, detail)
    return ok


def labels(degrees):
    return [lam for n, m in degrees for lam in enumerate_superpartitions(n, m)]


def test_01_kostka_tables_match_reference():
    bad = []
    for n, m in TABLE_DEGREES:
        bad += [(n, m, x) for x in kostka.compare_with_golden(n, m)]
        if kostka.emit_table(n, m, "latex", transpose=True) != kostka.golden_text(n, m):
            bad.append((n, m, "layout"))
    assert record("01", "Kostka tables at degrees (1|1)..(4|2) match the reference tables", not bad, f"{len(bad)} mismatches")


def test_02_J21_expansion_and_concatenation():
    got = kostka.expand_in_S(macdonald.integral_form("2;1")).coeffs
    expected = {
        P("0;3"): Q * Q * T,
        P("0;2,1"): Q * Q * (Q * T + 1),
        P("0;1,1,1"): Q**3,
        P("1;2"): Q * (Q * T + 1),
        P("1;1,1"): Q,
        P("2;1"): Q * T + 1,
        P("3;0", legacy=True): T,
    }
    phi = kostka.phi_projection("2;1")
    ok = got == expected and phi == {(1, 1, 1): Q, (2, 1): Q * T + 1, (3,): T}
    assert record("02", "J_(2;1) in the S basis (seven terms) and its concatenation image", ok)


def test_03_orthogonality():
    bad = [p for n, m in UP_TO_4_2 for p in macdonald.orthogonality_failures(n, m)]
    assert record("03", "P orthogonal under the (q,t) scalar product up to (4|2)", not bad, f"{len(bad)} non-orthogonal pairs")


def test_04_norm_formula():
    bad = [lam.label() for lam in labels(UP_TO_4_2) if not macdonald.norm_check(lam)[2]]
    assert record("04", "norms equal the signed hook quotient up to (4|2)", not bad, ", ".join(bad))


def test_05_eigenvalues_as_stated():
    lams = labels(UP_TO_3_2)
    bad = {}
    for lam in lams:
        rep = macdonald.eigen_check(lam, e2_formula="stated")
        if not rep.passed:
            bad[lam.label()] = [k for k, ok in rep.results.items() if not ok]
    injective = all(macdonald.eigenvalue_injective(n, m) for n, m in UP_TO_3_2)
    derived = all(macdonald.eigen_check(lam, e2_formula="operator").passed for lam in lams)
    record(
        "05-diagnostic",
        "eigenvalues with the E2 value derived from the operator (fermionic rows add -t^{1-i})",
        derived and injective,
    )
    bosonic = sum(1 for lab in bad if P(lab).m == 0)
    detail = f"stated E2 value fails on {len(bad)} of {len(lams)} superpartitions, {bosonic} of them with m = 0"
    assert record("05", "D*, D-circled, E1, E2 eigenvalues as stated, injective per degree, up to (3|2)", not bad and injective, detail)


def test_06_unitriangular_and_stable():
    bad = []
    for lam in labels(UP_TO_4_2):
        P_ = macdonald.macdonald_super(lam)
        n, m = lam.degree
        if not (macdonald.unitriangular(P_) and macdonald.coefficients_stable(lam) and macdonald.stability_check(lam, n + m + 1)):
            bad.append(lam.label())
    assert record("06", "unitriangular, stable in N, up to (4|2)", not bad, ", ".join(bad))


def test_07_duality():
    bad = [lam.label() for lam in labels(UP_TO_4_2) if not macdonald.duality_check(lam)]
    assert record("07", "duality Omega_qt P(q,t) = (q/t)^|L| Q_L'(1/t,1/q) up to (4|2)", not bad, ", ".join(bad))


def test_08_hecke_cherednik():
    bad = []
    for N in range(2, 5):
        bad += [(N, k) for k, v in hecke.check_algebra_relations(N, 4).items() if v]
        for d in range(5):
            for eta in compositions(d, N):
                if not hecke.check_E_stability(eta):
                    bad.append((N, "stability", eta))
        for d in range(5):
            for eta in compositions(d, N):
                bad += [(N, "T on E", eta, i) for i in range(1, N) if not hecke.check_T_action_on_E(eta, i)]
    assert record("08", "Hecke/Cherednik relations, E stability, T action on E, N <= 4, degree <= 4", not bad, str(bad[:5]))


def test_09_constant_term_suite():
    bad = []
    for N in (2, 3):
        for d in range(3):
            bad += [("norm", eta) for eta in compositions(d, N) if not ct.e_norm_check(eta, Q_ORDER)]
    for n, m in [(n, m) for n in range(3) for m in range(2)]:
        rep = ct.super_ct_check(n, m, 3, Q_ORDER)
        bad += [("orth", p) for p in rep["non_orthogonal"]] + [("ratio", lab) for lab in rep["ratio_failures"]]
    assert record("09", "constant-term E norms (N=2,3) and P orthogonality and finite-N ratio up to (2|1), through q^11", not bad, str(bad))


def test_10_three_norm_expressions():
    lams = [lam for d in range(7) for m in range(4) for lam in enumerate_superpartitions(d - m, m) if d >= m]
    bad = [lam.label() for lam in lams if not (ct.three_way_norm_check(lam)["pass"] and ct.hook_ratio_identity_check(lam))]
    worked = ct.worked_variation_check()
    ok = not bad and worked["identity_before"] and worked["identity_after"]
    assert record("10", "limit ratio = hook quotient = rescaled norm, total degree <= 6, m <= 3", ok, ", ".join(bad))


def test_11_divided_difference_identity_and_kernel():
    as_stated = {m: hecke.divided_difference_constant(m) == RationalQT(-1) ** comb(m, 2) * RationalQT.monomial(0, -comb(m, 2)) for m in (1, 2, 3)}
    computed = all(hecke.divided_difference_identity_check(m) for m in (1, 2, 3))
    kernel = ct.kernel_checks(3, 2)
    record("11-diagnostic", "divided-difference identity with constant (-1)^{C(m,2)}, m <= 3; kernel identities", computed and all(kernel.values()))
    ok = all(as_stated.values()) and all(kernel.values())
    detail = "constant (-t)^{-C(m,2)} fails for m = " + ",".join(str(m) for m, v in as_stated.items() if not v)
    assert record("11", "divided-difference identity with constant (-t)^{-C(m,2)}, m <= 3; kernel through degree 3 at N=2", ok, detail)


def test_12_conjecture_sweeps():
    bad = []
    for n, m in UP_TO_4_2:
        for check in (kostka.check_positivity, kostka.check_sym1, kostka.check_sym2):
            rep = check(n, m)
            bad += [(rep.name, n, m)] * (not rep.passed)
        if m == 1:
            for lam in enumerate_superpartitions(n, 1):
                bad += [("psi", lam.label())] * (not kostka.check_psi(lam))
                if lam.is_concatenable() and lam.n > 0:
                    bad += [("phi", lam.label())] * (not kostka.check_phi_concat(lam))
    K = kostka.kostka_matrix(4, 2)
    examples = (
        K["2,0;1,1", "2,0;2"] == Q + Q * T + Q * Q * T == K["3,0;1", "2,0;2"].swap_qt()
        and K["2,0;1,1", "1,0;2,1"] == T + Q * T**2 + Q * T**3 == Q * T**5 * K["3,0;1", "1,0;2,1"].bar()
    )
    assert record("12", "positivity, both symmetries, both projections up to (4|2), with the worked examples", not bad and examples, str(bad))


def summary_lines():
    lines = []
    for key in sorted(RESULTS):
        title, ok, detail = RESULTS[key]
        tag = "PASS" if ok else "FAIL"
        lines.append(f"{tag} criterion {key}: {title}" + (f" [{detail}]" if detail and not ok else ""))
    return lines


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for _, ok, _ in RESULTS.values()) else 1)
