import json

import pytest

from supermac.combinat import SuperPartition
from supermac.kostka import (
    GOLDEN_DEGREES,
    check_phi_concat,
    check_positivity,
    check_psi,
    check_sym1,
    check_sym2,
    compare_with_golden,
    emit_table,
    expand_in_S,
    golden_text,
    kostka_matrix,
    phi_projection,
    schur_super,
)
from supermac.macdonald import integral_form
from supermac.qt import ONE, Q, T

P = SuperPartition.parse


def test_schur_at_zero():
    assert schur_super("1;").coeffs == {P("1;"): ONE}


def test_J21_in_S_basis():
    got = expand_in_S(integral_form("2;1")).coeffs
    expected = {
        P("0;3"): Q * Q * T,
        P("0;2,1"): Q * Q * (Q * T + 1),
        P("0;1,1,1"): Q**3,
        P("1;2"): Q * (Q * T + 1),
        P("1;1,1"): Q,
        P("2;1"): Q * T + 1,
        P("3;0", legacy=True): T,
    }
    assert got == expected


def test_phi_projection_of_J21():
    assert phi_projection("2;1") == {(1, 1, 1): Q, (2, 1): Q * T + 1, (3,): T}
    assert check_phi_concat("2;1")


def test_psi_projection():
    assert check_psi("0;")
    assert check_psi("2;1")


def test_psi_sums_reproduce_classical_entry():
    K = kostka_matrix(3, 1)
    assert K["2;1", "2;1"] + K["0;3", "2;1"] == 1 + Q * T + Q * Q * T
    assert K["2;1", "0;3"] + K["0;3", "0;3"] == Q * T + Q * Q * T + 1


def test_symmetry_examples():
    K = kostka_matrix(4, 2)
    assert K["2,0;1,1", "2,0;2"] == Q + Q * T + Q * Q * T
    assert K["3,0;1", "2,0;2"].swap_qt() == Q + Q * T + Q * Q * T
    assert K["2,0;1,1", "1,0;2,1"] == T + Q * T**2 + Q * T**3
    assert Q * T**5 * K["3,0;1", "1,0;2,1"].bar() == T + Q * T**2 + Q * T**3


@pytest.mark.parametrize("n, m", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_conjecture_sweeps(n, m):
    for check in (check_positivity, check_sym1, check_sym2):
        rep = check(n, m)
        assert rep.passed and rep.examined > 0


def test_sym1_needs_the_qt_swap():
    # negative control: dropping the exchange of q and t breaks the symmetry
    K = kostka_matrix(3, 1)
    broken = [(om, lam) for om in K.labels for lam in K.labels if K[om, lam] != K[om.conjugate(), lam.conjugate()]]
    assert broken


@pytest.mark.parametrize("n, m", GOLDEN_DEGREES[:4])
def test_matches_reference_tables(n, m):
    assert compare_with_golden(n, m) == []
    assert emit_table(n, m, "latex", transpose=True) == golden_text(n, m)


def test_table_formats():
    assert json.loads(emit_table(0, 0, "json")) == {"(;)": {"(;)": "1"}}
    body = emit_table(1, 1, "latex", transpose=True).splitlines()[2:4]
    assert body == ["$(1;)$ & $1$ & $q$ \\\\ \\hline", "$(0;1)$ & $t$ & $1$ \\\\ \\hline"]
    csv_rows = emit_table(2, 2, "csv", transpose=True).splitlines()
    assert csv_rows[1:] == ['"(2,0;)",1,q', '"(1,0;1)",t,1']
    with pytest.raises(ValueError):
        emit_table(1, 1, "xml")


def test_phi_on_the_single_circle():
    # (0;) concatenates to the empty partition, whose integral form is 1
    assert P("0;").concatenation() == ()
    assert phi_projection("0;") == {(): ONE}
    assert check_phi_concat("0;")
