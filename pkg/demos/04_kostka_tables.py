# %% Generalized (q,t)-Kostka coefficients
from supermac import expand_in_S, integral_form, kostka_matrix
from supermac.kostka import check_positivity, check_sym1, check_sym2, compare_with_golden, emit_table, phi_projection

# J_(2;1) in the modified Schur basis: seven terms
for om, c in expand_in_S(integral_form("2;1")).coeffs.items():
    print(f"  S_{om}: {c}")

# %% keeping only concatenable labels gives the classical J_(2,1)
print(phi_projection("2;1"))

# %% tables: default rows are Omega, --paper-layout puts Lambda in rows
print(emit_table(2, 2, "csv"))
print(emit_table(1, 1, "latex", transpose=True))
print("(4|2) mismatches against the reference table:", compare_with_golden(4, 2))

# %% symmetries and positivity
K = kostka_matrix(4, 2)
print(K["2,0;1,1", "2,0;2"], "|", K["3,0;1", "2,0;2"].swap_qt())
for check in (check_positivity, check_sym1, check_sym2):
    rep = check(4, 2)
    print(rep.name, rep.examined, "entries,", "pass" if rep.passed else rep.failures)
