# %% Hecke operators, Cherednik operators and non-symmetric Macdonald polynomials
from supermac import nonsym_macdonald
from supermac.hecke import check_algebra_relations, cherednik_Y, hecke_T, nonsym_macdonald_spectral, omega_op
from supermac.superpoly import SuperPolynomial

x1, x2 = SuperPolynomial.x(2, 1), SuperPolynomial.x(2, 2)
print("T1 x2 =", hecke_T(1, x2))
print("omega x1 =", omega_op(x1))
print("Y1 x1 =", cherednik_Y(1, x1))

# %% relations hold on every monomial of degree <= 3 in 3 variables
failing = {k: v for k, v in check_algebra_relations(3, 3).items() if v}
print("failing relations:", failing or "none")

# %% E_(1,0) and its eigenvalues
E = nonsym_macdonald((1, 0))
print(E.poly)
print("eigenvalues", [str(e) for e in E.eigenvalues])
for i in (1, 2):
    assert cherednik_Y(i, E.poly) == E.poly.scale(E.eigenvalues[i - 1])

# %% the intertwiner recursion agrees with solving the eigenproblem directly
eta = (2, 0, 1)
print(nonsym_macdonald(eta).poly == nonsym_macdonald_spectral(eta).poly)
