# %% Superpartitions, diagrams and the two bases
from supermac import BasisExpansion, SuperPartition, enumerate_superpartitions, to_basis
from supermac.combinat import dominance_leq, hooks_updown
from supermac.qt import ONE
from supermac.superpoly import monomial, powersum

lam = SuperPartition.parse("3,1,0;2,1")
print(lam, "degree", lam.degree)
print("circled diagram", lam.circ(), "starred diagram", lam.star())
print("conjugate", lam.conjugate())

# %% enumeration follows the table order
for n, m in [(1, 1), (2, 1), (2, 2)]:
    print((n, m), [str(x) for x in enumerate_superpartitions(n, m)])

print(dominance_leq(SuperPartition.parse("0;2,1"), SuperPartition.parse("1;2")))

# %% monomials and power sums in two variables
L = SuperPartition.parse("0;1")
print("m =", monomial(L, 2))
print("p =", powersum(L, 2))
print("m in p:", to_basis(BasisExpansion("m", L.degree, {L: ONE}), "p").coeffs)

# %% up and down hook products
print(hooks_updown(SuperPartition.parse("0;1")))
print(hooks_updown(SuperPartition.parse("1,0;2,1")))
