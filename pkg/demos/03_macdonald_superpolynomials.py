# %% Macdonald superpolynomials: construction and properties
from supermac import SuperPartition, enumerate_superpartitions, macdonald_super
from supermac.macdonald import conjectured_norm, duality_check, eigen_check, norm_check, orthogonality_failures
from supermac.superpoly import inner_qt

P = macdonald_super("1;")
for om, c in P.expansion.coeffs.items():
    print(f"  m_{om}: {c}")

# %% orthogonality in degree (3|1)
print("non-orthogonal pairs:", orthogonality_failures(3, 1))
Ps = [macdonald_super(lam).expansion for lam in enumerate_superpartitions(3, 1)]
print("<P_0, P_1> =", inner_qt(Ps[0], Ps[1]))

# %% norms against the hook formula
for lam in enumerate_superpartitions(2, 1):
    computed, expected, ok = norm_check(lam)
    print(lam, ok, computed)
print(conjectured_norm(SuperPartition.parse("0;1")))

# %% eigenoperators; the E2 value summed over bosonic rows only misses the fermionic rows
rep = eigen_check("0;1", e2_formula="stated")
print("stated:", rep.results)
print("derived:", eigen_check("0;1").results)

# %% duality
print(all(duality_check(lam) for lam in enumerate_superpartitions(3, 2)))
