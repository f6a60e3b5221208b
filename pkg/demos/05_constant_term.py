# %% The constant-term scalar product as truncated q-series
from supermac import ct, nonsym_macdonald
from supermac.superpoly import SuperPolynomial

K = 8
one = SuperPolynomial.constant(2, 1)
base = ct.ct_inner(one, one, K)
print("<1,1> =", base)

# %% at t = 0 this is 1/(q;q)_inf: the partition numbers appear
print([int(c.subs(t=0).evaluate(0, 0)) for _, c in sorted(ct.weight_coefficient((0, 0), K).coeffs.items())])

# %% E-norms and orthogonality
print(nonsym_macdonald((1, 0)).poly)
print("<E,E>/<1,1> matches the closed form:", ct.e_norm_check((1, 0), K))
print("non-orthogonal pairs:", ct.e_orthogonality_check(2, 3, K))

# %% superspace: orthogonality and the finite-N ratio
print(ct.super_ct_check(2, 1, 3, K))
# for two or more fermions the ratio carries an extra (-t)^{-C(m,2)}
print(ct.super_ct_check(2, 2, 3, 6))

# %% three expressions for the limiting norm ratio agree
print(ct.three_way_norm_check("2,0;4,1")["pass"])
print(ct.worked_variation_check())

# %% reproducing kernel identities, exact through x-degree 3
print(ct.kernel_checks(3, 2))
