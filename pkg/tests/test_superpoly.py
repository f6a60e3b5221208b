import pytest
from hypothesis import given
from hypothesis import strategies as st

from supermac.combinat import SuperPartition, enumerate_superpartitions
from supermac.qt import ONE, Q, T, RationalQT
from supermac.superpoly import (
    BasisExpansion,
    NotSymmetric,
    SuperPolynomial,
    apply_hom,
    expand_monomial,
    inner_qt,
    monomial,
    powersum,
    to_basis,
    to_polynomial,
)

P = SuperPartition.parse
th1, th2 = SuperPolynomial.theta(2, 1), SuperPolynomial.theta(2, 2)
x1, x2 = SuperPolynomial.x(2, 1), SuperPolynomial.x(2, 2)


def m_(label, c=ONE):
    lam = P(label)
    return BasisExpansion("m", lam.degree, {lam: c})


def test_grassmann_signs():
    assert th2 * th1 == (th1 * th2).scale(-1)
    assert (th1 * th1).is_zero()
    assert (th1 * x2) * (th2 * x1) == th1 * th2 * x1 * x2


def test_permutation_action():
    assert x1.act((2, 1)) == x2
    assert (th1 * x1).act((2, 1)) == th2 * x2
    assert (th1 * th2).act((2, 1)) == (th1 * th2).scale(-1)


def test_monomials():
    assert monomial(P("0;1"), 2) == th1 * x2 + th2 * x1
    assert monomial(P("1;"), 2) == th1 * x1 + th2 * x2
    assert monomial(P(";2"), 2) == x1 * x1 + x2 * x2


def test_powersums():
    assert powersum(P("0;"), 2) == th1 + th2
    assert powersum(P("0;1"), 2) == (th1 + th2) * (x1 + x2)
    assert expand_monomial(powersum(P("0;1"), 2)).coeffs == {P("0;1"): ONE, P("1;"): ONE}


def test_not_symmetric():
    with pytest.raises(NotSymmetric):
        expand_monomial(x1 - x2)


def test_basis_change():
    assert to_basis(m_("1;"), "p").coeffs == {P("1;"): ONE}
    assert to_basis(m_("0;1"), "p").coeffs == {P("0;1"): ONE, P("1;"): -ONE}
    assert to_basis(m_(";"), "p").coeffs == {P(";"): ONE}


@pytest.mark.parametrize("n, m", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_basis_change_round_trip(n, m):
    for lam in enumerate_superpartitions(n, m):
        back = to_basis(to_basis(m_(str(lam)), "p"), "m")
        assert back.coeffs == {lam: ONE}


def test_polynomial_round_trip():
    f = BasisExpansion("m", (2, 1), {P("1;1"): Q, P("0;2"): T - 1})
    assert expand_monomial(to_polynomial(f, 3)).coeffs == f.coeffs


def test_homomorphisms():
    p12 = BasisExpansion("p", (3, 1), {P("1;2"): ONE})
    expected = Q * (1 - Q * Q) / (1 - T * T)
    assert apply_hom("Omega_qt", p12).coeffs == {P("1;2"): expected}
    p01 = BasisExpansion("p", (1, 1), {P("0;1"): ONE})
    assert apply_hom("omega", p01).coeffs == {P("0;1"): ONE}
    p02 = BasisExpansion("p", (2, 1), {P("2;"): ONE})
    assert apply_hom("phi", p02).coeffs == {P("2;"): ONE}


coeff = st.sampled_from([ONE, Q, T, 1 - Q * T, (1 - Q) / (1 - T), RationalQT(-3)])


@given(coeff, coeff, coeff)
def test_inner_product_bilinear(a, b, c):
    f = BasisExpansion("m", (2, 1), {P("1;1"): a, P("0;2"): b})
    g = BasisExpansion("m", (2, 1), {P("2;"): c, P("0;1,1"): ONE})
    h = BasisExpansion("m", (2, 1), {P("1;1"): b})
    lhs = inner_qt(f.scale(c), g)
    assert lhs == c * inner_qt(f, g)
    summed = BasisExpansion("m", (2, 1), {k: f.coeffs.get(k, 0) + h.coeffs.get(k, 0) for k in f.coeffs.keys() | h.coeffs.keys()})
    assert inner_qt(summed, g) == inner_qt(f, g) + inner_qt(h, g)


def test_inner_product_on_powersums():
    # <p_L, p_L> is diagonal with weight (-1)^{C(m,2)} z_L(q,t)
    a, b = P("0;1"), P("1;")
    pa = BasisExpansion("p", (1, 1), {a: ONE})
    pb = BasisExpansion("p", (1, 1), {b: ONE})
    assert inner_qt(pa, pb).is_zero()
    assert inner_qt(pa, pa) == (1 - Q) / (1 - T)
    assert inner_qt(pb, pb) == Q
