from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cdgakit import linalg
from cdgakit.action import reynolds
from cdgakit.cohomology import CochainComplex, class_of, cohomology_basis, top_class_value
from cdgakit.dsl import parse_presentation, preset
from cdgakit.massey import (
    INCONCLUSIVE,
    NONTRIVIAL,
    TRIVIAL,
    PreconditionError,
    UndefinedProductError,
    certify_quadruple_nontrivial,
    defining_system,
    formality_verdict,
    gmassey,
    lemma25_witness,
    quadruple_value,
    scan_triple_products,
    triple_massey,
)

HEIS = parse_presentation("algebra H\ngenerator x 1\ngenerator y 1\ngenerator z 1\nd z = x^y\n")


@pytest.fixture(scope="module")
def heis():
    return CochainComplex(HEIS.presentation)


def test_heisenberg_triple_product_is_nontrivial(heis):
    x, y = HEIS.element("x"), HEIS.element("y")
    t = triple_massey(heis, x, x, y)
    assert t.eta == HEIS.element("z")
    assert t.value.representative == HEIS.element("x^z")
    assert t.indeterminacy == []
    assert t.verdict == NONTRIVIAL


def test_undefined_triple_product_names_the_equation(heis):
    x, z = HEIS.element("x"), HEIS.element("x^z")
    with pytest.raises(UndefinedProductError) as err:
        triple_massey(heis, x, z, HEIS.element("y"))
    assert err.value.equation == (2, 3)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_triple_value_moves_inside_indeterminacy(cx_n, cs):
    h1 = cohomology_basis(cx_n, 1)
    base = scan_triple_products(cx_n, (1, 1, 1))[0]
    closed = [h.representative for h in h1]
    dxi = sum((Fraction(c) * f for c, f in zip(cs[:2], closed)), cx_n.table.zero())
    deta = sum((Fraction(c) * f for c, f in zip(cs[2:], closed[2:])), cx_n.table.zero())
    moved = triple_massey(cx_n, *base.forms, primitives=(base.xi + dxi, base.eta + deta))
    diff = [u - v for u, v in zip(moved.value.coords, base.value.coords)]
    assert linalg.Echelon(base.indeterminacy).contains(diff)
    assert moved.verdict == base.verdict


def test_t6_has_no_triple_obstruction(cx_t6):
    reports = scan_triple_products(cx_t6, (1, 1, 1))
    assert reports
    assert all(r.verdict == TRIVIAL for r in reports)
    assert formality_verdict(reports) == "no obstruction found"
    assert formality_verdict([]) == "no obstruction found"


def test_quadruple_certificate_on_mhat(mhat, src_m):
    b = src_m.bindings
    classes = [b["tau2"], b["theta"], b["theta"], b["tau3"]]
    cert = certify_quadruple_nontrivial(mhat, classes, b["sigma"])
    assert cert.sigma_psi == Fraction(-1, 3)
    assert cert.verdict == NONTRIVIAL
    assert formality_verdict([cert]) == "non-formal"
    s = cert.system
    for (i, j) in ((1, 2), (2, 3), (3, 4), (1, 3), (2, 4)):
        assert not s.defect(mhat, i, j)


def test_quadruple_with_zero_sigma_is_inconclusive(mhat, src_m):
    b = src_m.bindings
    zero = src_m.presentation.table.zero()
    cert = certify_quadruple_nontrivial(mhat, [b["tau2"], b["theta"], b["theta"], b["tau3"]], zero)
    assert cert.sigma_psi == 0
    assert cert.verdict == INCONCLUSIVE


def test_quadruple_of_torus_classes(cx_t6):
    src = preset("T6")
    x1 = src.element("x1")
    classes = [x1, x1, x1, x1]
    s = defining_system(cx_t6, classes)
    assert all(not v for k, v in s.alpha.items() if k[0] != k[1])
    assert quadruple_value(cx_t6, s).is_zero
    cert = certify_quadruple_nontrivial(cx_t6, classes, src.element("x2"))
    assert cert.verdict == INCONCLUSIVE


def test_undefined_quadruple(cx_t6):
    src = preset("T6")
    with pytest.raises(UndefinedProductError) as err:
        defining_system(cx_t6, [src.element(v) for v in ("x1", "x2", "x3", "x4")])
    assert err.value.equation == (1, 2)


def test_gmassey_on_mhat(mhat, src_m):
    b = src_m.bindings
    g = gmassey(mhat, b["theta"], b["tau1"], b["tau2"], b["tau3"])
    assert g.value_top == Fraction(-4, 3)
    assert g.w_basis == []
    assert g.verdict == NONTRIVIAL


def test_gmassey_with_listed_primitives(mhat, src_m):
    b = src_m.bindings
    g = gmassey(mhat, b["theta"], b["tau1"], b["tau2"], b["tau3"], primitives=[b["kappa"], b["xi"], b["varsigma"]])
    assert g.value_top == Fraction(-4, 3)


def test_gmassey_of_zero_is_trivial(mhat, src_m):
    b = src_m.bindings
    zero = src_m.presentation.table.zero()
    g = gmassey(mhat, zero, b["tau1"], b["tau2"], b["tau3"])
    assert g.verdict == TRIVIAL
    assert g.value_top == 0


def test_gmassey_undefined(mhat, src_m):
    b = src_m.bindings
    with pytest.raises(UndefinedProductError):
        gmassey(mhat, src_m.element("a1^a2"), src_m.element("c1^c2"), b["tau2"], b["tau3"])


@settings(max_examples=10, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=16, max_size=16), min_size=3, max_size=3))
def test_gmassey_stable_under_primitive_perturbation(mhat, src_m, shifts):
    b = src_m.bindings
    base = gmassey(mhat, b["theta"], b["tau1"], b["tau2"], b["tau3"])
    prims = [xi + mhat.d(mhat.element(s, 2)) for xi, s in zip(base.primitives, shifts)]
    g = gmassey(mhat, b["theta"], b["tau1"], b["tau2"], b["tau3"], primitives=prims)
    assert g.value_top == base.value_top


def test_gmassey_transfers_to_m(mhat, src_m, cx_m):
    b = src_m.bindings
    a = src_m.automorphism("rho")
    xis = [reynolds(a, cx_m.primitive(b["theta"] * b[t], 4)) for t in ("tau1", "tau2", "tau3")]
    b1, b2, b3 = b["tau1"], b["tau2"], b["tau3"]
    rep = xis[0] * xis[1] * b3 + xis[1] * xis[2] * b1 + xis[2] * xis[0] * b2
    assert top_class_value(class_of(cx_m, rep, 8)) == Fraction(-4, 3)


def test_lemma25_identity(mhat, src_m):
    b = src_m.bindings
    r = lemma25_witness(mhat, b["theta"], b["tau1"], b["tau2"], b["tau3"])
    assert not r.chi
    assert r.passed
    assert r.lhs == r.rhs


def test_lemma25_zero_inputs(mhat, src_m):
    z = src_m.presentation.table.zero()
    r = lemma25_witness(mhat, z, z, z, z)
    assert r.passed and not r.lhs


def test_lemma25_needs_h5_zero(cx_m, src_m):
    b = src_m.bindings
    with pytest.raises(PreconditionError):
        lemma25_witness(cx_m, b["theta"], b["tau1"], b["tau2"], b["tau3"])


def test_even_triples_on_mhat_trivial(mhat):
    h2 = cohomology_basis(mhat, 2)
    for x in h2[:4]:
        for y in h2[:4]:
            for z in h2[:4]:
                try:
                    t = triple_massey(mhat, x, y, z)
                except UndefinedProductError:
                    continue
                assert t.verdict == TRIVIAL
