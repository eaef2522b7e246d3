from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from cdgakit import linalg
from cdgakit.cohomology import (
    CochainComplex,
    NotClosedError,
    betti_vector,
    class_of,
    cohomology_basis,
    cup,
    euler_characteristic,
    lefschetz_kernel,
    poincare_pairing,
    top_class_value,
)
from cdgakit.dsl import preset

# listed generators of H^k(N), beta -> b, gamma -> c, eta -> e
N_LISTING = {
    0: ["1"],
    1: ["b1", "b2", "c1", "c2"],
    2: ["b1^b2", "b1^c1", "b1^c2", "c1^c2", "b1^e2 - b2^e1", "c1^e2 - c2^e1",
        "b1^e1 + b1^e2 + b2^e2", "c1^e1 + c1^e2 + c2^e2"],
    3: ["b1^b2^e1", "b1^b2^e2", "c1^c2^e1", "c1^c2^e2", "b1^c1^e1 + 2 b1^c1^e2",
        "b1^c1^e2 - b1^c2^e1", "b1^c2^e1 - b1^c2^e2", "b2^c2^e2 + 2 b2^c2^e1",
        "b2^c2^e1 - b2^c1^e2", "b2^c1^e2 - b2^c1^e1"],
    4: ["b1^b2^c1^e1", "b1^b2^c1^e2", "b1^b2^e1^e2", "b1^c1^c2^e2", "b2^c1^c2^e2",
        "c1^c2^e1^e2", "b1^c2^e1^e2 - b2^c1^e1^e2",
        "b1^c2^e1^e2 + b1^c1^e1^e2 + b2^c2^e1^e2"],
    5: ["b1^b2^c1^e1^e2", "b1^b2^c2^e1^e2", "b1^c1^c2^e1^e2", "b2^c1^c2^e1^e2"],
    6: ["b1^b2^c1^c2^e1^e2"],
}


def _elt(src, text):
    if text == "1":
        return src.presentation.table.unit()
    return src.element(text)


def test_betti_n(cx_n):
    assert betti_vector(cx_n) == [1, 4, 8, 10, 8, 4, 1]


@pytest.mark.parametrize("k", range(7))
def test_listed_classes_of_n_form_a_basis(cx_n, src_n, k):
    forms = [_elt(src_n, t) for t in N_LISTING[k]]
    assert len(forms) == cx_n.betti(k)
    coords = [list(class_of(cx_n, f, k).coords) for f in forms]
    assert linalg.rank(coords) == cx_n.betti(k)


def test_betti_m_and_euler(cx_m):
    assert betti_vector(cx_m) == [1, 6, 17, 30, 36, 30, 17, 6, 1]
    assert euler_characteristic(cx_m) == 0


@pytest.mark.parametrize("name,n", [("T2", 2), ("T6", 6)])
def test_torus_betti_are_binomial(name, n):
    c = CochainComplex(preset(name).presentation)
    assert betti_vector(c) == [comb(n, k) for k in range(n + 1)]


def test_heisenberg_real_has_betti_of_n():
    c = CochainComplex(preset("heisenberg-real").presentation)
    assert betti_vector(c) == [1, 4, 8, 10, 8, 4, 1]


def test_exact_form_has_zero_class(cx_n, src_n):
    de1 = src_n.presentation.d_of("e1")
    assert class_of(cx_n, de1, 2).is_zero


def test_class_of_rejects_non_closed(cx_n, src_n):
    with pytest.raises(NotClosedError) as err:
        class_of(cx_n, src_n.element("e1"), 1)
    assert err.value.dz == src_n.presentation.d_of("e1")


def test_primitive(cx_n, src_n):
    w = src_n.element("-b1^c1 + b2^c1 + b1^c2 + 2 b2^c2")
    u = cx_n.primitive(w, 2)
    assert cx_n.d(u) == w
    assert cx_n.primitive(src_n.element("b1^b2"), 2) is None


def test_cup_is_graded_commutative(cx_n):
    h1 = cohomology_basis(cx_n, 1)
    for a in h1:
        for b in h1:
            assert cup(a, b).coords == tuple(-x for x in cup(b, a).coords)


def test_top_class_normalization(cx_n, src_n):
    vol = src_n.presentation.table.volume()
    assert top_class_value(class_of(cx_n, vol, 6)) == 1
    assert top_class_value(class_of(cx_n, -3 * vol, 6)) == -3


@pytest.mark.parametrize("k", [1, 2, 3])
def test_poincare_duality_on_n(cx_n, k):
    m = poincare_pairing(cx_n, k)
    assert linalg.rank(m) == cx_n.betti(k) == cx_n.betti(6 - k)


def test_t6_is_hard_lefschetz(cx_t6):
    src = preset("T6")
    w = class_of(cx_t6, src.element("omega"), 2)
    assert lefschetz_kernel(cx_t6, w, 1, 2) == []
    assert lefschetz_kernel(cx_t6, w, 2, 1) == []
    assert lefschetz_kernel(cx_t6, w, 2, 0) == []


def test_mhat_betti_and_listed_h3(mhat):
    assert betti_vector(mhat) == [1, 0, 13, 0, 26, 0, 13, 0, 1]
    assert cohomology_basis(mhat, 3) == []


def test_subcomplex_rejects_foreign_form(mhat, src_m):
    with pytest.raises(Exception):
        mhat.coords(src_m.element("a1^b1"), 2)


def test_lefschetz_failure_on_mhat(mhat, src_m):
    w = class_of(mhat, src_m.element("omega"), 2)
    kern = lefschetz_kernel(mhat, w, 2, 2)
    bb = class_of(mhat, src_m.element("b1^b2"), 2)
    assert kern
    assert linalg.in_span([list(h.coords) for h in kern], list(bb.coords))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=8, max_size=8), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_class_invariant_under_exact_perturbation(cx_n, z, u):
    h = cohomology_basis(cx_n, 2)
    rep = sum((Fraction(c) * b.representative for c, b in zip(z, h)), cx_n.table.zero())
    cls = class_of(cx_n, rep, 2)
    shift = cx_n.d(cx_n.element(u, 1))
    assert class_of(cx_n, rep + shift, 2).coords == cls.coords
    assert cls.coords == tuple(Fraction(c) for c in z)
