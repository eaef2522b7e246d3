from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from cdgakit.dsl import preset, PRESETS
from cdgakit.exterior import (
    CdgaError,
    CdgaPresentation,
    GeneratorTable,
    GradedElement,
    bar,
    basis_of_degree,
    check_d_squared,
    differential,
    merge_monomials,
)
from cdgakit.scalars import QSqrt3

TABLE = GeneratorTable(("b1", "b2", "c1", "c2", "e1", "e2"))


@st.composite
def forms(draw, degree=None, table=TABLE):
    k = draw(st.integers(0, 3)) if degree is None else degree
    monos = basis_of_degree(table, k)
    picks = draw(st.lists(st.sampled_from(monos), max_size=4)) if monos else []
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(picks), max_size=len(picks)))
    terms = {}
    for m, c in zip(picks, coeffs):
        terms[m] = terms.get(m, 0) + c
    return GradedElement(table, terms), k


def test_merge_sign_counts_inversions():
    assert merge_monomials((0,), (1,)) == (1, (0, 1))
    assert merge_monomials((1,), (0,)) == (-1, (0, 1))
    assert merge_monomials((0, 2), (1,)) == (-1, (0, 1, 2))
    assert merge_monomials((0,), (0,)) == (0, None)


def test_wedge_of_generator_with_itself_vanishes():
    b1 = TABLE.gen("b1")
    assert not (b1 * b1)


def test_to_text_is_canonical():
    x = 2 * TABLE.monomial("b2", "c2") - TABLE.monomial("b1", "c1")
    assert x.to_text() == "-b1^c1 + 2*b2^c2"


@given(forms(), forms())
def test_graded_commutativity(xa, yb):
    (x, p), (y, q) = xa, yb
    assert x * y == (-1) ** (p * q) * (y * x)


@given(forms(), forms(), forms())
def test_wedge_associative(xa, yb, zc):
    x, y, z = xa[0], yb[0], zc[0]
    assert (x * y) * z == x * (y * z)


@given(forms(), forms())
def test_leibniz_on_n(xa, yb):
    p = preset("N").presentation
    (x, k), (y, _) = xa, yb
    lhs = differential(p, x * y)
    rhs = differential(p, x) * y + (-1) ** k * (x * differential(p, y))
    assert lhs == rhs


@given(forms())
def test_d_squared_zero_on_random_forms(xa):
    p = preset("N").presentation
    assert not differential(p, differential(p, xa[0]))


@pytest.mark.parametrize("name", PRESETS)
def test_presets_pass_d_squared(name):
    assert check_d_squared(preset(name).presentation).passed


def test_bar_sign():
    x = TABLE.monomial("b1", "c1", "e1")
    assert bar(x) == -x
    assert bar(TABLE.monomial("b1", "c1")) == TABLE.monomial("b1", "c1")


def test_basis_sizes_are_binomial():
    for k in range(7):
        assert len(basis_of_degree(TABLE, k)) == comb(6, k)


def test_degree_of_inhomogeneous_raises():
    x = TABLE.gen("b1") + TABLE.monomial("b1", "b2")
    assert x.degrees() == {1, 2}
    with pytest.raises(CdgaError):
        x.degree


def test_d_squared_failure_is_reported():
    t = GeneratorTable(("x", "y", "z", "w", "t"))
    diffs = [t.zero(), t.zero(), t.monomial("x", "y"), t.zero(), t.monomial("z", "w")]
    p = CdgaPresentation(t, diffs, check=False)
    rep = check_d_squared(p)
    assert not rep.passed
    assert rep.failures == ["t"]
    assert rep.values["t"] == t.monomial("x", "y", "w")
    with pytest.raises(CdgaError):
        CdgaPresentation(t, diffs)


def test_degree_three_differential_rejected():
    t = GeneratorTable(("x", "y", "z", "w"))
    with pytest.raises(CdgaError):
        CdgaPresentation(t, [t.zero(), t.zero(), t.zero(), t.monomial("x", "y", "z")])


def test_heisenberg_real_structure_equations():
    p = preset("heisenberg-real").presentation
    t = p.table
    mu1, mu2, nu1, nu2 = (t.gen(n) for n in ("mu1", "mu2", "nu1", "nu2"))
    assert p.d_of("th1") == mu1 * nu1 - mu2 * nu2
    assert p.d_of("th2") == mu1 * nu2 + mu2 * nu1
    coeffs = {c for x in p.differentials for c in x.terms.values()}
    assert coeffs <= {Fraction(1), Fraction(-1), QSqrt3(1, 0), QSqrt3(-1, 0)}


def test_m_action_on_eta():
    a = preset("M").automorphism("rho")
    t = a.presentation.table
    assert a(t.gen("e1")) == -t.gen("e1") - t.gen("e2")
    assert a(t.gen("e2")) == t.gen("e1")
