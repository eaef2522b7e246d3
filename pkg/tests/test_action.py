from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cdgakit.action import (
    AlgebraAutomorphism,
    DegenerateActionError,
    LatticeAction,
    fixed_point_count,
    invariant_cohomology_dimension,
    invariant_dimensions,
    invariant_subcomplex,
    isotypic_multiplicities,
    quotient_euler,
    resolution_betti2,
    reynolds,
    verify_automorphism,
)
from cdgakit.cohomology import CochainComplex, betti_vector
from cdgakit.dsl import parse_presentation, preset
from cdgakit.exterior import CdgaError

ROT = ((-1, -1), (1, 0))


def test_rho_is_an_order_three_chain_automorphism(src_m):
    assert verify_automorphism(src_m.automorphism("rho")).passed


def test_non_chain_map_is_reported(src_m):
    t = src_m.presentation.table
    images = list(t.gens())
    images[t.index("b1")], images[t.index("b2")] = t.gen("b2"), t.gen("b1")
    rep = verify_automorphism(AlgebraAutomorphism(src_m.presentation, images, 2))
    assert not rep.passed
    assert {g for g, _, _ in rep.chain_map_failures} == {"e1", "e2"}


def test_wrong_order_is_reported(src_m):
    a = src_m.automorphism("rho")
    rep = verify_automorphism(AlgebraAutomorphism(a.presentation, a.images, 2))
    assert rep.order_failures


def test_invariant_dims_of_m(src_m):
    assert invariant_dimensions(src_m.automorphism("rho")) == [1, 0, 16, 8, 36, 8, 16, 0, 1]


def test_isotypic_split_matches_model(src_m):
    a = src_m.automorphism("rho")
    pairs = [isotypic_multiplicities(a, k) for k in range(9)]
    assert pairs == [(1, 0), (0, 4), (16, 6), (8, 24), (36, 17), (8, 24), (16, 6), (0, 4), (1, 0)]


def test_t2_invariants_and_h1():
    a = preset("T2").automorphism("rho")
    assert invariant_dimensions(a) == [1, 0, 1]
    assert isotypic_multiplicities(a, 1) == (0, 1)


def test_invariant_cohomology_two_ways(src_m, cx_m, mhat):
    a = src_m.automorphism("rho")
    via_action = [invariant_cohomology_dimension(a, cx_m, k) for k in range(9)]
    assert via_action == betti_vector(mhat)


def test_invariant_subcomplex_rejects_broken_action(src_m):
    t = src_m.presentation.table
    images = list(t.gens())
    images[0] = t.gen("e1")
    with pytest.raises(CdgaError):
        invariant_subcomplex(AlgebraAutomorphism(src_m.presentation, images, 3))


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.lists(st.integers(-2, 2), min_size=70, max_size=70))
def test_reynolds_idempotent_and_chain_map(src_m, cx_m, k, coeffs):
    a = src_m.automorphism("rho")
    x = cx_m.element(coeffs[: cx_m.dim(k)], k)
    r = reynolds(a, x)
    assert reynolds(a, r) == r
    assert a(r) == r
    assert cx_m.d(r) == reynolds(a, cx_m.d(x))


def test_fixed_points_base_and_fiber():
    assert fixed_point_count(LatticeAction(ROT)) == 3
    fiber = LatticeAction(ROT, basis=((1, 3), (1, 0)))
    assert fiber.in_lattice_coordinates() is not None
    assert fixed_point_count(fiber) == 3


def test_fixed_points_of_order_two_and_four():
    assert fixed_point_count(LatticeAction(((-1, 0), (0, -1)))) == 4
    assert fixed_point_count(LatticeAction(((0, -1), (1, 0)))) == 2


def test_degenerate_action():
    with pytest.raises(DegenerateActionError):
        fixed_point_count(LatticeAction(((1, 0), (0, -1))))


def test_lattice_not_preserved():
    with pytest.raises(CdgaError):
        LatticeAction(((1, 1), (0, 1)), basis=((1, 3), (1, 0))).in_lattice_coordinates()


def test_quotient_euler_and_resolution():
    assert quotient_euler(0, 3, [3] * 81) == 54
    assert quotient_euler(0, 3, [3] * 3) == 2  # T^2 / Z_3 is a sphere
    assert resolution_betti2(13, 81) == 256
