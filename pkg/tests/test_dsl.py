from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from cdgakit.dsl import ParseError, dumps, parse_element, parse_presentation, preset, serialize
from cdgakit.exterior import CdgaError
from cdgakit.scalars import QSqrt3

N_SOURCE = (Path(__file__).resolve().parents[1] / "src" / "cdgakit" / "data" / "N.cdga").read_text()

HEAD = """algebra X
generator b1 1
generator c1 1
generator e1 1
"""


def test_reference_source_gives_structure_equations():
    src = parse_presentation(N_SOURCE)
    p = src.presentation
    t = p.table
    b1, b2, c1, c2 = (t.gen(n) for n in ("b1", "b2", "c1", "c2"))
    assert p.d_of("e1") == -1 * (b1 * c1) + b2 * c1 + b1 * c2 + 2 * (b2 * c2)
    assert p.d_of("e2") == 2 * (b1 * c1) + b2 * c1 + b1 * c2 - b2 * c2
    assert not p.d_of("b1")


def test_self_wedge_is_accepted_as_zero():
    src = parse_presentation(HEAD + "d e1 = b1^b1\n")
    assert not src.presentation.d_of("e1")


def test_unknown_generator_is_located():
    with pytest.raises(ParseError) as err:
        parse_presentation(HEAD + "d e1 = q1^c1\n")
    e = err.value
    assert e.token == "q1"
    assert e.line == 5
    assert e.column == 8


def test_duplicate_generator():
    with pytest.raises(ParseError) as err:
        parse_presentation(HEAD + "generator c1 1\n")
    assert err.value.line == 5 and err.value.token == "c1"


def test_duplicate_differential():
    with pytest.raises(ParseError):
        parse_presentation(HEAD + "d e1 = b1^c1\nd e1 = 0\n")


def test_wrong_degree_differential():
    with pytest.raises(ParseError) as err:
        parse_presentation(HEAD + "d e1 = b1\n")
    assert "degree 2" in err.value.message


def test_d_squared_violation_is_a_parse_error():
    text = "generator x 1\ngenerator y 1\ngenerator z 1\ngenerator w 1\ngenerator t 1\n" \
           "d z = x^y\nd t = z^w\n"
    with pytest.raises(ParseError) as err:
        parse_presentation(text)
    assert err.value.token == "t" and err.value.line == 7


def test_unknown_statement():
    with pytest.raises(ParseError) as err:
        parse_presentation(HEAD + "frobnicate e1\n")
    assert err.value.line == 5 and err.value.column == 1


def test_comments_and_blank_lines():
    src = parse_presentation("# header\n\n" + HEAD + "d e1 = b1^c1  # trailing\n")
    assert src.presentation.d_of("e1").to_text() == "b1^c1"


def test_action_defaults_to_identity_on_unlisted_generators():
    src = parse_presentation(HEAD + "action s order 2\ns b1 = -b1\n")
    a = src.automorphism("s")
    t = src.presentation.table
    assert a(t.gen("b1")) == -t.gen("b1")
    assert a(t.gen("c1")) == t.gen("c1")


def test_parse_element_examples(src_m):
    t = src_m.presentation.table
    assert parse_element("b1^b2", src_m) == t.monomial("b1", "b2")
    assert not parse_element("0", src_m)
    sigma = parse_element("2 a1^c2 - a2^c1 + a1^c1 + a2^c2", src_m)
    assert sigma == 2 * t.monomial("a1", "c2") - t.monomial("a2", "c1") + t.monomial("a1", "c1") \
        + t.monomial("a2", "c2")
    assert parse_element("1/3 a1 - 2*a2", src_m).to_text() == "1/3*a1 - 2*a2"


def test_binding_names_resolve(src_m):
    assert src_m.element("theta") == src_m.element("b1^b2")


@pytest.mark.parametrize("name", ["N", "M", "T2", "T6"])
def test_round_trip(name):
    src = preset(name)
    again = parse_presentation(serialize(src))
    assert again.presentation == src.presentation
    assert serialize(again) == serialize(src)
    assert {k: v.images for k, v in again.actions.items()} == {k: v.images for k, v in src.actions.items()}


def test_surd_presentation_cannot_be_serialized():
    with pytest.raises(CdgaError):
        serialize(preset("heisenberg-real"))


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset("K3")


def test_m_preset_action():
    src = preset("M")
    a = src.automorphism("rho")
    assert a.order == 3
    assert a(src.element("e1")) == src.element("-e1 - e2")


def test_dumps_is_sorted_and_stable():
    from fractions import Fraction
    s = dumps({"b": Fraction(-1, 3), "a": [QSqrt3(1, 1)]})
    assert s.index('"a"') < s.index('"b"')
    assert '"-1/3"' in s
    assert s == dumps({"a": [QSqrt3(1, 1)], "b": Fraction(-1, 3)})


names = st.lists(st.sampled_from(["a1", "a2", "b1", "b2", "c1", "c2", "e1", "e2"]), min_size=1, max_size=3)


@given(names, names)
def test_wedge_matches_parsed_product(xs, ys):
    src = preset("M")
    x, y = "^".join(xs), "^".join(ys)
    assert parse_element(x, src) * parse_element(y, src) == parse_element(x + "^" + y, src)
