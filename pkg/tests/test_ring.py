import pytest
from hypothesis import given

from strategies import polys
from tatekoszul.errors import ParseError, PreconditionError
from tatekoszul.fixtures import e2_ring
from tatekoszul.ring import normal_form, poly_arith, ring_create

E2_RING = e2_ring()
F101_QUOT = ring_create({"char": 101, "vars": "x y z", "quotient": ["x*y - z^2"]})


def test_regular_ring_has_no_relations():
    R = ring_create({"char": 101, "vars": "x y"})
    assert R.gb == []
    assert R.p == 101 and R.names == ("x", "y")


def test_quotient_ring(E2):
    assert [E2.fmt(g) for g in E2.gb] == ["x*y"]
    assert E2.p == 2


def test_non_homogeneous_quotient_rejected():
    with pytest.raises(PreconditionError):
        ring_create({"char": 0, "vars": "x y", "quotient": ["x*y - 1"]})


@pytest.mark.parametrize(
    "spec",
    [
        "not json",
        {"char": 4, "vars": "x"},
        {"char": 0},
        {"char": 0, "vars": "x x"},
        {"char": 0, "vars": "x", "quotient": ["y"]},
    ],
)
def test_bad_ring_descriptions(spec):
    with pytest.raises((ParseError, PreconditionError)):
        ring_create(spec)


@pytest.mark.parametrize(
    "ring, text, expected",
    [
        ("E2", "x*y + x", "x"),
        ("E2", "x^2*y", "0"),
        ("Q1", "x^2 + 1", "x^2 + 1"),
    ],
)
def test_normal_form(ring, text, expected):
    R = E2_RING if ring == "E2" else ring_create({"char": 0, "vars": "x"})
    assert str(normal_form(text, R)) == expected


def test_poly_arith(Q2, E2):
    f, g = Q2("x + y"), Q2("x - y")
    assert poly_arith(f, g, "mul") == Q2("x^2 - y^2")
    assert poly_arith(E2("x"), E2("y"), "mul").is_zero()
    assert poly_arith(f, Q2("0"), "add") == f
    assert poly_arith(f, 3, "scale") == Q2("3*x + 3*y")


def test_parse_errors(Q2):
    for bad in ["x +", "(x", "z", "x^y", "x**"]:
        with pytest.raises(ParseError):
            Q2.parse(bad)


def test_ring_mismatch(Q2, E2):
    with pytest.raises(PreconditionError):
        Q2("x") + E2("x")


@given(polys(F101_QUOT), polys(F101_QUOT), polys(F101_QUOT))
def test_ring_axioms(a, b, c):
    R = F101_QUOT
    f, g, h = R(a), R(b), R(c)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f and f * g == g * f


@given(polys(F101_QUOT), polys(F101_QUOT))
def test_normal_form_is_multiplicative(a, b):
    R = F101_QUOT
    raw = R.mul_raw(R.parse(a), R.parse(b))
    assert R.nf(raw) == R.nf(R.mul_raw(R.nf(R.parse(a)), R.nf(R.parse(b))))


@given(polys(F101_QUOT), polys(F101_QUOT))
def test_canonical_forms(a, b):
    # adding a multiple of the relation never changes the normal form
    R = F101_QUOT
    f = R.parse(a)
    shifted = R.add(f, R.mul_raw(R.parse(b), R.parse("x*y - z^2")))
    assert R.nf(shifted) == R.nf(f)
    assert R.fmt(R.nf(shifted)) == R.fmt(R.nf(f))


@given(polys(F101_QUOT))
def test_format_parse_roundtrip(a):
    R = F101_QUOT
    f = R.nf(R.parse(a))
    assert R.nf(R.parse(R.fmt(f))) == f


def test_rational_coefficients():
    R = ring_create({"char": 0, "vars": "x"})
    assert R("x/2 + x/2") == R("x")
    assert str(R("1/3*x")) == "1/3*x"
