import pytest
from hypothesis import given
from hypothesis import strategies as st

from tatekoszul.complexes import induced_map
from tatekoszul.fixtures import d2_spec, d3_spec, e2_ring, e2_spec, regular_spec
from tatekoszul.koszul import KoszulSpec, kappa_on, koszul
from tatekoszul.modules import FPModule, Ideal
from tatekoszul.ring import ring_create
from tatekoszul.tate import (
    Exponents,
    comparison_maps,
    compute_h,
    exponents,
    phi_construct,
    tate_comparison,
    tate_resolution,
    xi_construct,
)


def test_regular_sequence_needs_nothing():
    T = tate_resolution(regular_spec(), 4)
    assert T.t == [0] * 5
    assert T.is_koszul()


def test_e2_periodic_tail():
    T = tate_resolution(e2_spec(), 5)
    assert T.t == [0, 0, 1, 1, 1, 1]
    assert [T.complex.diff(m).row_strings() for m in range(1, 6)] == [[["x"]], [["y"]], [["x"]], [["y"]], [["x"]]]
    assert all(T.verify().values())


def test_e2_square_exponent():
    T = tate_resolution(e2_spec(2), 3)
    assert T.adjoined[2] == 1
    assert T.complex.diff(2).row_strings() == [["y"]]
    assert T.complex.diff(1).row_strings() == [["x^2"]]


@pytest.mark.parametrize("spec", [e2_spec(), d2_spec(), d3_spec()], ids=["E2", "d2", "d3"])
def test_tate_properties(spec):
    T = tate_resolution(spec, spec.d + 2)
    assert all(T.verify().values())
    assert T.inclusion().is_chain_map()


def test_compute_h_examples():
    assert compute_h(regular_spec())["h"] == 0
    assert compute_h(e2_spec())["h"] == 1
    R = ring_create({"char": 0, "vars": "x", "quotient": ["x^3"]})
    assert compute_h(KoszulSpec(R, ["x"]))["h"] == 3


def test_phi_e2_search_and_formula():
    w = phi_construct(e2_spec(), 1, "search")
    assert w.u == 2 and w.ok
    assert w.phi.comp(1).row_strings() == [["x"]]
    assert w.phi.comp(0).row_strings() == [["1"]]
    p = phi_construct(e2_spec(), 1, "paper_bound")
    assert p.u == 3 and p.ok
    assert p.u == p.exponents.u(1)


@pytest.mark.parametrize("spec", [e2_spec(), regular_spec(), d2_spec(), d3_spec()], ids=["E2", "regular", "d2", "d3"])
def test_search_never_beats_formula(spec):
    s = phi_construct(spec, 1, "search")
    p = phi_construct(spec, 1, "paper_bound")
    assert s.ok and p.ok
    assert s.u <= p.u


@given(st.integers(0, 5), st.integers(0, 4), st.integers(1, 4), st.integers(0, 5), st.integers(1, 5))
def test_q_recursion_has_closed_form(h, l, d, i, r):
    e = Exponents(l, h, d)
    assert e.q_iter(i, r) == e.q_closed(i, r)


@pytest.mark.parametrize("r", [1, 2])
def test_u_formula_examples(r):
    e = Exponents(1, 1, 2)
    assert e.u(r) == 2 * 3 + 4 * r
    assert e.w(r) == e.u(1 + 2 * r)
    assert Exponents(0, 0, 1).u(r) == r


@pytest.mark.parametrize("spec", [e2_spec(), d2_spec()], ids=["E2", "d2"])
@pytest.mark.parametrize("r", [1, 2])
def test_comparison_map_kills_koszul_homology(spec, r):
    e = exponents(spec)
    u = e.u(r)
    Ku, Kr = koszul(spec.with_exponent(u)), koszul(spec.with_exponent(r))
    k = kappa_on(spec.ring, spec.elements, u, r, Ku, Kr, spec.module.ambient.rank)
    for i in range(1, spec.d + 1):
        assert induced_map(k, i).is_zero()


def test_tate_comparison_restricts_to_kappa():
    T3 = tate_resolution(e2_spec(3), 4)
    T1 = tate_resolution(e2_spec(1), 4)
    f = tate_comparison(T3, T1)
    assert f.is_chain_map()
    assert f.comp(1).row_strings() == [["x^2"]]


def test_xi_is_natural():
    x = xi_construct(e2_spec(), 1)
    rec = x.record()
    assert rec["chain_map"] and rec["h0_natural"]
    assert x.u == 2


def test_comparison_maps_against_zero_module():
    R = e2_ring()
    zero = FPModule.quotient_ring(Ideal(R, ["1"]))
    out = comparison_maps(e2_spec(), 1, zero)
    assert all(out["tor_zero"].values()) and all(out["ext_zero"].values())


def test_comparison_maps_residue_field():
    R = e2_ring()
    k = FPModule.quotient_ring(Ideal(R, ["x", "y"]))
    out = comparison_maps(e2_spec(), 1, k)
    assert set(out["tor_zero"]) == {1}
    assert out["witness"].ok
