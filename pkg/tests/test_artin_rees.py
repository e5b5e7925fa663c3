import pytest

from tatekoszul.artin_rees import (
    koszul_tor_roundtrip,
    minimal_tor_offset,
    module_dims,
    padded_resolution,
    syzygetic_ar_check,
    tor,
    tor_map,
    tor_map_vanishing,
    uniform_w,
)
from tatekoszul.complexes import homology
from tatekoszul.errors import PreconditionError
from tatekoszul.fixtures import d2_spec, e2_module, e2_ring, e2_spec
from tatekoszul.modules import FPModule, Ideal
from tatekoszul.resolution import min_free_resolution
from tatekoszul.ring import ring_create

Q1 = ring_create({"char": 0, "vars": "x"})


def quo(R, gens):
    return FPModule.quotient_ring(Ideal(R, gens))


def test_tor_of_transverse_quotients(Q2):
    assert module_dims(tor(quo(Q2, ["x"]), quo(Q2, ["y"]), 1), range(4)) == [0] * 4
    assert module_dims(tor(quo(Q2, ["x"]), quo(Q2, ["y"]), 0), range(4)) == [1, 0, 0, 0]


def test_tor_self_intersection():
    assert module_dims(tor(quo(Q1, ["x"]), quo(Q1, ["x"]), 1), range(4)) == [0, 1, 0, 0]


@pytest.mark.parametrize("i", [1, 2, 3])
def test_tor_methods_agree_with_betti_numbers(i):
    # the residue field over k[x,y]/(xy) has Betti numbers 1, 2, 2, 2, ...
    E = e2_ring()
    k = quo(E, ["x", "y"])
    expect = [2 if t == i else 0 for t in range(6)]
    assert module_dims(tor(k, k, i), range(6)) == expect
    assert module_dims(tor(k, k, i, "syzygy_formula"), range(6)) == expect


def test_tor_bad_inputs(Q2):
    with pytest.raises(PreconditionError):
        tor(quo(Q2, ["x"]), quo(Q2, ["y"]), -1)
    with pytest.raises(PreconditionError):
        tor(quo(Q2, ["x"]), quo(Q2, ["y"]), 0, "syzygy_formula")
    with pytest.raises(PreconditionError):
        tor_map(Ideal(Q2, ["x"]), Ideal(Q2, ["x^2"]), quo(Q2, ["y"]), 1)


def test_tor_map_offset_example():
    M = quo(Q1, ["x^3"])
    I = Ideal(Q1, ["x"])
    flags = [tor_map_vanishing(I, M, 1, 1, h).is_zero for h in range(6)]
    assert flags == [False, False, False, True, True, True]
    assert minimal_tor_offset(I, M, 1, 1) == 3
    assert minimal_tor_offset(I, M, 1, 2) == 3


@pytest.mark.parametrize("r", [1, 2])
def test_tor_map_vanishing_is_monotone(r):
    M = quo(Q1, ["x^2"])
    I = Ideal(Q1, ["x"])
    h0 = minimal_tor_offset(I, M, 1, r)
    assert all(tor_map_vanishing(I, M, 1, r, h).is_zero for h in range(h0, h0 + 3))


@pytest.mark.parametrize("r, w", [(1, 4), (2, 5)])
def test_uniform_w_on_e2(r, w):
    out = uniform_w(e2_spec(), r)
    assert out["w"] == w == r + 3
    assert out["verified_on_window"]


def test_syzygetic_check_ignores_padding():
    E = e2_ring()
    M = quo(E, ["y"])
    I = Ideal(E, ["x"])
    assert syzygetic_ar_check(I, M, 2, [1, 2])["h"] == 1
    P = min_free_resolution(M, 3).complex
    padded = padded_resolution(P, 1)
    assert homology(padded, 1).is_zero()
    assert syzygetic_ar_check(I, M, 2, [1, 2], resolution=padded)["h"] == 1


@pytest.mark.parametrize("spec", [e2_spec(), d2_spec()], ids=["E2", "d2"])
def test_koszul_tor_roundtrip(spec):
    out = koszul_tor_roundtrip(spec, 1, 1)
    assert out["ok"]
    assert out["forward"]["composite_is_kappa"]
    assert out["backward"]["tor_map_zero"]


@pytest.mark.parametrize("r, w", [(1, 12), (2, 20)])
def test_uniform_w_two_elements(r, w):
    # regular ring side: h = l = 0, so w(r) = (h_M + 2r) * 4
    out = uniform_w(d2_spec(), r, i_window=range(1, 5))
    assert out["h_module"] == 1
    assert out["w"] == w == (1 + 2 * r) * 4
    assert out["verified_on_window"]


def test_syzygetic_window_on_e2():
    E = e2_ring()
    out = syzygetic_ar_check(Ideal(E, ["x"]), e2_module(), 4, range(1, 5))
    assert out["h"] == 1 and out["status"] == "holds on window"
