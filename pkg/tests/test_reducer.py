import pytest

from tatekoszul.complexes import ChainMap, Complex, cone, direct_sum, homology, shift, width_stats
from tatekoszul.efpd import FiltrationSpec
from tatekoszul.errors import PreconditionError
from tatekoszul.fixtures import random_torsion_complex
from tatekoszul.koszul import koszul_complex
from tatekoszul.modules import FreeModule, Ideal, ModMap
from tatekoszul.reducer import charp_reducer, homology_in_support, strong_reducer, width_reduce
from tatekoszul.resolution import resolve_quotient
from tatekoszul.ring import ring_create

R = ring_create({"char": 101, "vars": "x y"})
F2 = ring_create({"char": 2, "vars": "x y"})
MAX = FiltrationSpec.bracket(Ideal(R, ["x", "y"]))
XONLY = FiltrationSpec.bracket(Ideal(R, ["x"]))


def two_step():
    Kx = koszul_complex(R, ["x"])
    return direct_sum(Kx, shift(Kx, -1))


def test_koszul_reduces_to_itself():
    cert = strong_reducer(koszul_complex(R, ["x", "y"]), None, MAX)
    assert cert.ok
    assert {n: cert.T.rank(n) for n in cert.T.terms} == {0: 1, 1: 2, 2: 1}
    assert cert.ideal.strings() == ["x", "y"]


def test_two_step_complex():
    X = two_step()
    assert width_stats(X)["supph"] == [0, 1]
    cert = strong_reducer(X, None, XONLY)
    assert cert.ok and cert.m == 0
    C = cone(cert.alpha)
    assert width_stats(C)["width"] == 0


def test_verdicts_are_recomputable():
    cert = strong_reducer(two_step(), None, XONLY)
    first = dict(cert.verdicts)
    assert len(first) == 6 and all(first.values())
    assert cert.verify() == first


def test_reducer_respects_ideal():
    J = Ideal(R, ["x", "y"]).power(2)
    cert = strong_reducer(koszul_complex(R, ["x", "y"]), J, MAX)
    assert cert.ok
    assert all(J.contains(g) for g in cert.ideal.gens)


def test_exact_complex_rejected():
    K = koszul_complex(R, ["x", "y"])
    with pytest.raises(PreconditionError):
        strong_reducer(cone(ChainMap.identity(K)), None, MAX)


def test_support_is_checked():
    X = two_step()
    assert homology_in_support(X, Ideal(R, ["x"])) == {0: [1], 1: [1]}
    assert homology_in_support(X, Ideal(R, ["y"])) is None
    with pytest.raises(PreconditionError):
        strong_reducer(X, None, FiltrationSpec.bracket(Ideal(R, ["y"])))


def test_width_zero_needs_no_steps():
    assert width_reduce(koszul_complex(R, ["x", "y"]), MAX) == []


def test_width_one_takes_one_step():
    steps = width_reduce(two_step(), XONLY)
    assert [(s["width_before"], s["width_after"]) for s in steps] == [(1, 0)]


def test_random_width_two():
    seed = next(s for s in range(50) if random_torsion_complex(R, s)[1] == 2)
    X, w = random_torsion_complex(R, seed)
    steps = width_reduce(X, MAX)
    widths = [w] + [s["width_after"] for s in steps]
    assert widths[-1] == 0
    assert all(a > b for a, b in zip(widths, widths[1:]))
    for s in steps:
        assert s["certificate"].ok
        assert s["cone"].check() == []


def test_charp_reducer():
    I = Ideal(F2, ["x", "y"])
    P = resolve_quotient(Ideal(F2, ["x^2", "y^3"]), 4).complex
    out = charp_reducer(P, I, 3)
    assert out.u in (1, 2, 4, 8)
    assert all(out.verify(3).values())
    assert out.T.hi <= 2
    for n in (1, 2):
        assert homology(out.T, n).is_zero()


def test_charp_reducer_needs_room(Q2):
    I = Ideal(F2, ["x", "y"])
    P = resolve_quotient(Ideal(F2, ["x^2", "y^3"]), 4).complex
    with pytest.raises(PreconditionError):
        charp_reducer(P, I, 2)
    with pytest.raises(PreconditionError):
        charp_reducer(koszul_complex(Q2, ["x", "y"]), Ideal(Q2, ["x", "y"]), 3)


@pytest.mark.parametrize("gens, u", [(["x", "y"], 1), (["x^2", "y^2"], 2)])
def test_charp_reducer_on_padded_koszul(gens, u):
    F = FreeModule(F2, [0])
    pair = Complex(F2, {2: F, 3: F}, {3: ModMap.identity(F)})
    P = direct_sum(koszul_complex(F2, gens), pair)
    out = charp_reducer(P, Ideal(F2, ["x", "y"]), 3)
    assert out.u == u
    assert out.T.lo == 0 and out.T.hi == 2
    assert out.alpha.comp(0).row_strings() == [["1"]]
