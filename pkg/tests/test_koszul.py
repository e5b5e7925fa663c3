import pytest
from hypothesis import given
from hypothesis import strategies as st

from tatekoszul.complexes import ChainMap, homology, homology_dims_oracle
from tatekoszul.fixtures import d2_spec, e2_spec, minors_ideal
from tatekoszul.koszul import (
    KoszulSpec,
    grade,
    kappa,
    kappa_on,
    koszul,
    koszul_complex,
    koszul_dual,
    koszul_h0_matches,
    stabilization_l,
)
from tatekoszul.modules import FPModule, FreeModule, Ideal, annihilator, colon_power
from tatekoszul.ring import ring_create

Q1 = ring_create({"char": 0, "vars": "x"})
QXY = ring_create({"char": 0, "vars": "x y"})


def test_single_element(Q2):
    K = koszul(KoszulSpec(Q1, ["x"]))
    assert K.ranks() == {0: 1, 1: 1}
    assert K.diff(1).row_strings() == [["x"]]


def test_sign_rule(Q2):
    K = koszul_complex(Q2, ["x^2", "y^3"])
    assert K.diff(2).row_strings() == [["-y^3"], ["x^2"]]
    assert K.diff(1).row_strings() == [["x^2", "y^3"]]


def test_koszul_on_a_module(E2):
    M = FPModule.quotient_ring(Ideal(E2, ["y"]))
    K = koszul(KoszulSpec(E2, ["x"], module=M))
    assert homology(K, 1).is_zero()
    assert homology(K, 0).dims(range(4)) == [1, 0, 0, 0]


def test_kappa_examples(Q2):
    spec = KoszulSpec(Q1, ["x"], 3)
    assert kappa(spec, 3) .equal(ChainMap.identity(koszul(spec)))
    assert kappa(spec, 1).comp(1).row_strings() == [["x^2"]]
    s = KoszulSpec(Q2, ["x", "y"])
    K4, K2, K1 = (koszul(s.with_exponent(n)) for n in (4, 2, 1))
    k41 = kappa_on(Q2, s.elements, 4, 1, K4, K1)
    k21 = kappa_on(Q2, s.elements, 2, 1, K2, K1)
    k42 = kappa_on(Q2, s.elements, 4, 2, K4, K2)
    assert k41.equal(k21.compose(k42))
    assert k41.comp(2).row_strings() == [["x^3*y^3"]]


@given(st.integers(1, 4), st.integers(0, 3), st.integers(0, 3))
def test_kappa_functoriality(k, a, b):
    t, n = k + a, k + a + b
    s = KoszulSpec(QXY, ["x", "x*y"])
    Kn, Kt, Kk = (koszul(s.with_exponent(e)) for e in (n, t, k))
    direct = kappa_on(QXY, s.elements, n, k, Kn, Kk)
    assert direct.is_chain_map()
    assert direct.equal(kappa_on(QXY, s.elements, t, k, Kt, Kk).compose(kappa_on(QXY, s.elements, n, t, Kn, Kt)))


def test_dual_examples(E2):
    D = koszul_dual(KoszulSpec(Q1, ["x"]))
    assert [D.term_rank(i) for i in range(2)] == [1, 1]
    H1 = D.cohomology(1)
    assert annihilator(H1.module).strings() == ["x"]
    D = koszul_dual(KoszulSpec(E2, ["x"]))
    H0 = D.cohomology(0)
    assert [E2.fmt(c[0]) for c in H0.cycles] == ["y"]
    assert annihilator(D.cohomology(1).module).strings() == ["x"]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_dual_ranks_are_binomial(d):
    from math import comb

    R = ring_create({"char": 0, "vars": "a b c"})
    D = koszul_dual(KoszulSpec(R, ["a", "b", "c"][:d]))
    assert [D.term_rank(m) for m in range(d + 1)] == [comb(d, m) for m in range(d + 1)]


def test_grade_examples(Q2, E2):
    assert grade(Ideal(Q2, ["x", "y"])) == 2
    assert grade(Ideal(E2, ["x"])) == 0
    assert grade(minors_ideal()) == 2


def test_grade_independent_of_generators(Q2):
    assert grade(Ideal(Q2, ["x", "y"])) == grade(Ideal(Q2, ["x + y", "x - y", "x"]))
    assert grade(Ideal(Q2, ["x^2", "x*y"])) == grade(Ideal(Q2, ["x^2", "x*y", "x^2 + x*y"])) == 1


def test_stabilization_examples(Q2, E2):
    assert stabilization_l(Q2, ["x", "y"])["l"] == 0
    assert stabilization_l(E2, ["x"])["l"] == 1
    M = FPModule.quotient_ring(Ideal(Q1, ["x^2"]))
    assert stabilization_l(Q1, ["x"], M)["l"] == 2


@pytest.mark.parametrize("spec", [e2_spec(), d2_spec(), e2_spec(2)], ids=["E2", "d2", "E2-squared"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_h0_is_quotient_by_powers(spec, n):
    assert koszul_h0_matches(spec.with_exponent(n))


@pytest.mark.parametrize("k", [0, 1, 2])
def test_colon_of_product_stabilises(k):
    spec = d2_spec()
    ring = spec.ring
    l = stabilization_l(ring, spec.elements, spec.module)["l"]
    prod = ring.mul(spec.elements[0], spec.elements[1])
    a = colon_power(spec.module, prod, l + k)
    b = colon_power(spec.module, prod, l)
    assert a.equal_submodule(b)
    sh = list(spec.module.ambient.shifts)
    from tatekoszul.graded import subquotient_dim

    for t in range(6):
        assert subquotient_dim(ring, sh, a.gens.cols, a.rels.cols, t) == subquotient_dim(ring, sh, b.gens.cols, b.rels.cols, t)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_regular_sequence_is_acyclic(Q2, n):
    K = koszul(KoszulSpec(Q2, ["x", "y"], n))
    for i in (1, 2):
        assert homology(K, i).is_zero()
        assert homology_dims_oracle(K, i, range(7)) == [0] * 7
