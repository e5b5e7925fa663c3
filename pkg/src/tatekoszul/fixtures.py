"""Named example rings and seeded random complexes used by tests, demos and the CLI."""
import random

from .complexes import Complex, direct_sum, shift, twist, width_stats
from .errors import PreconditionError
from .graded import monomials_of_degree
from .koszul import KoszulSpec, koszul_complex
from .modules import FPModule, FreeModule, Ideal, ModMap
from .ring import ring_create


def e2_ring():
    """F_2[x,y]/(xy)."""
    return ring_create({"char": 2, "vars": "x y", "quotient": ["x*y"]})


def e2_spec(exponent=1, module=None):
    R = e2_ring()
    return KoszulSpec(R, ["x"], exponent, module)


def e2_module():
    """R/(x) over the E2 ring; the module with nontrivial x-torsion offset."""
    R = e2_ring()
    return FPModule.quotient_ring(Ideal(R, ["x"]))


def d2_spec():
    """s̃ = (x, y) over ℚ[x,y] acting on M = R/(x², xy)."""
    R = ring_create({"char": 0, "vars": "x y"})
    return KoszulSpec(R, ["x", "y"], module=FPModule.quotient_ring(Ideal(R, ["x^2", "x*y"])))


def d3_spec():
    """s̃ = (x, y, z) over ℚ[x,y,z]/(xyz)."""
    R = ring_create({"char": 0, "vars": "x y z", "quotient": ["x*y*z"]})
    return KoszulSpec(R, ["x", "y", "z"])


def regular_spec(char=101):
    R = ring_create({"char": char, "vars": "x y"})
    return KoszulSpec(R, ["x", "y"])


def minors_ideal():
    """2×2 minors of ((a,b,c),(b,c,d)) over F_2[a,b,c,d]."""
    R = ring_create({"char": 2, "vars": "a b c d"})
    return Ideal(R, ["a*c-b^2", "a*d-b*c", "b*d-c^2"])


def random_homogeneous(ring, rng, deg, density=0.6):
    """A random homogeneous polynomial of degree ``deg`` (possibly zero)."""
    f = {}
    for exps in monomials_of_degree(ring, deg):
        if rng.random() < density:
            c = rng.randrange(1, ring.p) if ring.p else rng.randint(-3, 3)
            f = ring.add(f, ring.monomial(exps, c))
    return ring.nf(f)


def _unipotent(ring, module, rng, max_deg):
    """A random upper unitriangular graded automorphism of ``module`` and its inverse."""
    sh = module.shifts
    n = module.rank
    cols = []
    for j in range(n):
        col = {j: ring.one()}
        for i in range(j):
            e = sh[j] - sh[i]
            if 0 <= e <= max_deg and rng.random() < 0.5:
                f = random_homogeneous(ring, rng, e)
                if f:
                    col[i] = f
        cols.append(col)
    A = ModMap(module, module, cols)
    I = ModMap.identity(module)
    N = A - I
    inv, P = I, I
    for _ in range(n):
        P = P.compose(-N)
        inv = inv + P
    return A, inv


def conjugate(C, rng, max_deg=2):
    """C with every term rebased by a random graded unitriangular automorphism."""
    ring = C.ring
    mats = {n: _unipotent(ring, C.term(n), rng, max_deg) for n in C.terms}
    diffs = {}
    for n, d in C.diffs.items():
        diffs[n] = mats[n - 1][1].compose(d).compose(mats[n][0])
    return Complex(ring, dict(C.terms), diffs)


def random_torsion_complex(ring, seed, max_width=3, max_summands=3, max_exp=2, trivial_pairs=1, max_rank=4):
    """A seeded bounded free complex whose homology is (x,y)-power torsion.

    It is a direct sum of shifted, twisted K(x^a, y^b), plus split pieces
    R → R, conjugated by random graded automorphisms.  Summands that would
    push a term past ``max_rank`` are dropped.  Returns the complex and
    its width.
    """
    if ring.nvars < 2:
        raise PreconditionError("needs at least two variables")
    rng = random.Random(seed)
    x, y = ring.names[:2]
    width = rng.randint(0, max_width)
    count = rng.randint(1, max_summands)
    places = [0, width] + [rng.randint(0, width) for _ in range(max(0, count - 2))]
    places = places[:count] if count >= 2 else [0]
    C = None
    for k in places:
        a, b = rng.randint(1, max_exp), rng.randint(1, max_exp)
        K = twist(koszul_complex(ring, [f"{x}^{a}", f"{y}^{b}"]), rng.randint(0, 1))
        K = shift(K, -k)
        if C is not None and any(C.rank(n) + K.rank(n) > max_rank for n in K.terms):
            continue
        C = K if C is None else direct_sum(C, K)
    for _ in range(trivial_pairs):
        n = rng.randint(C.lo, C.hi)
        if C.rank(n) >= max_rank or C.rank(n + 1) >= max_rank:
            continue
        F = FreeModule(ring, [rng.randint(0, 2)])
        C = direct_sum(C, Complex(ring, {n: F, n + 1: F}, {n + 1: ModMap.identity(F)}))
    X = conjugate(C, rng)
    return X, width_stats(X)["width"]


__all__ = [
    "e2_ring",
    "e2_spec",
    "e2_module",
    "d2_spec",
    "d3_spec",
    "regular_spec",
    "minors_ideal",
    "random_homogeneous",
    "conjugate",
    "random_torsion_complex",
]
