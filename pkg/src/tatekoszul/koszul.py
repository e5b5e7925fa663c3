"""Koszul complexes on a lexicographic subset basis, the maps κ^{n,k}, duals and grade.

The basis of K_m(s̃; M) is e_ĩ ⊗ g for ĩ an increasing m-subset of
{0..d-1} and g a generator of M, ordered subset-major.  With the
0-based position j of i_j in ĩ the differential is

    ∂(e_ĩ ⊗ g) = Σ_j (−1)^j s_{i_j} e_{ĩ∖i_j} ⊗ g.
"""
from itertools import combinations

from .complexes import ChainMap, Complex, HomComplex, homology
from .errors import BudgetExceeded, PreconditionError
from .modules import FPModule, FreeModule, Ideal, ModMap, as_raw, colon_power, same_span


def subsets(d, m):
    """Increasing m-subsets of range(d) in lexicographic order."""
    return list(combinations(range(d), m))


def subset_index(d, m):
    return {s: k for k, s in enumerate(subsets(d, m))}


def tau(k, j):
    """1-based position of k in the ordered set j ⊔ k."""
    if k in j:
        raise PreconditionError("k already in the subset")
    return sorted(tuple(j) + (k,)).index(k) + 1


def _as_cokernel(module):
    if module.is_cokernel:
        return module
    return module.presentation()[0]


def element_degree(ring, f):
    d = ring.degree(f)
    return max(d, 0)


class KoszulSpec:
    """The data s̃, n and M of K(s̃^n; M); M defaults to R."""

    def __init__(self, ring, elements, exponent=1, module=None):
        if exponent < 1:
            raise PreconditionError("Koszul exponent must be at least 1")
        self.ring = ring
        self.elements = [as_raw(ring, s) for s in elements]
        if not self.elements:
            raise PreconditionError("need at least one element")
        self.exponent = exponent
        self.module = _as_cokernel(module) if module is not None else FPModule.free(FreeModule(ring, 1))
        self.zero_flags = [not s for s in self.elements]

    @property
    def d(self):
        return len(self.elements)

    def powered(self):
        ring = self.ring
        return [ring.power(s, self.exponent) if s else {} for s in self.elements]

    def with_exponent(self, n):
        return KoszulSpec(self.ring, self.elements, n, self.module)

    def with_module(self, module):
        return KoszulSpec(self.ring, self.elements, self.exponent, module)


def koszul_complex(ring, seq, module=None, free=None):
    """K(seq; M) for M a cokernel module (or a free module ``free``)."""
    if free is not None:
        G, rho = free, None
    else:
        module = _as_cokernel(module) if module is not None else FPModule.free(FreeModule(ring, 1))
        G, rho = module.ambient, module.rels
    seq = [as_raw(ring, s) for s in seq]
    d = len(seq)
    g = G.rank
    degs = [element_degree(ring, s) for s in seq]
    terms, diffs, rels = {}, {}, {}
    for m in range(d + 1):
        shifts = []
        for sub in subsets(d, m):
            base = sum(degs[i] for i in sub)
            shifts.extend(base + a for a in G.shifts)
        terms[m] = FreeModule(ring, shifts)
        if rho is not None and rho.source.rank:
            cols, rshifts = [], []
            for k, sub in enumerate(subsets(d, m)):
                base = sum(degs[i] for i in sub)
                for c, sh in zip(rho.cols, rho.source.shifts):
                    cols.append({k * g + a: f for a, f in c.items()})
                    rshifts.append(base + sh)
            rels[m] = ModMap(FreeModule(ring, rshifts), terms[m], cols, reduce=False)
    for m in range(1, d + 1):
        idx = subset_index(d, m - 1)
        cols = []
        for sub in subsets(d, m):
            for a in range(g):
                col = {}
                for j, i in enumerate(sub):
                    if not seq[i]:
                        continue
                    rest = sub[:j] + sub[j + 1:]
                    f = seq[i] if j % 2 == 0 else ring.neg(seq[i])
                    col[idx[rest] * g + a] = f
                cols.append(col)
        diffs[m] = ModMap(terms[m], terms[m - 1], cols, reduce=False)
    return Complex(ring, terms, diffs, rels)


def koszul(spec):
    """The Koszul complex of a :class:`KoszulSpec`."""
    return koszul_complex(spec.ring, spec.powered(), spec.module)


def kappa_on(ring, elements, n, k, source, target, module_rank=1):
    """κ^{n,k}: e_ĩ ↦ ∏_{i∈ĩ} s_i^{n−k} e_ĩ between prebuilt Koszul complexes."""
    if n < k:
        raise PreconditionError("κ^{n,k} needs n ≥ k")
    d = len(elements)
    comps = {}
    for m in range(d + 1):
        cols = []
        for sub in subsets(d, m):
            f = ring.one()
            for i in sub:
                f = ring.mul(f, ring.power(elements[i], n - k))
            for a in range(module_rank):
                cols.append({len(cols): f} if f else {})
        comps[m] = ModMap(source.term(m), target.term(m), cols)
    return ChainMap(source, target, comps)


def kappa(spec, k, source=None, target=None):
    """The comparison map κ^{n,k}: K(s̃^n; M) → K(s̃^k; M), n = spec.exponent."""
    n = spec.exponent
    if n < k:
        raise PreconditionError("κ^{n,k} needs n ≥ k")
    source = source or koszul(spec)
    target = target or koszul(spec.with_exponent(k))
    return kappa_on(spec.ring, spec.elements, n, k, source, target, spec.module.ambient.rank)


def koszul_homology(spec, i):
    return homology(koszul(spec), i)


def koszul_h0_matches(spec):
    """True if H_0(K(s̃^n;M)) is presented as M/(s̃^n)M."""
    K = koszul(spec)
    H = homology(K, 0)
    M = spec.module
    ring = spec.ring
    cols = list(M.rels.cols)
    for s in spec.powered():
        for a in range(M.ambient.rank):
            if s:
                cols.append({a: s})
    expected = ModMap(FreeModule(ring, [M.ambient.degree_of(c) or 0 for c in cols]), M.ambient, cols)
    return same_span(expected, H.bounds)


def degree_zero_complex(module):
    """A module viewed as a complex concentrated in degree 0."""
    module = _as_cokernel(module)
    rels = {0: module.rels} if module.rels.source.rank else {}
    return Complex(module.ring, {0: module.ambient}, {}, rels)


class KoszulDual:
    """Hom(K(s̃^n), N) with cohomology H^i read off as homology in degree −i."""

    def __init__(self, spec, N=None):
        if spec.module.ambient.rank != 1 or spec.module.rels.source.rank:
            raise PreconditionError("the Koszul dual is formed from K(s̃^n; R)")
        ring = spec.ring
        self.spec = spec
        self.N = _as_cokernel(N) if N is not None else FPModule.free(FreeModule(ring, 1))
        self.koszul = koszul(spec)
        self.hom = HomComplex(self.koszul, degree_zero_complex(self.N))
        self.complex = self.hom.complex

    def term_rank(self, i):
        return self.complex.rank(-i)

    def cohomology(self, i):
        return homology(self.complex, -i)


def koszul_dual(spec, N=None):
    return KoszulDual(spec, N)


def grade(ideal_or_seq, ring=None):
    """grade(I) = d − max{i : H_i(K(s̃; R)) ≠ 0}."""
    if isinstance(ideal_or_seq, Ideal):
        ring = ideal_or_seq.ring
        seq = list(ideal_or_seq.gens)
    else:
        seq = [as_raw(ring, s) for s in ideal_or_seq]
    I = Ideal(ring, seq)
    if I.is_unit():
        raise PreconditionError("grade of the unit ideal is undefined")
    if not seq:
        return 0
    K = koszul_complex(ring, seq)
    d = len(seq)
    top = max(i for i in range(d + 1) if not homology(K, i).is_zero())
    return d - top


def stabilization_l(ring, seq, module=None, budget=24):
    """Per-element stabilisation points l_i of (0:_M s_i^t) and l = max l_i."""
    module = _as_cokernel(module) if module is not None else FPModule.free(FreeModule(ring, 1))
    per = []
    for s in seq:
        s = as_raw(ring, s)
        prev = colon_power(module, s, 0)
        found = None
        for t in range(budget + 1):
            nxt = colon_power(module, s, t + 1)
            if prev.equal_submodule(nxt):
                found = t
                break
            prev = nxt
        if found is None:
            raise BudgetExceeded(f"annihilator chain of {ring.fmt(s)} did not stabilise within {budget} steps")
        per.append(found)
    return {"per_element": per, "l": max(per) if per else 0}
