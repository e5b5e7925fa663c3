"""Bounded chain complexes, chain maps, homology and the standard constructions.

A term of a :class:`Complex` is a free module ``F_n`` together with an
optional relation map ``rho_n`` into it, so the term is really
coker(rho_n).  Free complexes simply have no relations.  Differentials
must send relations into relations; this is checked on construction.
"""
from .errors import BudgetExceeded, PreconditionError, VerificationError
from .graded import homology_dim, subquotient_dim
from .groebner import vec_add, vec_neg, vec_scale
from .modules import (
    FPModule,
    FreeModule,
    Ideal,
    ModMap,
    annihilator,
    block_matrix,
    hstack,
    kron_identity,
    minimal_generators,
    standard_dim,
)


def _zero_free(ring):
    return FreeModule(ring, 0)


class Complex:
    """A bounded complex ``... → F_n → F_{n-1} → ...``.

    ``terms`` maps degrees to :class:`FreeModule`, ``diffs[n]`` is
    ∂_n: F_n → F_{n-1}, ``rels[n]`` an optional relation map into F_n.
    """

    def __init__(self, ring, terms, diffs=None, rels=None, check=True):
        self.ring = ring
        self.terms = {n: F for n, F in terms.items() if F.rank}
        self.diffs = {}
        for n, d in (diffs or {}).items():
            if n in self.terms and (n - 1) in self.terms:
                if d.source.rank != self.terms[n].rank or d.target.rank != self.terms[n - 1].rank:
                    raise PreconditionError(f"differential {n} has the wrong shape")
                self.diffs[n] = d
        self.rels = {n: r for n, r in (rels or {}).items() if n in self.terms and r.source.rank}
        self._hom = {}
        if check:
            bad = self.check()
            if bad:
                raise VerificationError(f"∂∂ ≠ 0 or relations not preserved at degrees {bad}")

    # -- access --------------------------------------------------------------
    @property
    def lo(self):
        return min(self.terms) if self.terms else 0

    @property
    def hi(self):
        return max(self.terms) if self.terms else -1

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def is_empty(self):
        return not self.terms

    def term(self, n):
        return self.terms.get(n) or _zero_free(self.ring)

    def rank(self, n):
        return self.term(n).rank

    def ranks(self):
        return {n: self.rank(n) for n in self.degrees()}

    def diff(self, n):
        d = self.diffs.get(n)
        if d is not None:
            return d
        return ModMap.zero(self.term(n), self.term(n - 1))

    def rel(self, n):
        r = self.rels.get(n)
        if r is not None:
            return r
        return ModMap.zero(_zero_free(self.ring), self.term(n))

    @property
    def is_free(self):
        return not self.rels

    def module(self, n):
        return FPModule(self.term(n), None, self.rel(n))

    def __repr__(self):
        body = ", ".join(f"{n}:{self.rank(n)}" for n in self.degrees())
        return f"Complex({{{body}}})"

    def check(self):
        """Degrees where ∂∂ fails to vanish (modulo relations) or relations leak."""
        bad = []
        for n in range(self.lo, self.hi + 2):
            if n - 2 >= self.lo:
                dd = self.diff(n - 1).compose(self.diff(n))
                target_rel = self.rel(n - 2)
                if not all(not c or target_rel.contains(c) for c in dd.cols):
                    bad.append(n)
                    continue
            if n in self.rels and n - 1 in self.terms:
                img = self.diff(n).compose(self.rels[n])
                if not all(not c or self.rel(n - 1).contains(c) for c in img.cols):
                    bad.append(n)
        return bad

    def same_shape(self, other):
        return all(self.term(n) == other.term(n) for n in set(self.terms) | set(other.terms))

    def equal(self, other):
        degs = set(self.terms) | set(other.terms)
        return self.same_shape(other) and all(self.diff(n) == other.diff(n) for n in degs)


class HomologyModule:
    """H_n as the subquotient cycles / (boundaries + relations) of F_n."""

    def __init__(self, complex_, n, cycles, bounds):
        self.complex = complex_
        self.n = n
        self.cycles = cycles
        self.bounds = bounds
        F = complex_.term(n)
        src = FreeModule(complex_.ring, [F.degree_of(c) or 0 for c in cycles])
        self.module = FPModule(F, ModMap(src, F, cycles, reduce=False), bounds)

    def is_zero(self):
        return not self.cycles

    def is_boundary(self, vec):
        return not vec or self.bounds.contains(vec)

    def __repr__(self):
        return f"H_{self.n}({len(self.cycles)} generators)"

    def dims(self, degrees):
        """Graded dimensions via the independent linear-algebra oracle."""
        ring = self.complex.ring
        sh = self.complex.term(self.n).shifts
        return [subquotient_dim(ring, sh, self.cycles, self.bounds.cols, t) for t in degrees]

    def dims_groebner(self, degrees):
        """Graded dimensions from standard monomials of (cycles + boundaries) and boundaries."""
        ring = self.complex.ring
        sh = list(self.complex.term(self.n).shifts)
        both = list(self.bounds.cols) + list(self.cycles)
        return [standard_dim(ring, sh, self.bounds.cols, t) - standard_dim(ring, sh, both, t) for t in degrees]


def cycle_vectors(C, n):
    F = C.term(n)
    if not F.rank:
        return []
    if not C.term(n - 1).rank:
        return [{i: C.ring.one()} for i in range(F.rank)]
    d = C.diff(n)
    prev_rel = C.rel(n - 1)
    if prev_rel.source.rank:
        stack = hstack([d, prev_rel], C.term(n - 1))
        k = F.rank
        return [
            w for w in ({pos: f for pos, f in v.items() if pos < k} for v in stack.syzygy_vectors()) if w
        ]
    return d.syzygy_vectors()


def boundary_map(C, n):
    return hstack([C.diff(n + 1), C.rel(n)], C.term(n))


def homology(C, n):
    """H_n(C) with cycle generators minimal modulo boundaries (graded case)."""
    if n in C._hom:
        return C._hom[n]
    F = C.term(n)
    bounds = boundary_map(C, n)
    cycles = minimal_generators(F, cycle_vectors(C, n), bounds.cols) if F.rank else []
    H = HomologyModule(C, n, cycles, bounds)
    C._hom[n] = H
    return H


def is_homology_zero(C, n):
    return homology(C, n).is_zero()


def homology_dims_oracle(C, n, degrees):
    """dim_k H_n(C)_t for t in ``degrees``, computed without Gröbner bases."""
    terms = {k: list(C.term(k).shifts) for k in range(C.lo - 1, C.hi + 2) if C.rank(k)}
    rels = {k: C.rel(k).cols for k in C.rels}
    diffs = {k: C.diff(k).cols for k in terms}
    return [homology_dim(C.ring, terms, rels, diffs, n, t) for t in degrees]


class ChainMap:
    """Degreewise maps ``comps[n]: source_n → target_n`` commuting with ∂."""

    def __init__(self, source, target, comps, check=True):
        self.source = source
        self.target = target
        self.ring = source.ring
        self.comps = {}
        for n, f in comps.items():
            if source.rank(n) and target.rank(n):
                if f.source.rank != source.rank(n) or f.target.rank != target.rank(n):
                    raise PreconditionError(f"component {n} has the wrong shape")
                self.comps[n] = f
        if check:
            bad = self.check()
            if bad:
                raise VerificationError(f"chain map squares fail at degrees {bad}")

    def comp(self, n):
        f = self.comps.get(n)
        if f is not None:
            return f
        return ModMap.zero(self.source.term(n), self.target.term(n))

    def degrees(self):
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo, hi + 1)

    def check(self):
        bad = []
        S, T = self.source, self.target
        for n in range(min(S.lo, T.lo), max(S.hi, T.hi) + 2):
            lhs = T.diff(n).compose(self.comp(n))
            rhs = self.comp(n - 1).compose(S.diff(n))
            diff = lhs - rhs
            rel = T.rel(n - 1)
            if not all(not c or rel.contains(c) for c in diff.cols):
                bad.append(n)
                continue
            if n in S.rels:
                img = self.comp(n).compose(S.rels[n])
                if not all(not c or T.rel(n).contains(c) for c in img.cols):
                    bad.append(n)
        return bad

    def is_chain_map(self):
        return not self.check()

    def compose(self, other):
        """``self ∘ other``."""
        comps = {n: self.comp(n).compose(other.comp(n)) for n in other.source.terms}
        return ChainMap(other.source, self.target, comps, check=False)

    def __sub__(self, other):
        comps = {n: self.comp(n) - other.comp(n) for n in self.source.terms}
        return ChainMap(self.source, self.target, comps, check=False)

    def __add__(self, other):
        comps = {n: self.comp(n) + other.comp(n) for n in self.source.terms}
        return ChainMap(self.source, self.target, comps, check=False)

    def scale(self, f):
        return ChainMap(self.source, self.target, {n: c.scale(f) for n, c in self.comps.items()}, check=False)

    @classmethod
    def identity(cls, C):
        return cls(C, C, {n: ModMap.identity(C.term(n)) for n in C.terms}, check=False)

    @classmethod
    def zero(cls, S, T):
        return cls(S, T, {}, check=False)

    def equal(self, other):
        degs = set(self.source.terms) | set(other.source.terms)
        return all(self.comp(n) == other.comp(n) for n in degs)


class InducedMap:
    def __init__(self, f, n):
        self.map = f
        self.n = n
        self.source = homology(f.source, n)
        self.target = homology(f.target, n)
        self.images = [f.comp(n).apply(z) for z in self.source.cycles]

    def is_zero(self):
        return all(self.target.is_boundary(v) for v in self.images)

    def is_surjective(self):
        tgt = self.target
        if tgt.is_zero():
            return True
        F = tgt.complex.term(self.n)
        cols = [v for v in self.images if v] + tgt.bounds.cols
        span = ModMap(FreeModule(F.ring, [F.degree_of(c) or 0 for c in cols]), F, cols, reduce=False)
        return all(span.contains(z) for z in tgt.cycles)

    def non_boundary_images(self):
        return [k for k, v in enumerate(self.images) if not self.target.is_boundary(v)]


def induced_map(f, n):
    return InducedMap(f, n)


def cone(f):
    """Mapping cone with ∂(t, x) = (−∂t, f(t) + ∂x); cone_n = T_{n−1} ⊕ X_n."""
    T, X = f.source, f.target
    ring = f.ring
    lo = min(T.lo + 1, X.lo)
    hi = max(T.hi + 1, X.hi)
    terms, diffs, rels = {}, {}, {}
    for n in range(lo, hi + 1):
        terms[n] = T.term(n - 1) + X.term(n)
        if T.rank(n - 1) + X.rank(n) and (n - 1 in T.rels or n in X.rels):
            rels[n] = block_matrix(
                [[T.rel(n - 1), None], [None, X.rel(n)]],
                [T.rel(n - 1).source, X.rel(n).source],
                [T.term(n - 1), X.term(n)],
            )
    for n in range(lo + 1, hi + 1):
        diffs[n] = block_matrix(
            [[-T.diff(n - 1), None], [f.comp(n - 1), X.diff(n)]],
            [T.term(n - 1), X.term(n)],
            [T.term(n - 2), X.term(n - 1)],
        )
    return Complex(ring, terms, diffs, rels)


def cone_inclusion(f, C):
    """The chain map X → cone(f), x ↦ (0, x)."""
    T, X = f.source, f.target
    comps = {}
    for n in X.terms:
        k = T.rank(n - 1)
        cols = [{k + pos: g for pos, g in c.items()} for c in ModMap.identity(X.term(n)).cols]
        comps[n] = ModMap(X.term(n), C.term(n), cols, reduce=False)
    return ChainMap(X, C, comps)


def shift(C, k):
    """(shift(C, k))_n = C_{n+k} with differentials multiplied by (−1)^k."""
    sign = -1 if k % 2 else 1
    terms = {n - k: F for n, F in C.terms.items()}
    diffs = {n - k: (d if sign == 1 else -d) for n, d in C.diffs.items()}
    rels = {n - k: r for n, r in C.rels.items()}
    return Complex(C.ring, terms, diffs, rels, check=False)


def direct_sum(A, B):
    ring = A.ring
    degs = set(A.terms) | set(B.terms)
    terms = {n: A.term(n) + B.term(n) for n in degs}
    diffs = {}
    for n in degs:
        if n - 1 in degs:
            diffs[n] = block_matrix(
                [[A.diff(n), None], [None, B.diff(n)]],
                [A.term(n), B.term(n)],
                [A.term(n - 1), B.term(n - 1)],
            )
    rels = {}
    for n in degs:
        if n in A.rels or n in B.rels:
            rels[n] = block_matrix(
                [[A.rel(n), None], [None, B.rel(n)]],
                [A.rel(n).source, B.rel(n).source],
                [A.term(n), B.term(n)],
            )
    return Complex(ring, terms, diffs, rels, check=False)


def twist(C, k):
    """Shift every internal degree by ``k`` (graded twist)."""
    terms = {n: F.twist(k) for n, F in C.terms.items()}
    diffs = {n: ModMap(terms[n], terms[n - 1], d.cols, reduce=False) for n, d in C.diffs.items()}
    rels = {n: ModMap(r.source.twist(k), terms[n], r.cols, reduce=False) for n, r in C.rels.items()}
    return Complex(C.ring, terms, diffs, rels, check=False)


def change_basis(C, mats):
    """Conjugate C by invertible scalar matrices ``mats[n]`` (new basis = old · mats)."""
    diffs = {}
    inv = {n: _inverse_scalar(m) for n, m in mats.items()}
    for n, d in C.diffs.items():
        left = inv.get(n - 1) or ModMap.identity(C.term(n - 1))
        right = mats.get(n) or ModMap.identity(C.term(n))
        diffs[n] = left.compose(d).compose(right)
    return Complex(C.ring, dict(C.terms), diffs, dict(C.rels), check=False)


def _inverse_scalar(m):
    """Inverse of a square matrix of constants."""
    ring = m.ring
    fld = ring.field
    n = m.source.rank
    one_m = ring.one_mono
    A = [[m.entry(i, j).get(one_m, fld.zero) for j in range(n)] + [fld.one if i == j else fld.zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise PreconditionError("scalar matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        inv = fld.inv(A[col][col])
        A[col] = [fld.mul(x, inv) for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                a = A[r][col]
                A[r] = [fld.sub(x, fld.mul(a, y)) for x, y in zip(A[r], A[col])]
    rows = [[ring.const(A[i][n + j]) for j in range(n)] for i in range(n)]
    return ModMap.from_rows(ring, rows, source=m.target, target=m.source)


class WidthStats(dict):
    pass


def width_stats(C):
    """min_c, min, supph, wid (None for −∞) and width of a complex."""
    supph = [n for n in C.degrees() if not is_homology_zero(C, n)]
    wid = (max(supph) - min(supph)) if supph else None
    return WidthStats(
        min_c=C.lo if C.terms else None,
        min=min(supph) if supph else None,
        supph=supph,
        wid=wid,
        width=wid if wid is not None else 0,
        acyclic=not supph,
    )


def pullback_complex(g, b):
    """Degreewise pullback of g: Q → Y and b: M → Y (free complexes).

    Returns (Q′, ν, μ) with Q′_n = ker(Q_n ⊕ M_n → Y_n, (q, m) ↦ g q − b m),
    each term presented by generators modulo their syzygies.
    """
    Q, M, Y = g.source, b.source, g.target
    if b.target is not Y and not Y.equal(b.target):
        raise PreconditionError("pullback needs a common target")
    ring = g.ring
    degs = sorted(set(Q.terms) | set(M.terms))
    gens, terms, rels = {}, {}, {}
    for n in degs:
        QM = Q.term(n) + M.term(n)
        to_y = hstack([g.comp(n), -b.comp(n)], Y.term(n))
        to_y = ModMap(QM, Y.term(n), to_y.cols, reduce=False)
        if Y.rank(n):
            vecs = to_y.syzygy_vectors()
        else:
            vecs = [{i: ring.one()} for i in range(QM.rank)]
        vecs = minimal_generators(QM, vecs)
        src = FreeModule(ring, [QM.degree_of(v) or 0 for v in vecs])
        K = ModMap(src, QM, vecs, reduce=False)
        gens[n] = K
        terms[n] = src
        rel_vecs = minimal_generators(src, K.syzygy_vectors()) if src.rank else []
        if rel_vecs:
            rels[n] = ModMap(FreeModule(ring, [src.degree_of(v) or 0 for v in rel_vecs]), src, rel_vecs, reduce=False)
    diffs = {}
    for n in degs:
        if n - 1 not in gens or not terms[n].rank or not terms[n - 1].rank:
            continue
        big = _block_diff(Q, M, n)
        images = big.compose(gens[n])
        through = hstack([gens[n - 1]], gens[n - 1].target)
        cols = []
        for v in images.cols:
            c = through.lift(v)
            if c is None:
                raise VerificationError("pullback differential does not lift")
            cols.append(c)
        diffs[n] = ModMap(terms[n], terms[n - 1], cols, reduce=False)
    Qp = Complex(ring, terms, diffs, rels)
    nu, mu = {}, {}
    for n in degs:
        K = gens[n]
        q = Q.rank(n)
        nu[n] = ModMap(terms[n], Q.term(n), [{p: f for p, f in c.items() if p < q} for c in K.cols], reduce=False)
        mu[n] = ModMap(terms[n], M.term(n), [{p - q: f for p, f in c.items() if p >= q} for c in K.cols], reduce=False)
    return Qp, ChainMap(Qp, Q, nu), ChainMap(Qp, M, mu)


def _block_diff(Q, M, n):
    return block_matrix(
        [[Q.diff(n), None], [None, M.diff(n)]],
        [Q.term(n), M.term(n)],
        [Q.term(n - 1), M.term(n - 1)],
    )


class HomComplex:
    """Hom(F, G) with D(f) = ∂_G f − (−1)^n f ∂_F on Hom_n = ⊕_k Hom(F_k, G_{k+n}).

    F must be free; G may carry relations.  A homogeneous element of Hom_n
    is exchanged with a vector via :meth:`vec` and :meth:`maps`.
    """

    def __init__(self, F, G):
        if not F.is_free:
            raise PreconditionError("Hom complex needs a free source")
        self.F, self.G = F, G
        ring = F.ring
        self.ring = ring
        lo = G.lo - F.hi
        hi = G.hi - F.lo
        self.blocks = {}
        terms = {}
        for n in range(lo, hi + 1):
            blocks, shifts, off = [], [], 0
            for k in F.degrees():
                Fk, Gj = F.term(k), G.term(k + n)
                if not Fk.rank or not Gj.rank:
                    continue
                blocks.append((k, off, Gj.rank, Fk.rank))
                shifts.extend(Gj.shifts[a] - Fk.shifts[b] for a in range(Gj.rank) for b in range(Fk.rank))
                off += Gj.rank * Fk.rank
            if off:
                self.blocks[n] = blocks
                terms[n] = FreeModule(ring, shifts)
        diffs = {}
        for n in terms:
            if n - 1 not in terms:
                continue
            diffs[n] = self._diff(n, terms[n], terms[n - 1])
        rels = {}
        for n in terms:
            cols = []
            for k, off, ga, fb in self.blocks[n]:
                for c in G.rel(k + n).cols:
                    for b in range(fb):
                        cols.append({off + a * fb + b: f for a, f in c.items()})
            if cols:
                rels[n] = ModMap(FreeModule(ring, [terms[n].degree_of(c) or 0 for c in cols]), terms[n], cols, reduce=False)
        self.complex = Complex(ring, terms, diffs, rels, check=False)

    def _offset(self, n, k):
        for kk, off, ga, fb in self.blocks.get(n, ()):
            if kk == k:
                return off, ga, fb
        return None

    def _diff(self, n, src, tgt):
        F, G = self.F, self.G
        sign = -1 if n % 2 == 0 else 1  # −(−1)^n
        cols = []
        for k, off, ga, fb in self.blocks[n]:
            dG = G.diff(k + n)
            dF = F.diff(k + 1)
            down = self._offset(n - 1, k)
            side = self._offset(n - 1, k + 1)
            for a in range(ga):
                for b in range(fb):
                    col = {}
                    if down is not None:
                        doff, dga, dfb = down
                        for a2, f in dG.cols[a].items():
                            col = vec_add(self.ring, col, {doff + a2 * dfb + b: f})
                    if side is not None and F.rank(k + 1):
                        soff, sga, sfb = side
                        for b2 in range(sfb):
                            f = dF.entry(b, b2)
                            if f:
                                term = {soff + a * sfb + b2: f}
                                col = vec_add(self.ring, col, term if sign == 1 else vec_neg(self.ring, term))
                    cols.append(col)
        return ModMap(src, tgt, cols, reduce=False)

    def vec(self, n, maps):
        """Vector of Hom_n from ``maps[k]: F_k → G_{k+n}``."""
        out = {}
        for k, off, ga, fb in self.blocks.get(n, ()):
            m = maps.get(k)
            if m is None:
                continue
            for b, col in enumerate(m.cols):
                for a, f in col.items():
                    out[off + a * fb + b] = f
        return out

    def maps(self, n, vec):
        """Inverse of :meth:`vec`."""
        out = {}
        F, G = self.F, self.G
        for k, off, ga, fb in self.blocks.get(n, ()):
            cols = [{} for _ in range(fb)]
            for a in range(ga):
                for b in range(fb):
                    f = vec.get(off + a * fb + b)
                    if f:
                        cols[b][a] = f
            out[k] = ModMap(F.term(k), G.term(k + n), cols, reduce=False)
        return out


def hom_complex(F, G):
    return HomComplex(F, G)


def end_annihilator(F):
    """Ann H_0(Hom(F, F)): the ring elements acting null-homotopically on F."""
    H = HomComplex(F, F)
    h0 = homology(H.complex, 0)
    return annihilator(h0.module)


def null_homotopy(f, window=None):
    """Maps h_n: S_n → T_{n+1} with f_n = ∂h_n + h_{n−1}∂, or None.

    Solved globally as a lift of f through the Hom-complex differential.
    """
    H = HomComplex(f.source, f.target)
    target = H.vec(0, {n: f.comp(n) for n in f.source.terms})
    if not target:
        return {n: ModMap.zero(f.source.term(n), f.target.term(n + 1)) for n in f.source.terms}
    if 1 not in H.complex.terms:
        return None
    D1 = H.complex.diff(1)
    through = hstack([D1, H.complex.rel(0)], H.complex.term(0))
    c = through.lift(target)
    if c is None:
        return None
    k = D1.source.rank
    h = H.maps(1, {p: g for p, g in c.items() if p < k})
    return {n: h.get(n, ModMap.zero(f.source.term(n), f.target.term(n + 1))) for n in f.source.terms}


def check_homotopy(f, h):
    """True if f_n = ∂h_n + h_{n−1}∂ in every degree."""
    S, T = f.source, f.target
    for n in f.degrees():
        hn = h.get(n) or ModMap.zero(S.term(n), T.term(n + 1))
        hm = h.get(n - 1) or ModMap.zero(S.term(n - 1), T.term(n))
        total = T.diff(n + 1).compose(hn) + hm.compose(S.diff(n))
        diff = total - f.comp(n)
        if not all(not c or T.rel(n).contains(c) for c in diff.cols):
            return False
    return True


def extend_chain_map(F, G, comps, top, start=None, check=True):
    """Extend ``comps`` to a chain map F → G up to degree ``top`` by lifting.

    F free; the missing f_n solve ∂^G f_n = f_{n−1} ∂^F (modulo relations)
    via lifts through [∂^G_n | ρ^G_{n−1}].  Raises VerificationError if the
    target is not exact enough for a lift to exist.
    """
    comps = dict(comps)
    start = start if start is not None else max(comps) + 1
    for n in range(start, top + 1):
        if not F.rank(n):
            continue
        need = comps.get(n - 1, ModMap.zero(F.term(n - 1), G.term(n - 1))).compose(F.diff(n))
        if not G.rank(n):
            if any(need.cols) and not all(not c or G.rel(n - 1).contains(c) for c in need.cols):
                raise VerificationError(f"comparison map cannot be extended to degree {n}")
            continue
        through = hstack([G.diff(n), G.rel(n - 1)], G.term(n - 1))
        k = G.rank(n)
        cols = []
        for v in need.cols:
            c = through.lift(v) if v else {}
            if c is None:
                raise VerificationError(f"comparison map cannot be extended to degree {n}")
            cols.append({p: g for p, g in c.items() if p < k})
        comps[n] = ModMap(F.term(n), G.term(n), cols, reduce=False)
    return ChainMap(F, G, comps, check=check)


class Minimalized:
    """Result of Gaussian elimination: C ≃ small via p: C → small, i: small → C."""

    def __init__(self, original, small, p, i):
        self.original = original
        self.complex = small
        self.p = p
        self.i = i


def minimalize(C):
    """Cancel unit entries of the differentials (free complexes only).

    Each cancellation of a unit u in ∂_n = [[u, γ], [δ, ε]] replaces ε by
    ε − δ u⁻¹ γ and is a homotopy equivalence; the returned maps realise it.
    For graded complexes the result has all differential entries in the
    irrelevant ideal.
    """
    if not C.is_free:
        raise PreconditionError("minimalize needs a free complex")
    ring = C.ring
    fld = ring.field
    one_m = ring.one_mono
    # Work with dense row/col index lists for bookkeeping.
    terms = {n: list(range(C.rank(n))) for n in C.terms}
    shifts = {n: list(C.term(n).shifts) for n in C.terms}
    mats = {n: [dict(c) for c in C.diff(n).cols] for n in C.diffs}
    # p_n and i_n as column lists (p: C → current, i: current → C)
    p = {n: [{k: ring.one()} for k in range(C.rank(n))] for n in C.terms}
    i = {n: [{k: ring.one()} for k in range(C.rank(n))] for n in C.terms}

    def find_unit():
        for n in sorted(mats):
            for j, col in enumerate(mats[n]):
                for r in sorted(col):
                    f = col[r]
                    if len(f) == 1 and one_m in f:
                        return n, r, j
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        n, r, j = hit
        d = mats[n]
        u = d[j][r][one_m]
        uinv = fld.inv(u)
        delta = {q: f for q, f in d[j].items() if q != r}  # column j without row r
        gamma = {c: d[c].get(r, {}) for c in range(len(d)) if c != j}  # row r
        # new ∂_n on remaining columns
        newd = []
        for c in range(len(d)):
            if c == j:
                continue
            col = {q: f for q, f in d[c].items() if q != r}
            g = gamma[c]
            if g:
                corr = {q: ring.mul(f, ring.scale(g, uinv)) for q, f in delta.items()}
                col = vec_add(ring, col, vec_neg(ring, corr))
            newd.append(_reindex_drop(col, r))
        # inclusion i_n: d ↦ d − u⁻¹ γ(d) b_j (in current coordinates, then composed)
        cur_i = i[n]
        new_i = []
        for c in range(len(d)):
            if c == j:
                continue
            v = cur_i[c]
            g = gamma[c]
            if g:
                v = vec_add(ring, v, vec_neg(ring, {q: ring.mul(f, ring.scale(g, uinv)) for q, f in cur_i[j].items()}))
            new_i.append(v)
        i[n] = new_i
        i[n - 1] = [v for k, v in enumerate(i[n - 1]) if k != r]
        # projection p_{n-1}: (b', e) ↦ e − δ u⁻¹ b'  (applied to current coordinates)
        pn1 = []
        for v in p[n - 1]:
            a = v.get(r, {})
            w = {q: f for q, f in v.items() if q != r}
            if a:
                w = vec_add(ring, w, vec_neg(ring, {q: ring.mul(f, ring.scale(a, uinv)) for q, f in delta.items()}))
            pn1.append(_reindex_drop(w, r))
        p[n - 1] = pn1
        p[n] = [_reindex_drop({q: f for q, f in v.items() if q != j}, j) for v in p[n]]
        mats[n] = newd
        # ∂_{n+1}: drop row j;  ∂_{n-1}: drop column r
        if n + 1 in mats:
            mats[n + 1] = [_reindex_drop({q: f for q, f in col.items() if q != j}, j) for col in mats[n + 1]]
        if n - 1 in mats:
            mats[n - 1] = [col for k, col in enumerate(mats[n - 1]) if k != r]
        shifts[n] = [s for k, s in enumerate(shifts[n]) if k != j]
        shifts[n - 1] = [s for k, s in enumerate(shifts[n - 1]) if k != r]

    new_terms = {n: FreeModule(ring, shifts[n]) for n in shifts}
    new_diffs = {
        n: ModMap(new_terms[n], new_terms[n - 1], mats[n], reduce=False)
        for n in mats if new_terms[n].rank and new_terms[n - 1].rank
    }
    small = Complex(ring, new_terms, new_diffs)
    pmap = ChainMap(C, small, {n: ModMap(C.term(n), new_terms[n], p[n], reduce=False) for n in C.terms if new_terms[n].rank})
    imap = ChainMap(small, C, {n: ModMap(new_terms[n], C.term(n), i[n], reduce=False) for n in C.terms if new_terms[n].rank})
    return Minimalized(C, small, pmap, imap)


def _reindex_drop(vec, k):
    return {(q - 1 if q > k else q): f for q, f in vec.items() if q != k}


def is_minimal(C):
    return not any(f and C.ring.one_mono in f for d in C.diffs.values() for c in d.cols for f in c.values())


def koszul_on_free(s_list, P0, r=1):
    """K(s̃^r; P_0) for a free module P_0 (Koszul basis major, P_0 minor)."""
    from .koszul import koszul_complex

    return koszul_complex(P0.ring, [P0.ring.power(s, r) for s in s_list], free=P0)


def foxby_halvorsen(P, s_list, budget=8, annihilator_ideal=None):
    """(r, Ψ) with Ψ: K(s̃^r; P_0) → P a chain map and Ψ_0 the identity.

    Each s_i^{r_i} · id_P is null-homotopic (r_i searched up to ``budget``);
    Ψ_m(e_{i_1}∧…∧e_{i_m} ⊗ p) = h_{i_1}⋯h_{i_m}(p).
    """
    if not P.is_free:
        raise PreconditionError("Foxby–Halvorsen map needs a free complex")
    if P.lo != 0:
        raise PreconditionError("complex must start in degree 0")
    ring = P.ring
    s_raw = [ring.nf(s) for s in s_list]
    N = annihilator_ideal if annihilator_ideal is not None else end_annihilator(P)
    powers = []
    for s in s_raw:
        found = None
        for r in range(1, budget + 1):
            if N.contains(ring.power(s, r)):
                found = r
                break
        if found is None:
            raise BudgetExceeded(
                f"no power s^r with r <= {budget} of {ring.fmt(s)} acts null-homotopically; "
                "homology is not supported on V(I) or the budget is too small"
            )
        powers.append(found)
    r = max(powers)
    homotopies = []
    for s, ri in zip(s_raw, powers):
        f = ChainMap(P, P, {n: ModMap.scalar(P.term(n), ring.power(s, ri)) for n in P.terms}, check=False)
        h = null_homotopy(f)
        if h is None:
            raise VerificationError("annihilator element without a null homotopy")
        if ri < r:
            extra = ring.power(s, r - ri)
            h = {n: m.scale(extra) for n, m in h.items()}
        homotopies.append(h)
    P0 = P.term(0)
    K = koszul_on_free(s_raw, P0, r)
    from .koszul import subsets

    d = len(s_raw)
    comps = {}
    for m in range(0, min(d, P.hi) + 1):
        cols = []
        for sub in subsets(d, m):
            for j in range(P0.rank):
                v = {j: ring.one()}
                deg = 0
                for idx in reversed(sub):
                    h = homotopies[idx].get(deg)
                    v = h.apply(v) if h is not None and v else {}
                    deg += 1
                cols.append(v)
        comps[m] = ModMap(K.term(m), P.term(m), cols, reduce=False)
    psi = ChainMap(K, P, comps)
    return r, psi, homotopies


def tensor_module(C, N):
    """C ⊗ N for a free complex C and a cokernel module N (basis C-major, N-minor)."""
    if not C.is_free:
        raise PreconditionError("tensoring needs a free complex")
    G, rho = N.ambient, N.rels
    g = G.rank
    ring = C.ring
    terms, diffs, rels = {}, {}, {}
    for n, F in C.terms.items():
        terms[n] = FreeModule(ring, [a + b for a in F.shifts for b in G.shifts])
        if rho.source.rank:
            cols, sh = [], []
            for i, a in enumerate(F.shifts):
                for c, b in zip(rho.cols, rho.source.shifts):
                    cols.append({i * g + p: f for p, f in c.items()})
                    sh.append(a + b)
            rels[n] = ModMap(FreeModule(ring, sh), terms[n], cols, reduce=False)
    for n, d in C.diffs.items():
        k = kron_identity(d, g, G.shifts, left=True)
        diffs[n] = ModMap(terms[n], terms[n - 1], k.cols, reduce=False)
    return Complex(ring, terms, diffs, rels, check=False)


def tensor_map(f, N, source=None, target=None):
    """f ⊗ N between prebuilt tensored complexes."""
    source = source or tensor_module(f.source, N)
    target = target or tensor_module(f.target, N)
    g = N.ambient.rank
    comps = {}
    for n, m in f.comps.items():
        k = kron_identity(m, g, N.ambient.shifts, left=True)
        comps[n] = ModMap(source.term(n), target.term(n), k.cols, reduce=False)
    return ChainMap(source, target, comps, check=False)


def hom_precompose(f, G):
    """Hom(f, G): Hom(f.target, G) → Hom(f.source, G), φ ↦ φ ∘ f."""
    HS = HomComplex(f.source, G)
    HT = HomComplex(f.target, G)
    ring = f.ring
    comps = {}
    for n, F in HT.complex.terms.items():
        if not HS.complex.rank(n):
            continue
        cols = []
        for b in range(F.rank):
            maps = HT.maps(n, {b: ring.one()})
            out = {k: m.compose(f.comp(k)) for k, m in maps.items() if f.source.rank(k)}
            cols.append(HS.vec(n, out))
        comps[n] = ModMap(F, HS.complex.term(n), cols, reduce=False)
    return HS, HT, ChainMap(HT.complex, HS.complex, comps, check=False)
