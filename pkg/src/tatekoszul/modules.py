"""Free modules, matrices, finitely presented modules and ideals over R.

Everything sits on top of :mod:`groebner`; Gröbner data for a matrix is
computed lazily and memoised on the (immutable) :class:`ModMap`.
"""
import threading

from .errors import PreconditionError
from .groebner import (
    GBasis,
    buchberger,
    vec_add,
    vec_degree,
    vec_freeze,
    vec_lead,
    vec_mul_poly,
    vec_neg,
    vec_nf,
    vec_scale,
)
from .ring import Poly, RingMismatch

_GB_CACHE = {}
_GB_LOCK = threading.Lock()


def _cached_gb(ring, cols, rank, shifts, quotient=True):
    """Session-wide memo of reduced bases keyed by ring and frozen generators."""
    key = (ring.key(), tuple(sorted(vec_freeze(c) for c in cols if c)), rank, tuple(shifts), quotient)
    hit = _GB_CACHE.get(key)
    if hit is not None:
        return hit
    gb = GBasis.compute(ring, cols, rank, shifts, quotient)
    with _GB_LOCK:
        if len(_GB_CACHE) > 20000:
            _GB_CACHE.clear()
        _GB_CACHE.setdefault(key, gb)
    return _GB_CACHE[key]


def clear_cache():
    with _GB_LOCK:
        _GB_CACHE.clear()


class FreeModule:
    """R^rank with basis e_i of degree ``shifts[i]``."""

    __slots__ = ("ring", "shifts")

    def __init__(self, ring, rank_or_shifts):
        self.ring = ring
        if isinstance(rank_or_shifts, int):
            if rank_or_shifts < 0:
                raise PreconditionError("rank must be non-negative")
            self.shifts = (0,) * rank_or_shifts
        else:
            self.shifts = tuple(int(s) for s in rank_or_shifts)

    @property
    def rank(self):
        return len(self.shifts)

    def __eq__(self, other):
        return isinstance(other, FreeModule) and self.shifts == other.shifts and self.ring == other.ring

    def __hash__(self):
        return hash(self.shifts)

    def __repr__(self):
        return f"FreeModule(rank={self.rank}, shifts={list(self.shifts)})"

    def basis(self, i):
        return {i: self.ring.one()}

    def twist(self, k):
        return FreeModule(self.ring, [s + k for s in self.shifts])

    def __add__(self, other):
        return FreeModule(self.ring, self.shifts + other.shifts)

    def degree_of(self, vec):
        return vec_degree(self.ring, vec, self.shifts)


class ModMap:
    """A matrix over R, stored as a list of sparse columns.

    Column ``j`` is the image of the j-th basis vector of ``source``; entries
    are kept in normal form modulo J.
    """

    def __init__(self, source, target, cols, reduce=True):
        if source.ring is not target.ring:
            source.ring.check_same(target.ring)
        self.source = source
        self.target = target
        self.ring = source.ring
        if len(cols) != source.rank:
            raise PreconditionError(f"expected {source.rank} columns, got {len(cols)}")
        ring = self.ring
        clean = []
        for c in cols:
            c = vec_nf(ring, c) if reduce else {k: v for k, v in c.items() if v}
            if any(pos >= target.rank or pos < 0 for pos in c):
                raise PreconditionError("column has an entry outside the target")
            clean.append(c)
        self.cols = clean
        self._memo = {}
        self._lock = threading.Lock()

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_rows(cls, ring, rows, source=None, target=None):
        """Build from a row-major matrix of strings, ints or :class:`Poly`."""
        nrows = len(rows)
        ncols = len(rows[0]) if rows else (source.rank if source else 0)
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise PreconditionError("ragged matrix")
            for j, e in enumerate(row):
                f = _as_raw(ring, e)
                if f:
                    cols[j][i] = f
        target = target or FreeModule(ring, nrows)
        if source is None:
            source = FreeModule(ring, [_col_degree(ring, c, target.shifts) for c in cols])
        return cls(source, target, cols)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, [{} for _ in range(source.rank)], reduce=False)

    @classmethod
    def identity(cls, module):
        one = module.ring.one()
        return cls(module, module, [{i: dict(one)} for i in range(module.rank)], reduce=False)

    @classmethod
    def scalar(cls, module, f):
        f = _as_raw(module.ring, f)
        return cls(module, module, [{i: dict(f)} if f else {} for i in range(module.rank)])

    # -- basics --------------------------------------------------------------
    @property
    def shape(self):
        return (self.target.rank, self.source.rank)

    def entry(self, i, j):
        return self.cols[j].get(i, {})

    def rows(self):
        return [[self.entry(i, j) for j in range(self.source.rank)] for i in range(self.target.rank)]

    def row_strings(self):
        fmt = self.ring.fmt
        return [[fmt(self.entry(i, j)) for j in range(self.source.rank)] for i in range(self.target.rank)]

    def __repr__(self):
        return f"ModMap({self.row_strings()})"

    def is_zero(self):
        return not any(self.cols)

    def __eq__(self, other):
        if not isinstance(other, ModMap):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.cols, other.cols))

    __hash__ = None

    def apply(self, vec):
        """Image of a vector of the source."""
        ring = self.ring
        out = {}
        for j, f in vec.items():
            if f:
                out = vec_add(ring, out, vec_mul_poly(ring, self.cols[j], f))
        return out

    def compose(self, other):
        """``self ∘ other``."""
        if other.target.rank != self.source.rank:
            raise PreconditionError("composition shape mismatch")
        return ModMap(other.source, self.target, [self.apply(c) for c in other.cols], reduce=False)

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        _check_shape(self, other)
        ring = self.ring
        return ModMap(self.source, self.target, [vec_add(ring, a, b) for a, b in zip(self.cols, other.cols)], reduce=False)

    def __sub__(self, other):
        _check_shape(self, other)
        ring = self.ring
        return ModMap(
            self.source, self.target,
            [vec_add(ring, a, vec_neg(ring, b)) for a, b in zip(self.cols, other.cols)],
            reduce=False,
        )

    def __neg__(self):
        ring = self.ring
        return ModMap(self.source, self.target, [vec_neg(ring, c) for c in self.cols], reduce=False)

    def scale(self, f):
        """Multiply every entry by the ring element ``f``."""
        ring = self.ring
        f = _as_raw(ring, f)
        return ModMap(self.source, self.target, [vec_mul_poly(ring, c, f) for c in self.cols], reduce=False)

    def scale_const(self, c):
        ring = self.ring
        return ModMap(self.source, self.target, [vec_scale(ring, v, c) for v in self.cols], reduce=False)

    def restrict(self, indices, source=None):
        source = source or FreeModule(self.ring, [self.source.shifts[j] for j in indices])
        return ModMap(source, self.target, [self.cols[j] for j in indices], reduce=False)

    def project_rows(self, indices, target=None):
        """Keep the listed target coordinates (renumbered in the given order)."""
        where = {old: new for new, old in enumerate(indices)}
        target = target or FreeModule(self.ring, [self.target.shifts[i] for i in indices])
        cols = [{where[i]: f for i, f in c.items() if i in where} for c in self.cols]
        return ModMap(self.source, target, cols, reduce=False)

    def transpose(self):
        """The dual map Hom(target, R) → Hom(source, R), shifts negated."""
        src = FreeModule(self.ring, [-s for s in self.target.shifts])
        tgt = FreeModule(self.ring, [-s for s in self.source.shifts])
        cols = [{} for _ in range(src.rank)]
        for j, c in enumerate(self.cols):
            for i, f in c.items():
                cols[i][j] = f
        return ModMap(src, tgt, cols, reduce=False)

    def is_homogeneous(self):
        """True if every entry is homogeneous of the degree forced by the shifts."""
        ring = self.ring
        for j, c in enumerate(self.cols):
            for i, f in c.items():
                want = self.source.shifts[j] - self.target.shifts[i]
                if any(ring.mono_deg(m) != want for m in f):
                    return False
        return True

    def has_unit_entry(self):
        return any(self.ring.one_mono in f for c in self.cols for f in c.values())

    # -- Gröbner data ----------------------------------------------------------
    def _get(self, key, compute):
        if key in self._memo:
            return self._memo[key]
        value = compute()
        with self._lock:
            self._memo.setdefault(key, value)
        return self._memo[key]

    def image_gb(self):
        return self._get("gb", lambda: _cached_gb(self.ring, self.cols, self.target.rank, self.target.shifts))

    def _augmented(self):
        def compute():
            n, k = self.target.rank, self.source.rank
            one = self.ring.one()
            gens = []
            for j, c in enumerate(self.cols):
                v = dict(c)
                v[n + j] = dict(one)
                gens.append(v)
            shifts = list(self.target.shifts) + list(self.source.shifts)
            gb = GBasis.compute(self.ring, gens, n + k, shifts)
            syz = []
            for g in gb.elems:
                if min(g) >= n:
                    s = {pos - n: f for pos, f in g.items()}
                    if vec_nf(self.ring, s):
                        syz.append(s)
            return gb, syz

        return self._get("aug", compute)

    def contains(self, vec):
        """Membership of ``vec`` in the column span (modulo J)."""
        return self.image_gb().contains(vec)

    def reduce(self, vec):
        return self.image_gb().reduce(vec)

    def lift(self, vec):
        """Coefficients c with ``self.apply(c) == vec`` or None."""
        n = self.target.rank
        gb, _ = self._augmented()
        r = gb.reduce({pos: f for pos, f in vec.items() if f})
        if any(pos < n for pos in r):
            return None
        ring = self.ring
        return {pos - n: ring.neg(f) for pos, f in r.items()}

    def lift_map(self, other):
        """A map c with ``self ∘ c == other`` or None."""
        cols = []
        for v in other.cols:
            c = self.lift(v)
            if c is None:
                return None
            cols.append(c)
        return ModMap(other.source, self.source, cols, reduce=False)

    def syzygy_vectors(self):
        return list(self._augmented()[1])


def _check_shape(a, b):
    if a.shape != b.shape:
        raise PreconditionError(f"shape mismatch {a.shape} vs {b.shape}")


def _as_raw(ring, e):
    if isinstance(e, Poly):
        ring.check_same(e.ring)
        return e.raw
    if isinstance(e, dict):
        return ring.nf(e)
    if isinstance(e, (str, int)):
        return ring.nf(ring.parse(e))
    raise TypeError(f"cannot interpret {e!r} as a ring element")


def _col_degree(ring, col, shifts):
    d = vec_degree(ring, col, shifts)
    return 0 if d is None else d


def hstack(maps, target=None):
    """Concatenate the columns of maps with a common target."""
    if not maps:
        if target is None:
            raise PreconditionError("hstack of nothing needs a target")
        return ModMap.zero(FreeModule(target.ring, 0), target)
    target = target or maps[0].target
    cols, shifts = [], []
    for m in maps:
        if m.target.rank != target.rank:
            raise PreconditionError("hstack target mismatch")
        cols.extend(m.cols)
        shifts.extend(m.source.shifts)
    return ModMap(FreeModule(target.ring, shifts), target, cols, reduce=False)


def block_diag(maps):
    ring = maps[0].ring
    cols, src, tgt = [], [], []
    off = 0
    for m in maps:
        for c in m.cols:
            cols.append({pos + off: f for pos, f in c.items()})
        src.extend(m.source.shifts)
        tgt.extend(m.target.shifts)
        off += m.target.rank
    return ModMap(FreeModule(ring, src), FreeModule(ring, tgt), cols, reduce=False)


def block_matrix(blocks, sources, targets):
    """Assemble ``blocks[i][j]: sources[j] → targets[i]`` (None means zero)."""
    ring = sources[0].ring if sources else targets[0].ring
    src = FreeModule(ring, [s for F in sources for s in F.shifts])
    tgt = FreeModule(ring, [s for F in targets for s in F.shifts])
    row_off = [0]
    for F in targets:
        row_off.append(row_off[-1] + F.rank)
    cols = []
    for j, F in enumerate(sources):
        for k in range(F.rank):
            col = {}
            for i in range(len(targets)):
                b = blocks[i][j]
                if b is None:
                    continue
                for pos, f in b.cols[k].items():
                    col[pos + row_off[i]] = f
            cols.append(col)
    return ModMap(src, tgt, cols, reduce=False)


def kron_identity(m, rank, shifts=None, left=True):
    """``m ⊗ id_{R^rank}`` (``left=True``) or ``id ⊗ m`` on free modules.

    Basis of a tensor product F ⊗ G is ordered (i, j) ↦ i * rank(G) + j.
    """
    ring = m.ring
    shifts = list(shifts) if shifts is not None else [0] * rank
    if left:
        src = FreeModule(ring, [a + b for a in m.source.shifts for b in shifts])
        tgt = FreeModule(ring, [a + b for a in m.target.shifts for b in shifts])
        cols = []
        for c in m.cols:
            for b in range(rank):
                cols.append({pos * rank + b: f for pos, f in c.items()})
    else:
        n = m.source.rank
        src = FreeModule(ring, [a + b for a in shifts for b in m.source.shifts])
        tgt = FreeModule(ring, [a + b for a in shifts for b in m.target.shifts])
        cols = []
        tr = m.target.rank
        for a in range(rank):
            for c in m.cols:
                cols.append({a * tr + pos: f for pos, f in c.items()})
        assert len(cols) == rank * n
    return ModMap(src, tgt, cols, reduce=False)


def syzygies(m):
    """Generators of ker(m) as a map into m.source (minimal when graded)."""
    vecs = m.syzygy_vectors()
    vecs = minimal_generators(m.source, vecs)
    src = FreeModule(m.ring, [_col_degree(m.ring, v, m.source.shifts) for v in vecs])
    return ModMap(src, m.source, vecs, reduce=False)


def is_homogeneous_vec(ring, v, shifts):
    degs = {ring.mono_deg(mo) + shifts[pos] for pos, f in v.items() for mo in f}
    return len(degs) <= 1


def minimal_generators(ambient, cols, rels=()):
    """Drop redundant generators of (span(cols) + span(rels)) / span(rels).

    For homogeneous input this returns a minimal generating set, degree by
    degree: a candidate is kept iff its normal form modulo the lower-degree
    part is linearly independent of the kept candidates of its degree.
    Inhomogeneous input is returned with zero columns removed only.
    """
    ring = ambient.ring
    shifts = ambient.shifts
    rels = [r for r in rels if r]
    cols = [c for c in (vec_nf(ring, c) for c in cols) if c]
    if not cols:
        return []
    if not all(is_homogeneous_vec(ring, c, shifts) for c in cols + rels):
        gb = _cached_gb(ring, rels, ambient.rank, shifts)
        return [c for c in cols if not gb.contains(c)]
    cols.sort(key=lambda c: (vec_degree(ring, c, shifts), _lead_sort_key(c), vec_freeze(c)))
    kept = []
    by_deg = {}
    for c in cols:
        by_deg.setdefault(vec_degree(ring, c, shifts), []).append(c)
    for d in sorted(by_deg):
        gb = _cached_gb(ring, rels + kept, ambient.rank, shifts)
        echelon = {}
        for c in by_deg[d]:
            r = gb.reduce(c)
            r = _eliminate(ring, r, echelon)
            if r:
                pos, mono, coef = vec_lead(r)
                r = vec_scale(ring, r, ring.field.inv(coef))
                for key, w in list(echelon.items()):
                    a = w.get(pos, {}).get(mono)
                    if a:
                        echelon[key] = vec_add(ring, w, vec_scale(ring, r, ring.field.neg(a)))
                echelon[(pos, mono)] = r
                kept.append(c)
    return kept


def _lead_sort_key(v):
    pos, m, _ = vec_lead(v)
    return (pos, tuple(-x for x in m))


def _eliminate(ring, r, echelon):
    """Reduce the k-vector ``r`` against a reduced echelon basis keyed by pivot."""
    for (pos, mono), w in echelon.items():
        a = r.get(pos, {}).get(mono)
        if a:
            r = vec_add(ring, r, vec_scale(ring, w, ring.field.neg(a)))
    return r


class FPModule:
    """The subquotient (im gens + im rels) / im rels of a free module.

    With ``gens`` the identity this is the cokernel of ``rels``.
    """

    def __init__(self, ambient, gens=None, rels=None):
        self.ring = ambient.ring
        self.ambient = ambient
        self.gens = gens if gens is not None else ModMap.identity(ambient)
        self.rels = rels if rels is not None else ModMap.zero(FreeModule(self.ring, 0), ambient)
        if self.gens.target.rank != ambient.rank or self.rels.target.rank != ambient.rank:
            raise PreconditionError("generators and relations must land in the ambient module")
        self._memo = {}

    @classmethod
    def free(cls, module):
        return cls(module)

    @classmethod
    def coker(cls, m):
        return cls(m.target, None, m)

    @classmethod
    def quotient_ring(cls, ideal):
        """R/I as a cyclic module."""
        ring = ideal.ring
        F = FreeModule(ring, 1)
        return cls.coker(ideal.as_row(F))

    def __repr__(self):
        return f"FPModule(ambient rank {self.ambient.rank}, {self.gens.source.rank} gens, {self.rels.source.rank} rels)"

    @property
    def is_cokernel(self):
        return self.gens == ModMap.identity(self.ambient)

    def span(self):
        """Map whose image is im gens + im rels."""
        if "span" not in self._memo:
            self._memo["span"] = hstack([self.gens, self.rels], self.ambient)
        return self._memo["span"]

    def contains(self, vec):
        return self.span().contains(vec)

    def is_zero_elem(self, vec):
        return self.rels.contains(vec)

    def is_zero(self):
        return all(self.rels.contains(c) for c in self.gens.cols)

    def minimal_gens(self):
        if "mingens" not in self._memo:
            self._memo["mingens"] = minimal_generators(self.ambient, self.gens.cols, self.rels.cols)
        return self._memo["mingens"]

    def minimalize(self):
        cols = self.minimal_gens()
        src = FreeModule(self.ring, [_col_degree(self.ring, c, self.ambient.shifts) for c in cols])
        return FPModule(self.ambient, ModMap(src, self.ambient, cols, reduce=False), self.rels)

    def presentation(self):
        """An isomorphic cokernel module coker(P: F1 → F0), F0 on minimal generators."""
        if "pres" in self._memo:
            return self._memo["pres"]
        sub = self.minimalize()
        g = sub.gens
        k = g.source.rank
        stack = hstack([g, self.rels], self.ambient)
        rel_cols = [{pos: f for pos, f in v.items() if pos < k} for v in stack.syzygy_vectors()]
        rel_cols = minimal_generators(g.source, rel_cols)
        F1 = FreeModule(self.ring, [_col_degree(self.ring, c, g.source.shifts) for c in rel_cols])
        pres = FPModule.coker(ModMap(F1, g.source, rel_cols, reduce=False))
        self._memo["pres"] = (pres, g)
        return pres, g

    def equal_submodule(self, other):
        """Same image in the same ambient quotient (compares reduced bases)."""
        a = self.span().image_gb().elems
        b = other.span().image_gb().elems
        return [vec_freeze(v) for v in a] == [vec_freeze(v) for v in b]

    def contains_module(self, other):
        return all(self.contains(c) for c in other.gens.cols)


class Ideal:
    """An ideal of R given by generators (kept in normal form, zeros dropped)."""

    def __init__(self, ring, gens):
        self.ring = ring
        raw = []
        for g in gens:
            f = _as_raw(ring, g)
            if f:
                raw.append(f)
        self.gens = raw
        self._memo = {}

    def __repr__(self):
        return f"Ideal({', '.join(self.ring.fmt(g) for g in self.gens) or '0'})"

    def strings(self):
        return [self.ring.fmt(g) for g in self.gens]

    def polys(self):
        return [Poly(self.ring, g) for g in self.gens]

    def as_row(self, F=None):
        ring = self.ring
        F = F or FreeModule(ring, 1)
        src = FreeModule(ring, [ring.degree(g) + F.shifts[0] for g in self.gens])
        return ModMap(src, F, [{0: g} for g in self.gens], reduce=False)

    def _row(self):
        if "row" not in self._memo:
            self._memo["row"] = self.as_row()
        return self._memo["row"]

    def groebner(self):
        """Reduced Gröbner basis over R (quotient relations omitted)."""
        ring = self.ring
        return [v[0] for v in self._row().image_gb().elems if ring.nf(v[0])]

    def contains(self, f):
        f = _as_raw(self.ring, f)
        return not f or self._row().contains({0: f})

    def lift(self, f):
        f = _as_raw(self.ring, f)
        c = self._row().lift({0: f} if f else {})
        if c is None:
            return None
        return [c.get(j, {}) for j in range(len(self.gens))]

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.contains_ideal(other) and other.contains_ideal(self)

    __hash__ = None

    def is_unit(self):
        return self.contains(self.ring.one())

    def is_zero(self):
        return not self.gens

    def is_homogeneous(self):
        return all(self.ring.is_homogeneous(g) for g in self.gens)

    def minimalized(self):
        F = FreeModule(self.ring, 1)
        cols = minimal_generators(F, [{0: g} for g in self.gens])
        return Ideal(self.ring, [c[0] for c in cols])

    def check_ring(self, other):
        self.ring.check_same(other.ring)

    def __add__(self, other):
        self.check_ring(other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        self.check_ring(other)
        ring = self.ring
        prods = {}
        for a in self.gens:
            for b in other.gens:
                f = ring.mul(a, b)
                if f:
                    prods.setdefault(ring.freeze(f), f)
        return Ideal(ring, [prods[k] for k in sorted(prods)]).minimalized()

    def power(self, k):
        if k < 0:
            raise PreconditionError("negative ideal power")
        key = ("pow", k)
        if key not in self._memo:
            if k == 0:
                val = Ideal(self.ring, [self.ring.one()])
            elif k == 1:
                val = self
            else:
                val = self.power(k - 1) * self.minimalized()
            self._memo[key] = val
        return self._memo[key]

    def bracket(self, r):
        """The ideal generated by r-th powers of the stored generators."""
        ring = self.ring
        return Ideal(ring, [ring.power(g, r) for g in self.gens])

    def intersection(self, other):
        return ideal_intersection(self, other)

    def colon(self, f):
        """(I : f)."""
        ring = self.ring
        f = _as_raw(ring, f)
        F = FreeModule(ring, 1)
        stack = hstack([ModMap(FreeModule(ring, [ring.degree(f)]), F, [{0: f}]), self.as_row(F)], F)
        return Ideal(ring, [v.get(0, {}) for v in stack.syzygy_vectors()]).minimalized()


def ideal_intersection(I, J):
    """I ∩ J by eliminating t from t·I + (1 − t)·J (computed over k[t, x])."""
    I.check_ring(J)
    ring = I.ring
    if not I.gens or not J.gens:
        return Ideal(ring, [])
    from .ring import RingSpec

    names = ring.names
    t = "t"
    while t in names:
        t += "_"
    big = RingSpec(ring.field, (t,) + names, (1,) + ring.weights, "elim", ())

    def up(f):
        return {big.mono((0,) + ring.exps(m)): c for m, c in f.items()}

    tv = big.var(0)
    one_minus_t = big.sub(big.one(), tv)
    gens = [big.mul_raw(tv, up(g)) for g in I.gens]
    gens += [big.mul_raw(one_minus_t, up(g)) for g in J.gens]
    gens += [up(g) for g in ring.gb]
    basis = buchberger(big, [{0: g} for g in gens], 1, quotient=False)
    out = []
    for v in basis:
        g = v[0]
        if all(big.exps(m)[0] == 0 for m in g):
            f = ring.nf({ring.mono(big.exps(m)[1:]): c for m, c in g.items()})
            if f:
                out.append(f)
    return Ideal(ring, out).minimalized()


def submodule_intersection(A, B):
    """im A ∩ im B for maps into a common free module (via ker[A | -B])."""
    stack = hstack([A, -B], A.target)
    k = A.source.rank
    coeffs = [{pos: f for pos, f in v.items() if pos < k} for v in stack.syzygy_vectors()]
    images = [A.apply(c) for c in coeffs]
    cols = minimal_generators(A.target, images)
    src = FreeModule(A.ring, [_col_degree(A.ring, c, A.target.shifts) for c in cols])
    return ModMap(src, A.target, cols, reduce=False)


def submodule_colon(U, vec):
    """{f in R : f * vec in im U}."""
    ring = U.ring
    F = U.target
    d = _col_degree(ring, vec, F.shifts)
    stack = hstack([ModMap(FreeModule(ring, [d]), F, [vec]), U], F)
    return Ideal(ring, [v.get(0, {}) for v in stack.syzygy_vectors()])


def annihilator(M):
    """Ann(M) = ∩_j (rels : g_j) for a subquotient module M."""
    ring = M.ring
    cols = M.minimal_gens()
    if not cols:
        return Ideal(ring, [ring.one()])
    result = None
    for c in cols:
        col_ideal = submodule_colon(M.rels, c)
        if result is None:
            result = col_ideal
        else:
            A, B = result.as_row(), col_ideal.as_row()
            inter = submodule_intersection(A, B)
            result = Ideal(ring, [v.get(0, {}) for v in inter.cols])
    return result.minimalized()


def colon_power(M, s, t):
    """The submodule (0 :_M s^t) in subquotient form."""
    ring = M.ring
    s = _as_raw(ring, s)
    st = ring.power(s, t)
    g = M.gens
    scaled = g.scale(st)
    stack = hstack([scaled, M.rels], M.ambient)
    k = g.source.rank
    coeffs = [{pos: f for pos, f in v.items() if pos < k} for v in stack.syzygy_vectors()]
    images = [g.apply(c) for c in coeffs]
    cols = minimal_generators(M.ambient, images, M.rels.cols)
    src = FreeModule(ring, [_col_degree(ring, c, M.ambient.shifts) for c in cols])
    return FPModule(M.ambient, ModMap(src, M.ambient, cols, reduce=False), M.rels)


def groebner_basis(m):
    """Reduced Gröbner basis of the column span of ``m``, as a map.

    Columns lying in J·R^n (the adjoined quotient relations) are omitted,
    so for an ideal this is the basis of its image in R.
    """
    ring = m.ring
    cols = [v for v in m.image_gb().elems if vec_nf(ring, v)]
    src = FreeModule(ring, [_col_degree(ring, c, m.target.shifts) for c in cols])
    return ModMap(src, m.target, cols, reduce=False)


def lift(target, through):
    """Coefficient vector c with ``through · c ≡ target``, or None."""
    return through.lift(target)


def ideal_ops(I, J, op, *args):
    """Ideal arithmetic: ``product``, ``sum``, ``intersection``, ``power``, ``bracket_power``."""
    if J is not None:
        I.check_ring(J)
    if op == "product":
        return I * J
    if op == "sum":
        return I + J
    if op == "intersection":
        return ideal_intersection(I, J)
    if op == "power":
        return I.power(args[0])
    if op == "bracket_power":
        return I.bracket(args[0])
    raise PreconditionError(f"unknown ideal operation {op!r}")


__all__ = [
    "FreeModule", "ModMap", "FPModule", "Ideal", "RingMismatch",
    "groebner_basis", "lift", "syzygies", "annihilator", "colon_power", "standard_dim",
    "ideal_ops", "ideal_intersection", "submodule_intersection",
    "minimal_generators", "hstack", "block_diag", "block_matrix", "kron_identity",
]


as_raw = _as_raw


def standard_dim(ring, shifts, cols, t):
    """dim_k (F/⟨cols⟩)_t by counting standard monomials of a Gröbner basis."""
    from .graded import monomials_of_degree

    leads = _cached_gb(ring, [c for c in cols if c], len(shifts), shifts).leads()
    count = 0
    for pos, s in enumerate(shifts):
        mine = [m for p, m in leads if p == pos]
        for exps in monomials_of_degree(ring, t - s):
            mono = ring.mono(exps)
            if not any(ring.divides(m, mono) for m in mine):
                count += 1
    return count


def same_span(A, B):
    """True if two maps into the same free module have equal images (mod J)."""
    a = [vec_freeze(v) for v in A.image_gb().elems]
    b = [vec_freeze(v) for v in B.image_gb().elems]
    return a == b
