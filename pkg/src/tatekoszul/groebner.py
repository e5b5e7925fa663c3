"""Buchberger's algorithm for submodules of free modules over k[x]/J.

A vector is a ``dict`` ``{position: poly}`` with ``poly`` a raw polynomial
dict of the ring.  The module order is position-over-term with position 0
the largest, so the leading term of a vector lives in its smallest
occupied position.  Quotient relations are handled by adjoining ``g * e_i``
for every ``g`` in the reduced basis of J and every position ``i``.
"""
from operator import add, sub

from .errors import BudgetExceeded


def vec_lead(v):
    pos = min(v)
    poly = v[pos]
    m = max(poly)
    return pos, m, poly[m]


def vec_add(ring, a, b):
    out = dict(a)
    for pos, poly in b.items():
        s = ring.add(out.get(pos, {}), poly)
        if s:
            out[pos] = s
        else:
            out.pop(pos, None)
    return out


def vec_sub(ring, a, b):
    return vec_add(ring, a, vec_neg(ring, b))


def vec_neg(ring, v):
    return {pos: ring.neg(poly) for pos, poly in v.items()}


def vec_scale(ring, v, c):
    out = {}
    for pos, poly in v.items():
        s = ring.scale(poly, c)
        if s:
            out[pos] = s
    return out


def vec_mul_term(ring, v, mono, c):
    return {pos: ring.mul_term(poly, mono, c) for pos, poly in v.items()}


def vec_mul_poly(ring, v, f):
    """``f * v`` reduced modulo J componentwise."""
    out = {}
    for pos, poly in v.items():
        s = ring.mul(poly, f)
        if s:
            out[pos] = s
    return out


def vec_nf(ring, v):
    out = {}
    for pos, poly in v.items():
        s = ring.nf(poly)
        if s:
            out[pos] = s
    return out


def vec_degree(ring, v, shifts=None):
    """Largest (weighted degree + shift) over the terms of ``v``; -inf if zero."""
    best = None
    for pos, poly in v.items():
        sh = shifts[pos] if shifts else 0
        for m in poly:
            d = ring.mono_deg(m) + sh
            if best is None or d > best:
                best = d
    return best


def vec_monic(ring, v):
    _, _, c = vec_lead(v)
    if c == 1:
        return v
    return vec_scale(ring, v, ring.field.inv(c))


def vec_freeze(v):
    return tuple(sorted((pos, tuple(sorted(poly.items()))) for pos, poly in v.items()))


def reduce_poly(ring, f, gb, lts):
    """Full reduction of a polynomial by a monic basis with leading monomials ``lts``."""
    p = ring.p
    divides = ring.divides
    f = dict(f)
    rem = {}
    while f:
        m = max(f)
        c = f.pop(m)
        for g, gm in zip(gb, lts):
            if divides(gm, m):
                q = tuple(map(sub, m, gm))
                for gmono, gc in g.items():
                    if gmono == gm:
                        continue
                    k = tuple(map(add, gmono, q))
                    v = f.get(k, 0) - c * gc
                    if p:
                        v %= p
                    if v:
                        f[k] = v
                    else:
                        f.pop(k, None)
                break
        else:
            rem[m] = c
    return rem


def reduce_vec(ring, f, index):
    """Full reduction of a vector.

    ``index`` maps a position to a list of ``(lead monomial, monic vector)``
    whose leading term sits in that position.
    """
    p = ring.p
    divides = ring.divides
    work = {pos: dict(poly) for pos, poly in f.items() if poly}
    out = {}
    while work:
        pos = min(work)
        poly = work.pop(pos)
        reducers = index.get(pos, ())
        rem = {}
        while poly:
            m = max(poly)
            c = poly.pop(m)
            for gm, g in reducers:
                if divides(gm, m):
                    break
            else:
                rem[m] = c
                continue
            q = tuple(map(sub, m, gm))
            for gpos, gpoly in g.items():
                if gpos == pos:
                    target = poly
                else:
                    target = work.setdefault(gpos, {})
                for gmono, gc in gpoly.items():
                    if gpos == pos and gmono == gm:
                        continue
                    k = tuple(map(add, gmono, q))
                    v = target.get(k, 0) - c * gc
                    if p:
                        v %= p
                    if v:
                        target[k] = v
                    else:
                        target.pop(k, None)
        if rem:
            out[pos] = rem
    return out


def build_index(elems):
    index = {}
    for v in elems:
        pos, m, _ = vec_lead(v)
        index.setdefault(pos, []).append((m, v))
    return index


def _single(v):
    return len(v) == 1


def buchberger(ring, gens, rank, shifts=None, quotient=True, max_pairs=None):
    """Reduced Gröbner basis of the span of ``gens`` (plus J e_i if ``quotient``).

    Sugar strategy with Gebauer–Möller pair elimination.  The result is
    sorted by leading term (position ascending, monomial descending), so it
    only depends on the module and never on the order of ``gens``.
    """
    shifts = shifts or [0] * rank
    elems, lts, sugar, single = [], [], [], []
    active = []
    index = {}
    pairs = []

    def deg_of(m, pos):
        return ring.mono_deg(m) + shifts[pos]

    def insert(v, s, make_pairs=True):
        h = len(elems)
        pos, mh, _ = vec_lead(v)
        elems.append(v)
        lts.append((pos, mh))
        sugar.append(s)
        single.append(_single(v))
        if make_pairs:
            _update(h)
        else:
            active.append(h)
        index.setdefault(pos, []).append((mh, v))

    def _update(h):
        ph, mh = lts[h]
        same = [g for g in active if lts[g][0] == ph]
        cand = [(g, ring.mono_lcm(mh, lts[g][1])) for g in same]
        keep = []
        for idx, (g, L) in enumerate(cand):
            if single[h] and single[g] and ring.coprime(mh, lts[g][1]):
                keep.append((g, L))
                continue
            if any(ring.divides(L2, L) for _, L2 in cand[idx + 1:]):
                continue
            if any(ring.divides(L2, L) for _, L2 in keep):
                continue
            keep.append((g, L))
        new_pairs = [
            (g, L) for g, L in keep
            if not (single[h] and single[g] and ring.coprime(mh, lts[g][1]))
        ]
        survivors = []
        for pr in pairs:
            i, j, pos, L, s = pr
            if (
                pos == ph
                and ring.divides(mh, L)
                and ring.mono_lcm(lts[i][1], mh) != L
                and ring.mono_lcm(lts[j][1], mh) != L
            ):
                continue
            survivors.append(pr)
        for g, L in new_pairs:
            s = max(sugar[h] - deg_of(mh, ph), sugar[g] - deg_of(lts[g][1], ph)) + deg_of(L, ph)
            survivors.append((g, h, ph, L, s))
        pairs[:] = survivors
        removed = [g for g in active if lts[g][0] == ph and ring.divides(mh, lts[g][1])]
        for g in removed:
            active.remove(g)
            lst = index[ph]
            for k, (_, v) in enumerate(lst):
                if v is elems[g]:
                    del lst[k]
                    break
        active.append(h)

    if quotient and ring.gb:
        for pos in range(rank):
            for g in ring.gb:
                v = {pos: g}
                insert(v, deg_of(max(g), pos), make_pairs=False)

    prepared = []
    for v in gens:
        v = {pos: dict(poly) for pos, poly in v.items() if poly}
        if v:
            prepared.append(v)
    prepared.sort(key=lambda v: (vec_degree(ring, v, shifts), vec_freeze(v)))
    for v in prepared:
        r = reduce_vec(ring, v, index)
        if r:
            insert(vec_monic(ring, r), max(vec_degree(ring, v, shifts), vec_degree(ring, r, shifts)))

    steps = 0
    while pairs:
        best = min(range(len(pairs)), key=lambda k: (pairs[k][4], pairs[k][2], pairs[k][3], pairs[k][0], pairs[k][1]))
        i, j, pos, L, s = pairs.pop(best)
        steps += 1
        if max_pairs is not None and steps > max_pairs:
            raise BudgetExceeded("Gröbner basis pair budget exhausted")
        gi, gj = elems[i], elems[j]
        one = ring.field.one
        svec = vec_add(
            ring,
            vec_mul_term(ring, gi, tuple(map(sub, L, lts[i][1])), one),
            vec_mul_term(ring, gj, tuple(map(sub, L, lts[j][1])), ring.field.neg(one)),
        )
        r = reduce_vec(ring, svec, index)
        if r:
            insert(vec_monic(ring, r), max(s, vec_degree(ring, r, shifts)))

    basis = [elems[g] for g in active]
    final_index = build_index(basis)
    reduced = []
    for v in basis:
        pos, m, c = vec_lead(v)
        tail = {q: dict(poly) for q, poly in v.items()}
        del tail[pos][m]
        if not tail[pos]:
            del tail[pos]
        t = reduce_vec(ring, tail, final_index)
        t.setdefault(pos, {})[m] = c
        reduced.append(t)
    reduced.sort(key=lambda v: _lead_key(v))
    return reduced


def _lead_key(v):
    pos, m, _ = vec_lead(v)
    return (pos, tuple(-x for x in m))


class GBasis:
    """A reduced Gröbner basis with its reduction index."""

    def __init__(self, ring, rank, elems, shifts=None):
        self.ring = ring
        self.rank = rank
        self.shifts = list(shifts) if shifts is not None else [0] * rank
        self.elems = elems
        self.index = build_index(elems)

    @classmethod
    def compute(cls, ring, gens, rank, shifts=None, quotient=True):
        return cls(ring, rank, buchberger(ring, gens, rank, shifts, quotient), shifts)

    def reduce(self, v):
        return reduce_vec(self.ring, v, self.index)

    def contains(self, v):
        return not self.reduce(v)

    def leads(self):
        return [vec_lead(v)[:2] for v in self.elems]

    def __len__(self):
        return len(self.elems)
