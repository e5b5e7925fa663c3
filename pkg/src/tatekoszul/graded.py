"""Graded-piece linear algebra, independent of the Gröbner engine.

Each graded piece of a finitely presented module over R = k[x]/J is a
finite-dimensional k-vector space.  These helpers expand generators into
all monomial multiples of a given degree and take ranks by Gaussian
elimination, so their answers can cross-check anything computed with
Gröbner bases.
"""
from itertools import product


def monomials_of_degree(ring, t):
    """Exponent tuples of weighted degree ``t``."""
    if t < 0:
        return []
    w = ring.weights
    out = []

    def rec(i, left, acc):
        if i == len(w) - 1:
            if left % w[i] == 0:
                out.append(tuple(acc + [left // w[i]]))
            return
        for e in range(left // w[i] + 1):
            rec(i + 1, left - e * w[i], acc + [e])

    rec(0, t, [])
    return out


def rank_of(vectors, p):
    """Rank of sparse vectors ``{key: coef}`` over F_p (or Q when p == 0)."""
    pivots = {}
    rank = 0
    for v in vectors:
        v = {k: c for k, c in v.items() if c}
        while v:
            key = max(v)
            if key not in pivots:
                inv = pow(v[key], -1, p) if p else 1 / v[key]
                v = {k: (c * inv) % p if p else c * inv for k, c in v.items()}
                pivots[key] = v
                rank += 1
                break
            w = pivots[key]
            a = v[key]
            for k, c in w.items():
                val = v.get(k, 0) - a * c
                if p:
                    val %= p
                if val:
                    v[k] = val
                else:
                    v.pop(k, None)
    return rank


def _expand(ring, vec, vec_deg, shifts, t):
    """All products m * vec with m a monomial and deg = t, as k-vectors."""
    out = []
    for e in monomials_of_degree(ring, t - vec_deg):
        mono = ring.mono(e)
        w = {}
        for pos, f in vec.items():
            for m, c in f.items():
                w[(pos, ring.exps(tuple(a + b for a, b in zip(m, mono))))] = c
        out.append(w)
    return out


def _vec_deg(ring, vec, shifts):
    for pos, f in vec.items():
        for m in f:
            return ring.mono_deg(m) + shifts[pos]
    return None


def _homogeneous_parts(ring, vec, shifts):
    parts = {}
    for pos, f in vec.items():
        for m, c in f.items():
            d = ring.mono_deg(m) + shifts[pos]
            parts.setdefault(d, {}).setdefault(pos, {})[m] = c
    return parts


def submodule_piece(ring, shifts, gens, t, with_quotient=True):
    """Spanning k-vectors of (span(gens) + J F)_t inside F = ⊕ S(-shifts)."""
    vecs = []
    for g in gens:
        for d, part in _homogeneous_parts(ring, g, shifts).items():
            vecs.extend(_expand(ring, part, d, shifts, t))
    if with_quotient:
        for g in ring.quotient_gens:
            dg = ring.degree(g)
            for pos, a in enumerate(shifts):
                vecs.extend(_expand(ring, {pos: g}, dg + a, shifts, t))
    return vecs


def free_dim(ring, shifts, t):
    """dim_k of the degree-t piece of the ambient free S-module."""
    return sum(len(monomials_of_degree(ring, t - a)) for a in shifts)


def quotient_dim(ring, shifts, gens, t):
    """dim_k (F / (span(gens) + J F))_t."""
    return free_dim(ring, shifts, t) - rank_of(submodule_piece(ring, shifts, gens, t), ring.p)


def subquotient_dim(ring, shifts, num, den, t):
    """dim_k ((num + den + JF) / (den + JF))_t."""
    p = ring.p
    big = rank_of(submodule_piece(ring, shifts, list(num) + list(den), t), p)
    small = rank_of(submodule_piece(ring, shifts, list(den), t), p)
    return big - small


def _map_images(ring, cols, src_shifts, tgt_shifts, t):
    """Images of a k-basis of the degree-t piece of the source."""
    out = []
    for j, a in enumerate(src_shifts):
        for e in monomials_of_degree(ring, t - a):
            mono = ring.mono(e)
            w = {}
            for pos, f in cols[j].items():
                for m, c in f.items():
                    key = (pos, ring.exps(tuple(x + y for x, y in zip(m, mono))))
                    v = w.get(key, 0) + c
                    if ring.p:
                        v %= ring.p
                    w[key] = v
            out.append(w)
    return out


def homology_dim(ring, terms, rels, diffs, n, t):
    """dim_k H_n at internal degree t for a complex of (free mod relations) terms.

    ``terms[n]`` are shift lists, ``rels[n]`` relation columns in that free
    module, ``diffs[n]`` the columns of ∂_n : terms[n] → terms[n-1].
    """
    p = ring.p
    Fn = terms.get(n, [])
    if not Fn:
        return 0
    # cycles: kernel of F_n,t -> F_{n-1,t} / C
    if n - 1 in terms and terms[n - 1]:
        C = submodule_piece(ring, terms[n - 1], rels.get(n - 1, []), t)
        rc = rank_of(list(C), p)
        imgs = _map_images(ring, diffs[n], Fn, terms[n - 1], t)
        rank_map = rank_of(list(C) + imgs, p) - rc
    else:
        rank_map = 0
    z = free_dim(ring, Fn, t) - rank_map
    bounds = list(rels.get(n, []))
    if n + 1 in terms and terms[n + 1]:
        bounds += [c for c in diffs[n + 1] if c]
    d = rank_of(submodule_piece(ring, Fn, bounds, t), p)
    return z - d


def hilbert_window(fn, degrees):
    return [fn(t) for t in degrees]


def grid(*ranges):
    return list(product(*ranges))
