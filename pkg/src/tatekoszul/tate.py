"""Tate-style resolutions T′(s̃; M) and the factorisation φ of κ^{u,r} through them.

T′_m = K_m(s̃; M) ⊕ R^{t_m}: the Koszul complex with free modules adjoined
to kill cycles degree by degree.  Relations of M live only on the Koszul
block, and the Koszul block always occupies the first positions of T′_m.
"""
from dataclasses import dataclass, field

from .complexes import (
    ChainMap,
    Complex,
    extend_chain_map,
    hom_precompose,
    homology,
    induced_map,
    tensor_map,
    tensor_module,
)
from .errors import BudgetExceeded, PreconditionError, VerificationError
from .koszul import (
    KoszulSpec,
    degree_zero_complex,
    kappa_on,
    koszul,
    koszul_h0_matches,
    stabilization_l,
    subsets,
)
from .modules import FPModule, FreeModule, ModMap, hstack, minimal_generators
from .resolution import min_free_resolution


def _embed(m, target, offset=0):
    """Reinterpret the columns of ``m`` inside a larger free module."""
    cols = [{p + offset: f for p, f in c.items()} for c in m.cols]
    return ModMap(m.source, target, cols, reduce=False)


class TateData:
    """T′(s̃; M) built up to ``degree_bound``.

    ``koszul_ranks[m]`` is the rank of the Koszul block of T′_m,
    ``adjoined[m]`` the number t_m of extra generators, and ``cycles[j]``
    the generator list S_j whose images define ∂_{j+1} on R^{t_{j+1}}.
    """

    def __init__(self, spec, complex_, koszul_complex, cycles, degree_bound):
        self.base = spec
        self.complex = complex_
        self.koszul = koszul_complex
        self.cycles = cycles
        self.degree_bound = degree_bound
        self.koszul_ranks = {m: koszul_complex.rank(m) for m in range(degree_bound + 1)}
        self.adjoined = {m: complex_.rank(m) - self.koszul_ranks[m] for m in range(degree_bound + 1)}

    @property
    def t(self):
        return [self.adjoined[m] for m in range(self.degree_bound + 1)]

    def is_koszul(self):
        return not any(self.t)

    def inclusion(self):
        """The split inclusion K(s̃; M) → T′(s̃; M)."""
        K, T = self.koszul, self.complex
        comps = {m: _embed(ModMap.identity(K.term(m)), T.term(m)) for m in K.terms if T.rank(m)}
        return ChainMap(K, T, comps, check=False)

    def verify(self):
        """Check the defining properties; returns a dict of named booleans."""
        T, K = self.complex, self.koszul
        restrict = True
        for m in range(1, self.degree_bound + 1):
            if not K.rank(m):
                continue
            d = T.diff(m)
            for j, col in enumerate(K.diff(m).cols):
                if d.cols[j] != col:
                    restrict = False
        acyclic = all(homology(T, i).is_zero() for i in range(1, self.degree_bound))
        counts = all(self.adjoined.get(j + 1, 0) == len(self.cycles.get(j, [])) for j in range(1, self.degree_bound))
        out = {
            "restriction": restrict,
            "acyclic_below_bound": acyclic,
            "h0": koszul_h0_matches(self.base),
            "t_matches_cycles": counts and self.adjoined.get(1, 0) == 0,
            "chain_complex": not T.check(),
        }
        return out


def tate_resolution(spec, degree_bound):
    """Build T′(s̃; M) for ``spec`` (elements, exponent and module) up to ``degree_bound``."""
    if degree_bound < 1:
        raise PreconditionError("degree_bound must be at least 1")
    ring = spec.ring
    K = koszul(spec)
    terms, diffs, rels, cycles = {}, {}, {}, {}
    for m in range(0, 2):
        if K.rank(m):
            terms[m] = K.term(m)
        if m in K.diffs:
            diffs[m] = K.diff(m)
        if m in K.rels:
            rels[m] = K.rels[m]
    zero = FreeModule(ring, 0)
    for j in range(1, degree_bound):
        Tj = terms.get(j, zero)
        if not Tj.rank:
            break
        prev = terms.get(j - 1, zero)
        d = diffs.get(j)
        if prev.rank and d is not None:
            rel_prev = rels.get(j - 1, ModMap.zero(zero, prev))
            stack = hstack([d, rel_prev], prev)
            k = Tj.rank
            z = [w for w in ({p: f for p, f in v.items() if p < k} for v in stack.syzygy_vectors()) if w]
        else:
            z = [{i: ring.one()} for i in range(Tj.rank)]
        bounds = list(rels[j].cols) if j in rels else []
        if K.rank(j + 1):
            bounds += K.diff(j + 1).cols
        S = minimal_generators(Tj, z, bounds)
        cycles[j] = S
        kshift = list(K.term(j + 1).shifts) if K.rank(j + 1) else []
        new_shifts = kshift + [Tj.degree_of(c) or 0 for c in S]
        if not new_shifts:
            break
        Tn = FreeModule(ring, new_shifts)
        terms[j + 1] = Tn
        cols = (list(K.diff(j + 1).cols) if K.rank(j + 1) else []) + list(S)
        diffs[j + 1] = ModMap(Tn, Tj, cols, reduce=False)
        if j + 1 in K.rels:
            rels[j + 1] = _embed(K.rels[j + 1], Tn)
    T = Complex(ring, terms, diffs, rels, check=False)
    return TateData(spec, T, K, cycles, degree_bound)


# -- exponents -----------------------------------------------------------------


@dataclass
class Exponents:
    """The stabilisation exponent l, the vanishing exponent h and derived bounds."""

    l: int
    h: int
    d: int
    provenance: dict = field(default_factory=dict)

    def q(self, n, r):
        return self.h + (n + r) * self.d

    def q_iter(self, i, r):
        """q^{(0)} = h + rd − r and q^{(i)} = q(q^{(i−1)} + l, r) − r."""
        val = self.h + r * self.d - r
        for _ in range(i):
            val = self.q(val + self.l, r) - r
        return val

    def q_closed(self, i, r):
        d = self.d
        geo = sum(d ** j for j in range(i + 1))
        lower = sum(d ** j for j in range(i))
        return self.h * geo + r * d ** (i + 1) + self.l * lower * d - r

    def u(self, r):
        d = self.d
        return (self.h + self.l) * sum(d ** j for j in range(d)) + r * d ** d

    def w(self, r, h_module=None):
        h = self.h if h_module is None else h_module
        return self.u(h + r * self.d)

    def record(self):
        return {"l": self.l, "h": self.h, "d": self.d, "provenance": dict(self.provenance)}


class _KoszulCache:
    """Koszul complexes K(s̃^n; M) keyed by n, built on demand."""

    def __init__(self, spec):
        self.spec = spec
        self.store = {}

    def __call__(self, n):
        if n not in self.store:
            self.store[n] = koszul(self.spec.with_exponent(n))
        return self.store[n]

    def kappa(self, n, k):
        s = self.spec
        return kappa_on(s.ring, s.elements, n, k, self(n), self(k), s.module.ambient.rank)


def kappa_vanishes(cache, n, k, degrees):
    """True if H_i(κ^{n,k}) = 0 for every i in ``degrees``."""
    f = cache.kappa(n, k)
    return all(induced_map(f, i).is_zero() for i in degrees)


def compute_h(spec, r_window=(1, 2, 3), i_window=None, budget=16, cache=None):
    """Least h with H_i(κ^{h+rd, r}) = 0 for r in ``r_window`` and 1 ≤ i ≤ min(d, max i_window)."""
    r_window = list(r_window)
    if not r_window:
        raise PreconditionError("r_window must be nonempty")
    d = spec.d
    top = d if not i_window else min(d, max(i_window))
    cache = cache or _KoszulCache(spec)
    degrees = range(1, top + 1)
    for h in range(budget + 1):
        if all(kappa_vanishes(cache, h + r * d, r, degrees) for r in r_window):
            return {"h": h, "provenance": {"windowed": {"r": r_window, "i": list(degrees)}}}
    raise BudgetExceeded(f"no h ≤ {budget} kills the Koszul comparison maps")


def exponents(spec, r_window=(1, 2, 3), budget=16, cache=None):
    l_info = stabilization_l(spec.ring, spec.elements, spec.module, budget=budget)
    h_info = compute_h(spec, r_window, budget=budget, cache=cache)
    prov = {"l": "instance-certified", "h": h_info["provenance"]}
    return Exponents(l_info["l"], h_info["h"], spec.d, prov)


# -- the factorisation φ -------------------------------------------------------


class _Escalate(Exception):
    pass


class PhiWitness:
    """φ: T′(s̃^u; M) → K(s̃^r; M) restricting to κ^{u,r} on the Koszul part."""

    def __init__(self, u, r, mode, phi, tate, target, exps=None, attempts=None):
        self.u = u
        self.r = r
        self.mode = mode
        self.phi = phi
        self.tate = tate
        self.target = target
        self.exponents = exps
        self.attempts = attempts or []
        self.verification = {}

    def verify(self):
        phi, T, K = self.phi, self.tate.complex, self.target
        spec = self.tate.base
        kap = kappa_on(spec.ring, spec.elements, self.u, self.r, self.tate.koszul, K, spec.module.ambient.rank)
        restrict = True
        for m in self.tate.koszul.terms:
            km = self.tate.koszul_ranks[m]
            if km and phi.comp(m).cols[:km] != kap.comp(m).cols:
                restrict = False
        d = spec.d
        top = phi.comp(d).compose(T.diff(d + 1)) if T.rank(d + 1) else None
        top_ok = top is None or all(not c or K.rel(d).contains(c) for c in top.cols)
        phi0 = phi.comp(0) == ModMap.identity(K.term(0))
        squares = phi.check()
        self.verification = {
            "squares": not squares,
            "failed_squares": squares,
            "restriction": restrict,
            "top_vanishing": top_ok,
            "phi0_identity": phi0,
        }
        return self.verification

    @property
    def ok(self):
        v = self.verification or self.verify()
        return v["squares"] and v["restriction"] and v["top_vanishing"] and v["phi0_identity"]

    def record(self):
        v = self.verification or self.verify()
        out = {
            "u": self.u,
            "r": self.r,
            "mode": self.mode,
            "t": self.tate.t,
            "verification": {k: v[k] for k in sorted(v)},
            "attempts": self.attempts,
            "components": {str(n): self.phi.comp(n).row_strings() for n in sorted(self.phi.comps)},
        }
        if self.exponents is not None:
            out["exponents"] = self.exponents.record()
            out["formula_u"] = self.exponents.u(self.r)
        return out


def _monomial_factor(ring, elements, sub, e):
    f = ring.one()
    for i in sub:
        f = ring.mul(f, ring.power(elements[i], e))
    return f


def _through(K, m):
    """[∂_m | ρ_{m−1}] for lifting into K_m."""
    return hstack([K.diff(m), K.rel(m - 1)], K.term(m - 1))


def _lift_first(through, vec, k):
    if not vec:
        return {}
    c = through.lift(vec)
    if c is None:
        return None
    return {p: f for p, f in c.items() if p < k}


def _is_zero_mod(K, m, vec):
    return not vec or K.rel(m).contains(vec)


def _divide(spec, m, vec, e, memo):
    """x′ with vec_ĩ = ∏_{i∈ĩ} s_i^e · x′_ĩ (mod relations) in K_m, or None."""
    ring = spec.ring
    G = spec.module.ambient
    rho = spec.module.rels
    g = G.rank
    out = {}
    for k, sub in enumerate(subsets(spec.d, m)):
        block = {p - k * g: f for p, f in vec.items() if k * g <= p < (k + 1) * g}
        if not block:
            continue
        key = (sub, e)
        if key not in memo:
            f = _monomial_factor(ring, spec.elements, sub, e)
            memo[key] = hstack([ModMap.scalar(G, f), rho], G)
        c = memo[key].lift(block)
        if c is None:
            return None
        for p, f in c.items():
            if p < g:
                out[k * g + p] = f
    return out


def _scale_blocks(spec, m, vec, e):
    ring = spec.ring
    g = spec.module.ambient.rank
    out = {}
    for p, f in vec.items():
        sub = subsets(spec.d, m)[p // g]
        h = ring.mul(f, _monomial_factor(ring, spec.elements, sub, e))
        if h:
            out[p] = h
    return out


def _build_phi(spec, r, u, tate, cache, exps=None):
    """Construct φ degree by degree; divisibility steps when ``exps`` is given, else arbitrary lifts."""
    ring = spec.ring
    d = spec.d
    T = tate.complex
    K = cache(r)
    kap = cache.kappa(u, r) if u != r else ChainMap.identity(K)
    comps = {0: ModMap.identity(K.term(0))}
    memo = {}
    through_cache = {}
    for m in range(1, d + 2):
        if not T.rank(m):
            continue
        km = tate.koszul_ranks.get(m, 0)
        cols = list(kap.comp(m).cols) if km else []
        prev = comps.get(m - 1)
        for col in T.diff(m).cols[km:]:
            c = prev.apply(col) if prev is not None else {}
            if m == d + 1:
                if not _is_zero_mod(K, d, c):
                    raise _Escalate(f"top-degree obstruction at degree {m}")
                cols.append({})
                continue
            if exps is None:
                key = ("K", r, m)
                if key not in through_cache:
                    through_cache[key] = _through(K, m)
                y = _lift_first(through_cache[key], c, K.rank(m))
                if y is None:
                    raise _Escalate(f"no lift at degree {m}")
                cols.append(y)
                continue
            n = exps.q_iter(d - m + 1, r)
            xp = _divide(spec, m - 1, c, exps.l + n, memo)
            if xp is None:
                raise VerificationError(f"divisibility failed at degree {m}")
            z = _scale_blocks(spec, m - 1, xp, exps.l)
            Kz = cache(n + r)
            if m - 1 >= 1 and not _is_zero_mod(Kz, m - 2, Kz.diff(m - 1).apply(z)):
                raise VerificationError(f"divided element is not a cycle at degree {m - 1}")
            n2 = exps.q_iter(d - m, r) + exps.l
            if n + r != exps.q(n2, r):
                raise VerificationError("exponent bookkeeping mismatch")
            Kw = cache(n2 + r)
            z2 = cache.kappa(n + r, n2 + r).comp(m - 1).apply(z)
            key = ("K", n2 + r, m)
            if key not in through_cache:
                through_cache[key] = _through(Kw, m)
            w = _lift_first(through_cache[key], z2, Kw.rank(m))
            if w is None:
                raise _Escalate(f"Koszul comparison map not zero on homology at degree {m - 1}")
            cols.append(cache.kappa(n2 + r, r).comp(m).apply(w))
        comps[m] = ModMap(T.term(m), K.term(m), cols, reduce=False)
    return ChainMap(T, K, comps, check=False)


def phi_construct(
    spec, r, mode="paper_bound", exps=None, u=None, budget=16, search_limit=None, r_window=None, degree_bound=None
):
    """A verified φ: T′(s̃^u; M) → K(s̃^r; M) extending κ^{u,r}.

    ``paper_bound`` follows the divisibility argument with u = u(r) (or a
    given u ≥ u(r)); ``search`` tries u = r, r+1, … with arbitrary lifts and
    hands over to the divisibility construction once u reaches the formula value.
    """
    if r < 1:
        raise PreconditionError("r must be at least 1")
    if mode not in ("paper_bound", "search"):
        raise PreconditionError(f"unknown mode {mode!r}")
    spec = spec.with_exponent(1)
    d = spec.d
    top = max(d + 1, degree_bound or 0)
    cache = _KoszulCache(spec)
    attempts = []
    if mode == "search":
        limit = search_limit
        formula = None
        if limit is None:
            exps = exps or exponents(spec, r_window or range(1, r + 2), budget, cache)
            formula = exps.u(r)
            limit = formula - 1
        for cand in range(r, limit + 1):
            tate = tate_resolution(spec.with_exponent(cand), top)
            try:
                phi = _build_phi(spec, r, cand, tate, cache)
            except _Escalate as exc:
                attempts.append({"u": cand, "failure": str(exc)})
                continue
            wit = PhiWitness(cand, r, "search", phi, tate, cache(r), exps, attempts)
            if not wit.ok:
                raise VerificationError(f"search witness at u = {cand} fails verification")
            return wit
        if exps is None:
            exps = exponents(spec, r_window or range(1, r + 2), budget, cache)
        wit = phi_construct(spec, r, "paper_bound", exps, max(u or 0, exps.u(r)), budget, degree_bound=degree_bound)
        wit.attempts = attempts + wit.attempts
        return wit
    exps = exps or exponents(spec, r_window or range(1, r + 2), budget, cache)
    h = exps.h
    while True:
        cur = Exponents(exps.l, h, d, dict(exps.provenance))
        if h != exps.h:
            cur.provenance["h"] = {"escalated_from": exps.h}
        target_u = max(u or 0, cur.u(r))
        tate = tate_resolution(spec.with_exponent(target_u), top)
        try:
            phi = _build_phi(spec, r, target_u, tate, cache, cur)
        except _Escalate as exc:
            attempts.append({"u": target_u, "h": h, "failure": str(exc)})
            h += 1
            if h > exps.h + budget:
                raise BudgetExceeded("h escalation exceeded its budget") from exc
            continue
        wit = PhiWitness(target_u, r, "paper_bound", phi, tate, cache(r), cur, attempts)
        if not wit.ok:
            raise VerificationError(f"formula-bound witness at u = {target_u} fails verification")
        return wit


def tate_comparison(Tv, Tu):
    """Chain map T′(s̃^v; M) → T′(s̃^u; M), v ≥ u, equal to κ^{v,u} on the Koszul block."""
    spec = Tv.base
    v, u = spec.exponent, Tu.base.exponent
    if v < u:
        raise PreconditionError("comparison needs v ≥ u")
    S, T = Tv.complex, Tu.complex
    kap = kappa_on(spec.ring, spec.elements, v, u, Tv.koszul, Tu.koszul, spec.module.ambient.rank)
    comps = {}
    for m in range(0, min(S.hi, T.hi) + 1):
        if not S.rank(m):
            continue
        km = Tv.koszul_ranks.get(m, 0)
        cols = [dict(c) for c in kap.comp(m).cols] if km else []
        if km < S.rank(m):
            through = hstack([T.diff(m), T.rel(m - 1)], T.term(m - 1))
            prev = comps[m - 1]
            for col in S.diff(m).cols[km:]:
                y = _lift_first(through, prev.apply(col), T.rank(m))
                if y is None:
                    raise VerificationError(f"Tate comparison cannot be extended to degree {m}")
                cols.append(y)
        comps[m] = ModMap(S.term(m), T.term(m), cols, reduce=False)
    return ChainMap(S, T, comps)


# -- ξ and the comparison maps -------------------------------------------------


def quotient_by_powers(spec, u):
    """M/(s̃^u)M as a cokernel module."""
    M = spec.module
    ring = spec.ring
    cols = list(M.rels.cols)
    sh = list(M.rels.source.shifts)
    for s in spec.elements:
        p = ring.power(s, u)
        if not p:
            continue
        for a in range(M.ambient.rank):
            cols.append({a: p})
            sh.append(M.ambient.degree_of({a: p}) or 0)
    return FPModule.coker(ModMap(FreeModule(ring, sh), M.ambient, cols))


class XiWitness:
    def __init__(self, phi_witness, resolution, psi, xi):
        self.phi = phi_witness
        self.resolution = resolution
        self.psi = psi
        self.xi = xi

    @property
    def u(self):
        return self.phi.u

    def h0_is_natural(self):
        """ξ_0 sends the resolution's generators to their images in M."""
        return self.xi.comp(0) == self.resolution.gens

    def record(self):
        return {
            "u": self.u,
            "r": self.phi.r,
            "mode": self.phi.mode,
            "chain_map": self.xi.is_chain_map(),
            "h0_natural": self.h0_is_natural(),
            "resolution_ranks": [self.resolution.complex.rank(n) for n in range(self.resolution.complex.hi + 1)],
        }


def xi_construct(spec, r, mode="search", **kw):
    """ξ = φ∘ψ from a minimal resolution of M/(s̃^u)M to K(s̃^r; M)."""
    wit = phi_construct(spec, r, mode, **kw)
    d = spec.d
    res = min_free_resolution(quotient_by_powers(spec, wit.u), d + 1)
    P, T = res.complex, wit.tate.complex
    g = res.gens
    psi0 = ModMap(P.term(0), T.term(0), g.cols, reduce=False)
    psi = extend_chain_map(P, T, {0: psi0}, d + 1)
    xi = wit.phi.compose(psi)
    out = XiWitness(wit, res, psi, xi)
    if not xi.is_chain_map() or not out.h0_is_natural():
        raise VerificationError("ξ fails verification")
    return out


def comparison_maps(spec, r, N, degrees=None, mode="search", **kw):
    """Tor and Ext comparison maps induced by φ for M = R.

    Tor: H_i(T′(s̃^u) ⊗ N) → H_i(K(s̃^r; N)).  Ext: H^i(Hom(K(s̃^r), N)) →
    H^i(Hom(T′(s̃^u), N)).  Returns zero-ness per degree.
    """
    if spec.module.ambient.rank != 1 or spec.module.rels.source.rank:
        raise PreconditionError("comparison maps are formed for M = R")
    wit = phi_construct(spec, r, mode, **kw)
    d = spec.d
    degrees = list(degrees) if degrees is not None else list(range(1, d + 1))
    N = N if N.is_cokernel else N.presentation()[0]
    TN = tensor_module(wit.tate.complex, N)
    KN = tensor_module(wit.target, N)
    tor = tensor_map(wit.phi, N, TN, KN)
    tor_zero = {i: induced_map(tor, i).is_zero() for i in degrees}
    HS, HT, ext = hom_precompose(wit.phi, degree_zero_complex(N))
    ext_zero = {i: induced_map(ext, -i).is_zero() for i in degrees}
    return {"u": wit.u, "r": r, "tor_zero": tor_zero, "ext_zero": ext_zero, "witness": wit}


__all__ = [
    "TateData",
    "tate_resolution",
    "Exponents",
    "compute_h",
    "exponents",
    "kappa_vanishes",
    "PhiWitness",
    "phi_construct",
    "quotient_by_powers",
    "tate_comparison",
    "XiWitness",
    "xi_construct",
    "comparison_maps",
    "KoszulSpec",
]
