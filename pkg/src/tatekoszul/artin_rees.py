"""Tor two ways, vanishing of Tor maps between quotients, and Artin–Rees exponents.

For a free resolution P of M with boundaries B_{i−1} = im ∂_i ⊆ P_{i−1},

    Tor_i(M, R/J) = (J·P_{i−1} ∩ B_{i−1}) / (J·B_{i−1}),

and for J′ ⊆ J the natural map Tor_i(R/J′, M) → Tor_i(R/J, M) is the
inclusion of these subquotients, so it vanishes iff J′P ∩ B ⊆ JB.
"""
from .complexes import ChainMap, Complex, direct_sum, homology, induced_map, tensor_map, tensor_module
from .errors import BudgetExceeded, PreconditionError
from .graded import subquotient_dim
from .koszul import KoszulSpec, kappa_on, koszul
from .modules import FPModule, FreeModule, Ideal, ModMap, submodule_intersection
from .resolution import min_free_resolution
from .tate import compute_h, exponents, phi_construct, tate_comparison, tate_resolution


def _as_ideal(ring, I):
    return I if isinstance(I, Ideal) else Ideal(ring, I)


def ideal_times(I, m):
    """The submodule I·(im m) as a map into m.target."""
    ring = I.ring
    cols, shifts = [], []
    for g in I.gens:
        dg = ring.degree(g)
        for c, a in zip(m.cols, m.source.shifts):
            v = {}
            for p, f in c.items():
                h = ring.mul(g, f)
                if h:
                    v[p] = h
            if v:
                cols.append(v)
                shifts.append(dg + a)
    return ModMap(FreeModule(ring, shifts), m.target, cols)


def _boundaries(P, i):
    """(P_i, im ∂_{i+1}) for a free resolution P."""
    F = P.term(i)
    if P.rank(i + 1):
        return F, P.diff(i + 1)
    return F, ModMap.zero(FreeModule(P.ring, 0), F)


def _resolve(M, top, resolution=None):
    if resolution is not None:
        return resolution
    return min_free_resolution(M, top).complex


def _quotient_ideal(N):
    N = N if N.is_cokernel else N.presentation()[0]
    if N.ambient.rank != 1 or N.ambient.shifts[0] != 0:
        raise PreconditionError("syzygy formula needs N = R/I")
    return Ideal(N.ring, [c.get(0, {}) for c in N.rels.cols])


def tor(M, N, i, method="resolution", resolution=None):
    """Tor_i(M, N) as a subquotient module."""
    if i < 0:
        raise PreconditionError("i must be non-negative")
    ring = M.ring
    if method == "resolution":
        P = _resolve(M, i + 1, resolution)
        N = N if N.is_cokernel else N.presentation()[0]
        return homology(tensor_module(P, N), i).module
    if method == "syzygy_formula":
        if i < 1:
            raise PreconditionError("the syzygy formula needs i ≥ 1")
        I = _quotient_ideal(N)
        P = _resolve(M, i, resolution)
        F, B = _boundaries(P, i - 1)
        if not F.rank:
            return FPModule(FreeModule(ring, 0))
        return _syzygy_subquotient(I, F, B)
    raise PreconditionError(f"unknown method {method!r}")


def _syzygy_subquotient(J, F, B):
    free = ModMap.identity(F)
    JP = ideal_times(J, free)
    JB = ideal_times(J, B)
    if not JP.source.rank or not B.source.rank:
        gens = ModMap.zero(FreeModule(F.ring, 0), F)
    else:
        gens = submodule_intersection(JP, B)
    return FPModule(F, gens, JB)


def module_dims(module, degrees):
    """Graded dimensions of a subquotient module via the linear-algebra oracle."""
    ring = module.ring
    sh = module.ambient.shifts
    return [subquotient_dim(ring, sh, module.gens.cols, module.rels.cols, t) for t in degrees]


class TorMapReport:
    """The natural map Tor_i(R/J′, M) → Tor_i(R/J, M) for J′ ⊆ J."""

    def __init__(self, i, source_ideal, target_ideal, module, source, target, images, witnesses, inclusion):
        self.i = i
        self.source_ideal = source_ideal
        self.target_ideal = target_ideal
        self.module = module
        self.source = source
        self.target = target
        self.images = images
        self.witnesses = witnesses
        self.inclusion = inclusion

    @property
    def is_zero(self):
        return all(w is not None for w in self.witnesses)

    def record(self):
        ring = self.module.ring
        return {
            "i": self.i,
            "source_ideal": [ring.fmt(g) for g in self.source_ideal.gens],
            "target_ideal": [ring.fmt(g) for g in self.target_ideal.gens],
            "source_generators": len(self.images),
            "is_zero": self.is_zero,
        }


def tor_map(Jp, J, M, i, resolution=None):
    """Build and zero-test Tor_i(R/J′, M) → Tor_i(R/J, M)."""
    if i < 1:
        raise PreconditionError("i must be at least 1")
    ring = M.ring
    Jp, J = _as_ideal(ring, Jp), _as_ideal(ring, J)
    inclusion = [J.lift(g) for g in Jp.gens]
    if any(c is None for c in inclusion):
        raise PreconditionError("source ideal is not contained in the target ideal")
    P = _resolve(M, i, resolution)
    F, B = _boundaries(P, i - 1)
    if not F.rank:
        empty = FPModule(FreeModule(ring, 0))
        return TorMapReport(i, Jp, J, M, empty, empty, [], [], inclusion)
    src = _syzygy_subquotient(Jp, F, B)
    tgt = _syzygy_subquotient(J, F, B)
    images = list(src.gens.cols)
    witnesses = [tgt.rels.lift(v) if v else {} for v in images]
    return TorMapReport(i, Jp, J, M, src, tgt, images, witnesses, inclusion)


def tor_map_vanishing(I, M, i, r, h_candidate, resolution=None):
    """Tor_i(R/I^{r+h}, M) → Tor_i(R/I^r, M)."""
    if r < 1:
        raise PreconditionError("r must be at least 1")
    I = _as_ideal(M.ring, I)
    return tor_map(I.power(r + h_candidate), I.power(r), M, i, resolution)


def minimal_tor_offset(I, M, i, r, budget=12):
    """Least h with Tor_i(R/I^{r+h}, M) → Tor_i(R/I^r, M) zero."""
    P = _resolve(M, i)
    for h in range(budget + 1):
        if tor_map_vanishing(I, M, i, r, h, P).is_zero:
            return h
    raise BudgetExceeded(f"no vanishing offset up to {budget}")


def _module_spec(spec):
    R = FPModule(FreeModule(spec.ring, 1))
    return spec.with_module(R)


def uniform_w(spec, r, i_window=None, budget=16):
    """w(r) = u(h_M + rd) with u from the exponents of R, checked on a window of i."""
    if r < 1:
        raise PreconditionError("r must be at least 1")
    d = spec.d
    M = spec.module
    ring = spec.ring
    exps_R = exponents(_module_spec(spec), range(1, r + 1), budget)
    h_M = compute_h(spec, range(1, r + 1), budget=budget)["h"]
    w = exps_R.u(h_M + r * d)
    i_window = list(i_window) if i_window is not None else list(range(1, d + 3))
    I = Ideal(ring, spec.elements)
    P = _resolve(M, max(i_window))
    checks = {}
    for i in i_window:
        checks[i] = tor_map(I.power(w), I.power(r), M, i, P).is_zero
    return {
        "r": r,
        "w": w,
        "h_module": h_M,
        "exponents_ring": exps_R.record(),
        "checks": checks,
        "verified_on_window": all(checks.values()),
        "status": "verified on window" if all(checks.values()) else "failed",
    }


def padded_resolution(P, k):
    """P ⊕ (R →1 R) in degrees k+1 → k: a non-minimal resolution of the same module."""
    ring = P.ring
    F = FreeModule(ring, 1)
    triv = Complex(ring, {k: F, k + 1: F}, {k + 1: ModMap.identity(F)})
    return direct_sum(P, triv)


def syzygetic_ar_check(I, M, resolution_depth, r_window, budget=8, resolution=None):
    """Least h with I^{r+h}P_i ∩ B_i ⊆ I^r B_i for all r and 0 ≤ i ≤ depth in the window."""
    r_window = list(r_window)
    if not r_window:
        raise PreconditionError("r_window must be nonempty")
    ring = M.ring
    I = _as_ideal(ring, I)
    P = _resolve(M, resolution_depth + 1, resolution)
    for h in range(budget + 1):
        ok = True
        for r in r_window:
            for i in range(resolution_depth + 1):
                F, B = _boundaries(P, i)
                if not F.rank or not B.source.rank:
                    continue
                big = ideal_times(I.power(r + h), ModMap.identity(F))
                inter = submodule_intersection(big, B)
                small = ideal_times(I.power(r), B)
                if not all(not c or small.contains(c) for c in inter.cols):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return {"h": h, "status": "holds on window", "r_window": r_window, "depth": resolution_depth}
    return {"h": None, "status": "exceeds budget", "r_window": r_window, "depth": resolution_depth}


def _koszul_tensor(spec_R, n, M):
    return tensor_module(koszul(spec_R.with_exponent(n)), M)


def koszul_tor_roundtrip(spec, i, r, mode="search", budget=12):
    """Both directions of the Koszul/Tor vanishing equivalence, with witnesses."""
    if i < 1 or r < 1:
        raise PreconditionError("i and r must be at least 1")
    ring = spec.ring
    d = spec.d
    M = spec.module
    spec_R = _module_spec(spec)
    I = Ideal(ring, spec.elements)
    top = max(d + 1, i + 1)
    P = _resolve(M, i)
    g = M.ambient.rank

    # (Tor vanishing) ⇒ (Koszul vanishing)
    wit = phi_construct(spec_R, r, mode, degree_bound=top)
    u = wit.u
    L = u * d
    v = None
    for cand in range(L, L + budget + 1):
        if tor_map(I.power(cand), I.power(L), M, i, P).is_zero:
            v = cand
            break
    if v is None:
        raise BudgetExceeded("no Tor-vanishing exponent found")
    Tv = tate_resolution(spec_R.with_exponent(v), top)
    comp = tate_comparison(Tv, wit.tate)
    KvM = tensor_module(Tv.koszul, M)
    TvM = tensor_module(Tv.complex, M)
    TuM = tensor_module(wit.tate.complex, M)
    KrM = tensor_module(wit.target, M)
    incl = tensor_map(Tv.inclusion(), M, KvM, TvM)
    chain = tensor_map(wit.phi, M, TuM, KrM).compose(tensor_map(comp, M, TvM, TuM)).compose(incl)
    kap = kappa_on(ring, spec.elements, v, r, KvM, KrM, g)
    forward = {
        "u": u,
        "tor_level": L,
        "v": v,
        "tor_map_zero": True,
        "composite_is_kappa": chain.equal(kap),
        "koszul_map_zero": induced_map(kap, i).is_zero(),
    }

    # (Koszul vanishing) ⇒ (Tor vanishing)
    w = None
    for cand in range(r, r + budget + 1):
        if induced_map(kappa_on(ring, spec.elements, cand, r, _koszul_tensor(spec_R, cand, M), KrM, g), i).is_zero():
            w = cand
            break
    if w is None:
        raise BudgetExceeded("no Koszul-vanishing exponent found")
    wit2 = phi_construct(spec_R, w, mode, degree_bound=top)
    u2 = wit2.u
    v2 = u2 * d
    Tr = tate_resolution(spec_R.with_exponent(r), top)
    TuM2 = tensor_module(wit2.tate.complex, M)
    KwM = tensor_module(wit2.target, M)
    TrM = tensor_module(Tr.complex, M)
    chain2 = (
        tensor_map(Tr.inclusion(), M, KrM, TrM)
        .compose(kappa_on(ring, spec.elements, w, r, KwM, KrM, g) if w != r else ChainMap.identity(KrM))
        .compose(tensor_map(wit2.phi, M, TuM2, KwM))
    )
    backward = {
        "w": w,
        "u": u2,
        "v": v2,
        "composite_chain_map": chain2.is_chain_map(),
        "composite_zero_on_homology": induced_map(chain2, i).is_zero(),
        "tor_map_zero": tor_map(I.power(v2), I.power(r), M, i, P).is_zero,
    }
    ok = (
        forward["composite_is_kappa"]
        and forward["koszul_map_zero"]
        and backward["composite_chain_map"]
        and backward["composite_zero_on_homology"]
        and backward["tor_map_zero"]
    )
    return {"i": i, "r": r, "forward": forward, "backward": backward, "ok": ok}


__all__ = [
    "tor",
    "module_dims",
    "ideal_times",
    "TorMapReport",
    "tor_map",
    "tor_map_vanishing",
    "minimal_tor_offset",
    "uniform_w",
    "syzygetic_ar_check",
    "padded_resolution",
    "koszul_tor_roundtrip",
    "KoszulSpec",
]
