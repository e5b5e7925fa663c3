"""Filtrations of ideals, window certificates for eventually finite projective dimension.

A filtration {J_n} of I is equivalent to the I-adic one when every I^k
contains some J_n and every J_n contains some I^k.  Only finitely many
k and n can be checked, so certificates are windowed, and a resolution
that fails to terminate yields a refusal rather than a disproof.
"""
from .errors import BudgetExceeded, PreconditionError, VerificationError
from .koszul import grade
from .modules import FPModule, Ideal, as_raw
from .resolution import resolve_quotient


class FiltrationSpec:
    """n ↦ J_n for n ≥ 1.

    ``adic``: I^n.  ``bracket``: (s_1^n, …, s_d^n).  ``frobenius``:
    (s_1^q, …, s_d^q) with q = p^{n−1}.  ``explicit``: a finite list whose
    last entry repeats.
    """

    KINDS = ("adic", "bracket", "frobenius", "explicit")

    def __init__(self, kind, ring, elements=None, sequence=None, p=None):
        if kind not in self.KINDS:
            raise PreconditionError(f"unknown filtration kind {kind!r}")
        self.kind = kind
        self.ring = ring
        self.elements = [as_raw(ring, s) for s in (elements or [])]
        self.sequence = list(sequence or [])
        if kind == "explicit" and not self.sequence:
            raise PreconditionError("explicit filtration needs at least one ideal")
        if kind != "explicit" and not self.elements:
            raise PreconditionError("filtration needs generators")
        if kind == "frobenius":
            if ring.p == 0:
                raise PreconditionError("Frobenius powers need positive characteristic")
            if p is not None and p != ring.p:
                raise PreconditionError("p must be the ring characteristic")
        self.p = ring.p if kind == "frobenius" else None
        self._memo = {}

    @classmethod
    def adic(cls, I):
        return cls("adic", I.ring, I.gens)

    @classmethod
    def bracket(cls, I):
        return cls("bracket", I.ring, I.gens)

    @classmethod
    def frobenius(cls, I, p=None):
        return cls("frobenius", I.ring, I.gens, p=p)

    @classmethod
    def explicit(cls, ideals):
        ideals = list(ideals)
        if not ideals:
            raise PreconditionError("explicit filtration needs at least one ideal")
        return cls("explicit", ideals[0].ring, sequence=ideals)

    @property
    def base(self):
        """The ideal J_1 (for adic/bracket/frobenius this is the ideal being filtered)."""
        return self(1)

    def __call__(self, n):
        if n < 1:
            raise PreconditionError("filtration index starts at 1")
        if n in self._memo:
            return self._memo[n]
        ring = self.ring
        if self.kind == "adic":
            val = Ideal(ring, self.elements).power(n)
        elif self.kind == "bracket":
            val = Ideal(ring, [ring.power(s, n) for s in self.elements])
        elif self.kind == "frobenius":
            q = self.p ** (n - 1)
            val = Ideal(ring, [ring.power(s, q) for s in self.elements])
        else:
            val = self.sequence[min(n, len(self.sequence)) - 1]
        self._memo[n] = val
        return val

    def is_descending(self, n_max):
        return all(self(n).contains_ideal(self(n + 1)) for n in range(1, n_max))

    def record(self):
        ring = self.ring
        out = {"kind": self.kind}
        if self.kind == "explicit":
            out["sequence"] = [J.strings() for J in self.sequence]
        else:
            out["elements"] = [ring.fmt(s) for s in self.elements]
        if self.p:
            out["p"] = self.p
        return out


def inclusion_witness(A, B):
    """Lifts of each generator of A into B, or None if A ⊄ B."""
    lifts = []
    for g in A.gens:
        c = B.lift(g)
        if c is None:
            return None
        lifts.append(c)
    return lifts


def filtration_equiv_window(F, I, K, n_budget=32, k_budget=32):
    """Equivalence witnesses between {J_n} and {I^k} on k ≤ K, or a failure locus."""
    if K < 1:
        raise PreconditionError("window must be at least 1")
    n_of_k, k_of_n, failures = {}, {}, []
    witnesses = {"n_of_k": {}, "k_of_n": {}}
    start = 1
    for k in range(1, K + 1):
        Ik = I.power(k)
        found = None
        for n in range(start, n_budget + 1):
            w = inclusion_witness(F(n), Ik)
            if w is not None:
                found = n
                witnesses["n_of_k"][k] = w
                break
        if found is None:
            failures.append({"direction": "J_n ⊆ I^k", "k": k, "searched_n_up_to": n_budget})
            break
        n_of_k[k] = found
        start = found
    top_n = max(n_of_k.values()) if n_of_k else K
    for n in range(1, max(top_n, 1) + 1):
        Jn = F(n)
        found = None
        for k in range(1, k_budget + 1):
            w = inclusion_witness(I.power(k), Jn)
            if w is not None:
                found = k
                witnesses["k_of_n"][n] = w
                break
        if found is None:
            ring = I.ring
            bad = next((g for g in I.power(k_budget).gens if not Jn.contains(g)), None)
            failures.append(
                {
                    "direction": "I^k ⊆ J_n",
                    "n": n,
                    "searched_k_up_to": k_budget,
                    "witness": ring.fmt(bad) if bad is not None else None,
                }
            )
            break
        k_of_n[n] = found
    return {
        "ok": not failures,
        "window": K,
        "n_of_k": n_of_k,
        "k_of_n": k_of_n,
        "failures": failures,
        "witnesses": witnesses,
    }


class EfpdWindowCertificate:
    def __init__(self, ideal, filtration, window, equivalence, resolutions):
        self.ideal = ideal
        self.filtration = filtration
        self.window = window
        self.equivalence = equivalence
        self.resolutions = resolutions

    @property
    def pds(self):
        return {n: res.pd for n, res in self.resolutions.items()}

    def record(self):
        return {
            "status": "certified",
            "ideal": self.ideal.strings(),
            "filtration": self.filtration.record(),
            "window": self.window,
            "n_of_k": {str(k): v for k, v in self.equivalence["n_of_k"].items()},
            "k_of_n": {str(k): v for k, v in self.equivalence["k_of_n"].items()},
            "pd": {str(n): pd for n, pd in self.pds.items()},
        }


class EfpdRefusal:
    """No certificate: either the equivalence window failed or some R/J_n did not terminate."""

    def __init__(self, ideal, filtration, window, reason, first_n, probes, equivalence):
        self.ideal = ideal
        self.filtration = filtration
        self.window = window
        self.reason = reason
        self.first_n = first_n
        self.probes = probes
        self.equivalence = equivalence

    def record(self):
        return {
            "status": "refused",
            "reason": self.reason,
            "ideal": self.ideal.strings(),
            "filtration": self.filtration.record(),
            "window": self.window,
            "first_n": self.first_n,
            "probes": {str(n): p for n, p in self.probes.items()},
            "equivalence_failures": self.equivalence["failures"],
        }


def efpd_certificate(I, F, K, bound=8, n_budget=32, k_budget=32):
    """Window certificate that {J_n} is equivalent to the I-adic filtration with pd(R/J_n) < ∞."""
    eq = filtration_equiv_window(F, I, K, n_budget, k_budget)
    n_top = max(list(eq["n_of_k"].values()) + [K])
    if not eq["ok"]:
        return EfpdRefusal(I, F, K, "equivalence", None, {}, eq)
    resolutions, probes, first = {}, {}, None
    for n in range(1, n_top + 1):
        res = resolve_quotient(F(n), bound)
        probes[n] = res.report()
        resolutions[n] = res
        if not res.terminated and first is None:
            first = n
    if first is not None:
        return EfpdRefusal(I, F, K, "resolution did not terminate", first, probes, eq)
    return EfpdWindowCertificate(I, F, K, eq, resolutions)


def frobenius_pd_invariance(I, n_max, bound=8):
    """Check pd(R/I) = pd(R/I^{[p^n]}) for n ≤ n_max with terminated resolutions."""
    ring = I.ring
    p = ring.p
    if not p:
        raise PreconditionError("Frobenius powers need positive characteristic")
    base = resolve_quotient(I, bound)
    if not base.terminated:
        raise PreconditionError(f"pd(R/I) is not certified finite within bound {bound}")
    rows = [{"n": 0, "q": 1, "pd": base.pd, "ranks": base.ranks}]
    for n in range(1, n_max + 1):
        q = p ** n
        res = resolve_quotient(I.bracket(q), bound)
        if not res.terminated:
            raise BudgetExceeded(f"resolution of R/I^[{q}] did not terminate within bound {bound}")
        if res.pd != base.pd:
            raise VerificationError(f"pd changed under Frobenius: {base.pd} vs {res.pd} at q = {q}")
        rows.append({"n": n, "q": q, "pd": res.pd, "ranks": res.ranks})
    return {"p": p, "pd": base.pd, "rows": rows, "invariant": True}


def radical_power(J, f, budget=32):
    """Least k ≤ budget with f^k ∈ J, or None."""
    ring = J.ring
    f = as_raw(ring, f)
    g = ring.one()
    for k in range(1, budget + 1):
        g = ring.mul(g, f)
        if J.contains(g):
            return k
    return None


def radical_contains(J, I, budget=32):
    """Per-generator exponents showing I ⊆ √J, or None."""
    out = []
    for g in I.gens:
        k = radical_power(J, g, budget)
        if k is None:
            return None
        out.append(k)
    return out


def finite_pd_support_witness(cert, budget=32):
    """M = R/J_n with certified pd and radical witnesses V(J_n) = V(I)."""
    if not isinstance(cert, EfpdWindowCertificate):
        raise PreconditionError("a valid efpd certificate is required")
    n = min(cert.resolutions)
    Jn = cert.filtration(n)
    ring = Jn.ring
    forward = radical_contains(Jn, cert.ideal, budget)
    backward = radical_contains(cert.ideal, Jn, budget)
    if forward is None or backward is None:
        raise BudgetExceeded("radical witnesses not found within budget")
    return {
        "n": n,
        "module": FPModule.quotient_ring(Jn),
        "ideal": Jn.strings(),
        "pd": cert.resolutions[n].pd,
        "powers_of_I_in_Jn": dict(zip((ring.fmt(g) for g in cert.ideal.gens), forward)),
        "powers_of_Jn_in_I": dict(zip((ring.fmt(g) for g in Jn.gens), backward)),
    }


def is_perfect(I, bound=8):
    """grade(I) == pd(R/I), with the pd certified by a terminated resolution."""
    res = resolve_quotient(I, bound)
    if not res.terminated:
        raise PreconditionError(f"pd(R/I) not certified within bound {bound} ({res.pd_report()})")
    g = grade(I)
    return {"perfect": g == res.pd, "grade": g, "pd": res.pd}


__all__ = [
    "FiltrationSpec",
    "filtration_equiv_window",
    "inclusion_witness",
    "EfpdWindowCertificate",
    "EfpdRefusal",
    "efpd_certificate",
    "frobenius_pd_invariance",
    "radical_power",
    "radical_contains",
    "finite_pd_support_witness",
    "is_perfect",
]
