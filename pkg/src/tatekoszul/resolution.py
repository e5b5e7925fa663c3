"""Minimal graded free resolutions with termination and periodicity reporting."""
from .complexes import Complex
from .errors import PreconditionError
from .modules import FPModule, syzygies


class Resolution:
    """A minimal free resolution F_bound → … → F_0 of a graded module.

    ``terminated`` means some F_j vanished (j ≤ bound), certifying
    pd = j − 1.  Otherwise only pd ≥ bound is known.
    """

    def __init__(self, module, complex_, gens, bound, terminated, pd):
        self.module = module
        self.complex = complex_
        self.gens = gens
        self.bound = bound
        self.terminated = terminated
        self.pd = pd

    @property
    def ranks(self):
        return [self.complex.rank(n) for n in range(0, (self.pd if self.terminated else self.bound) + 1)]

    def betti(self):
        """Graded Betti numbers {homological degree: {internal degree: count}}."""
        out = {}
        for n in range(0, self.complex.hi + 1):
            row = {}
            for s in self.complex.term(n).shifts:
                row[s] = row.get(s, 0) + 1
            if row:
                out[n] = dict(sorted(row.items()))
        return out

    def pd_report(self):
        if self.terminated:
            return f"pd = {self.pd}"
        return f"pd ≥ {self.bound}"

    def period(self):
        """Smallest k ≥ 1 with ∂_j = ∂_{j+2} for every j ≥ k inside the window, or None."""
        C = self.complex
        top = C.hi
        for k in range(1, top - 1):
            if all(C.diff(j) == C.diff(j + 2) for j in range(k, top - 1)):
                return k
        return None

    def report(self):
        return {
            "ranks": self.ranks,
            "terminated": self.terminated,
            "pd": self.pd if self.terminated else None,
            "pd_lower_bound": None if self.terminated else self.bound,
            "summary": self.pd_report(),
            "periodic_from": None if self.terminated else self.period(),
        }


def _check_graded(m):
    if not m.is_homogeneous():
        raise PreconditionError("minimal resolutions need graded input")


def min_free_resolution(module, bound):
    """Minimal free resolution of ``module`` computed up to homological degree ``bound``."""
    if bound < 0:
        raise PreconditionError("bound must be non-negative")
    ring = module.ring
    pres, gens = module.presentation()
    d1 = pres.rels
    _check_graded(d1)
    F0 = pres.ambient
    terms = {0: F0}
    diffs = {}
    terminated = False
    pd = None
    if F0.rank == 0:
        return Resolution(module, Complex(ring, {}), gens, bound, True, -1)
    current = d1
    for n in range(1, bound + 1):
        if current.source.rank == 0:
            terminated = True
            pd = n - 1
            break
        terms[n] = current.source
        diffs[n] = current
        current = syzygies(current)
    else:
        if bound == 0:
            if d1.source.rank == 0:
                terminated, pd = True, 0
        elif current.source.rank == 0:
            terminated = True
            pd = bound
    C = Complex(ring, terms, diffs, check=False)
    return Resolution(module, C, gens, bound, terminated, pd)


def resolve_quotient(ideal, bound):
    """Minimal free resolution of R/I."""
    return min_free_resolution(FPModule.quotient_ring(ideal), bound)


def projective_dimension(module, bound):
    """Certified pd or None when the resolution does not terminate by ``bound``."""
    res = min_free_resolution(module, bound)
    return res.pd if res.terminated else None


__all__ = ["Resolution", "min_free_resolution", "resolve_quotient", "projective_dimension"]
