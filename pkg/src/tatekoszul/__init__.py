"""Tate-style resolutions, Koszul comparison maps, uniform Artin–Rees exponents and strong reducers."""
from .complexes import ChainMap, Complex, cone, homology, induced_map, minimalize, shift, width_stats
from .efpd import FiltrationSpec, efpd_certificate, filtration_equiv_window
from .errors import BudgetExceeded, ParseError, PreconditionError, TateKoszulError, VerificationError
from .koszul import KoszulSpec, grade, kappa, koszul, koszul_complex
from .modules import FPModule, FreeModule, Ideal, ModMap
from .reducer import charp_reducer, strong_reducer, width_reduce
from .resolution import min_free_resolution, resolve_quotient
from .ring import Poly, normal_form, ring_create
from .tate import exponents, phi_construct, tate_resolution, xi_construct

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ChainMap",
    "Complex",
    "FPModule",
    "FiltrationSpec",
    "FreeModule",
    "Ideal",
    "KoszulSpec",
    "ModMap",
    "ParseError",
    "Poly",
    "PreconditionError",
    "TateKoszulError",
    "VerificationError",
    "charp_reducer",
    "cone",
    "efpd_certificate",
    "exponents",
    "filtration_equiv_window",
    "grade",
    "homology",
    "induced_map",
    "kappa",
    "koszul",
    "koszul_complex",
    "min_free_resolution",
    "minimalize",
    "normal_form",
    "phi_construct",
    "resolve_quotient",
    "ring_create",
    "shift",
    "strong_reducer",
    "tate_resolution",
    "width_reduce",
    "width_stats",
    "xi_construct",
]
