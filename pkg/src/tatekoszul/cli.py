"""Batch front end: read a JSON session, run commands, write witness files.

A session is a JSON object::

    {"rings": {"E2": {"char": 2, "vars": "x y", "quotient": ["x*y"]}},
     "ideals": {"I": {"ring": "E2", "gens": ["x"]}},
     "modules": {"M": {"ring": "E2", "quotient": ["x"]}},
     "sequences": {"s": {"ring": "E2", "elements": ["x"], "module": "M"}},
     "complexes": {"X": {"ring": "E2", "koszul": ["x"]}},
     "filtrations": {"F": {"kind": "adic", "ideal": "I"}},
     "budgets": {"resolution": 8, "power": 16, "degree_window": 6},
     "commands": [{"run": "phi construct", "sequence": "s", "r": 1}]}

Each command writes ``NN-command.json`` into the output directory, holding
its arguments, result and a list of identity checks that ``verify`` can
re-run from the file alone.
"""
import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import serialize as ser
from .artin_rees import koszul_tor_roundtrip, minimal_tor_offset, syzygetic_ar_check, tor_map_vanishing, uniform_w
from .complexes import direct_sum, homology, homology_dims_oracle, induced_map, shift, width_stats
from .efpd import EfpdWindowCertificate, FiltrationSpec, efpd_certificate
from .errors import ParseError, PreconditionError, TateKoszulError, VerificationError
from .fixtures import random_torsion_complex
from .graded import free_dim
from .koszul import KoszulSpec, kappa_on, koszul, koszul_complex
from .modules import FPModule, FreeModule, Ideal
from .reducer import charp_reducer, strong_reducer, width_reduce
from .resolution import min_free_resolution, resolve_quotient
from .ring import ring_create
from .tate import exponents, phi_construct, tate_resolution

DEFAULT_BUDGETS = {"resolution": 8, "power": 16, "degree_window": 6}


def _plain(obj):
    """Recursively turn keys into strings and tuples into lists."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, range):
        return list(obj)
    return obj


# -- sessions ------------------------------------------------------------------


class Session:
    """Named rings, ideals, modules, sequences, complexes and filtrations."""

    SECTIONS = ("rings", "ideals", "modules", "sequences", "complexes", "filtrations")

    def __init__(self, data, budgets=None):
        if not isinstance(data, dict):
            raise ParseError("session must be a JSON object")
        unknown = set(data) - set(self.SECTIONS) - {"budgets", "commands", "out"}
        if unknown:
            raise ParseError(f"unknown session keys: {sorted(unknown)}")
        self.data = data
        self.budgets = dict(DEFAULT_BUDGETS)
        self.budgets.update(data.get("budgets", {}))
        self.budgets.update({k: v for k, v in (budgets or {}).items() if v is not None})
        for k, v in self.budgets.items():
            if not isinstance(v, int) or v <= 0:
                raise PreconditionError(f"budget {k!r} must be a positive integer")
        self.commands = data.get("commands", [])
        if not isinstance(self.commands, list):
            raise ParseError("'commands' must be a list")
        self.out = data.get("out")
        self._cache = {}
        for section in self.SECTIONS:
            for name in data.get(section, {}):
                self.get(section, name)

    @classmethod
    def load(cls, path, budgets=None):
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ParseError(f"cannot read session {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(f"session {path} is not valid JSON: {exc}") from exc
        return cls(data, budgets)

    def get(self, section, ref):
        """Resolve a name (or an inline definition) in ``section``."""
        if isinstance(ref, str):
            key = (section, ref)
            if key in self._cache:
                if self._cache[key] is None:
                    raise ParseError(f"circular definition of {section[:-1]} {ref!r}")
                return self._cache[key]
            table = self.data.get(section, {})
            if ref not in table:
                raise ParseError(f"unknown {section[:-1]} {ref!r}")
            self._cache[key] = None
            value = self._build(section, table[ref])
            self._cache[key] = value
            return value
        if isinstance(ref, dict):
            return self._build(section, ref)
        raise ParseError(f"bad reference in {section}: {ref!r}")

    def _ring_of(self, spec):
        if "ring" not in spec:
            raise ParseError("definition needs a 'ring'")
        return self.get("rings", spec["ring"])

    def _build(self, section, spec):
        if section == "rings":
            return ring_create(spec)
        if not isinstance(spec, dict):
            raise ParseError(f"{section} entries must be objects")
        if section == "ideals":
            return Ideal(self._ring_of(spec), spec.get("gens", []))
        if section == "modules":
            ring = self._ring_of(spec)
            if "quotient" in spec:
                return FPModule.quotient_ring(Ideal(ring, spec["quotient"]))
            if "ideal" in spec:
                return FPModule.quotient_ring(self.get("ideals", spec["ideal"]))
            if "presentation" in spec:
                return FPModule.coker(ser.map_from(ring, spec["presentation"]))
            return FPModule.free(FreeModule(ring, spec.get("free", [0])))
        if section == "sequences":
            ring = self._ring_of(spec)
            module = self.get("modules", spec["module"]) if "module" in spec else None
            return KoszulSpec(ring, spec.get("elements", []), int(spec.get("exponent", 1)), module)
        if section == "complexes":
            return self._complex(spec)
        if section == "filtrations":
            kind = spec.get("kind")
            if kind == "explicit":
                return FiltrationSpec.explicit([self.get("ideals", r) for r in spec.get("ideals", [])])
            if kind not in ("adic", "bracket", "frobenius"):
                raise ParseError(f"unknown filtration kind {kind!r}")
            return getattr(FiltrationSpec, kind)(self.get("ideals", spec.get("ideal")))
        raise ParseError(f"unknown section {section!r}")

    def _complex(self, spec):
        if "direct_sum" in spec:
            parts = [self.get("complexes", c) for c in spec["direct_sum"]]
            C = parts[0]
            for P in parts[1:]:
                C = direct_sum(C, P)
            return C
        if "shift" in spec:
            name, k = spec["shift"]
            return shift(self.get("complexes", name), int(k))
        ring = self._ring_of(spec)
        if "koszul" in spec:
            module = self.get("modules", spec["module"]) if "module" in spec else None
            return koszul_complex(ring, spec["koszul"], module)
        if "random" in spec:
            return random_torsion_complex(ring, int(spec["random"]))[0]
        if "terms" in spec:
            return ser.complex_from(ring, spec)
        raise ParseError("complex needs one of koszul, random, terms, direct_sum, shift")


# -- checks that witness files carry -------------------------------------------


def _check_complex(ring, C, label):
    return {"type": "complex", "label": label, "ring": ser.ring_to(ring), "complex": ser.complex_to(C)}


def _check_chain_map(ring, f, label):
    return {"type": "chain_map", "label": label, "ring": ser.ring_to(ring), "map": ser.chain_map_to(f)}


def _check_acyclic(ring, C, degrees, label):
    return {
        "type": "acyclic",
        "label": label,
        "ring": ser.ring_to(ring),
        "complex": ser.complex_to(C),
        "degrees": list(degrees),
    }


def _check_combination(ring, element, gens, coeffs, label):
    fmt = ring.fmt
    return {
        "type": "combination",
        "label": label,
        "ring": ser.ring_to(ring),
        "element": fmt(element),
        "gens": [fmt(g) for g in gens],
        "coeffs": [fmt(c) for c in coeffs],
    }


def run_check(check):
    """Re-evaluate one identity check from its serialized form."""
    kind = check.get("type")
    ring = ser.ring_from(check["ring"])
    if kind == "complex":
        C = ser.complex_from(ring, check["complex"], check=False)
        return not C.check()
    if kind == "chain_map":
        return ser.chain_map_from(ring, check["map"]).is_chain_map()
    if kind == "acyclic":
        C = ser.complex_from(ring, check["complex"], check=False)
        return not C.check() and all(homology(C, n).is_zero() for n in check["degrees"])
    if kind == "combination":
        total = {}
        for g, c in zip(check["gens"], check["coeffs"]):
            total = ring.add(total, ring.mul(ring.parse(g), ring.parse(c)))
        return len(check["gens"]) == len(check["coeffs"]) and ring.equal(total, ring.parse(check["element"]))
    raise ParseError(f"unknown check type {kind!r}")


# -- commands -----------------------------------------------------------------


def _int(args, key, default=None):
    val = args.get(key, default)
    if val is None:
        raise ParseError(f"missing argument {key!r}")
    try:
        return int(val)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"argument {key!r} must be an integer") from exc


def _window(args, key, default):
    val = args.get(key)
    if val is None:
        return list(default)
    if isinstance(val, int):
        return list(range(1, val + 1))
    if isinstance(val, str):
        lo, _, hi = val.partition("..")
        return list(range(int(lo), int(hi) + 1)) if hi else [int(v) for v in val.split(",")]
    return [int(v) for v in val]


def cmd_ring_check(s, a):
    ring = s.get("rings", a.get("ring"))
    D = s.budgets["degree_window"]
    return {
        "ring": ring.describe(),
        "groebner_basis": [ring.fmt(g) for g in ring.gb],
        "hilbert": [free_dim(ring, [0], t) for t in range(D + 1)],
        "summary": f"{ring!r}",
    }, []


def cmd_koszul_homology(s, a):
    spec = s.get("sequences", a.get("sequence"))
    K = koszul(spec)
    D = range(s.budgets["degree_window"] + 1)
    dims, agree = {}, True
    for i in range(0, spec.d + 1):
        H = homology(K, i)
        g = H.dims_groebner(D)
        o = homology_dims_oracle(K, i, D)
        agree = agree and g == o
        dims[i] = g
    return {
        "dims": dims,
        "oracle_agrees": agree,
        "summary": f"nonzero H_i at i = {[i for i in dims if any(dims[i])]}",
    }, [_check_complex(spec.ring, K, "koszul complex")]


def cmd_kappa_induced(s, a):
    spec = s.get("sequences", a.get("sequence"))
    n, k = _int(a, "n"), _int(a, "k")
    src, tgt = koszul(spec.with_exponent(n)), koszul(spec.with_exponent(k))
    f = kappa_on(spec.ring, spec.elements, n, k, src, tgt, spec.module.ambient.rank)
    zero = {i: induced_map(f, i).is_zero() for i in range(0, spec.d + 1)}
    return {"n": n, "k": k, "zero_on_H": zero, "summary": f"zero for i ≥ 1: {all(v for i, v in zero.items() if i)}"}, [
        _check_chain_map(spec.ring, f, "kappa")
    ]


def cmd_tate_build(s, a):
    spec = s.get("sequences", a.get("sequence"))
    bound = _int(a, "bound", spec.d + 2)
    T = tate_resolution(spec, bound)
    v = T.verify()
    res = {
        "t": T.t,
        "ranks": [T.complex.rank(m) for m in range(bound + 1)],
        "koszul_ranks": [T.koszul_ranks[m] for m in range(bound + 1)],
        "differentials": {str(n): d.row_strings() for n, d in sorted(T.complex.diffs.items())},
        "verification": v,
        "summary": f"t = {T.t}",
    }
    if not all(v.values()):
        raise VerificationError(f"Tate resolution fails verification: {v}")
    checks = [_check_complex(spec.ring, T.complex, "tate complex")]
    if spec.module.rels.source.rank == 0:
        checks.append(_check_acyclic(spec.ring, T.complex, range(1, bound), "acyclic below the bound"))
    return res, checks


def _phi_record(s, spec, r, mode):
    wit = phi_construct(spec, r, mode, budget=s.budgets["power"])
    if not wit.ok:
        raise VerificationError(f"φ witness fails: {wit.verification}")
    return wit


def cmd_phi_construct(s, a):
    spec = s.get("sequences", a.get("sequence"))
    r = _int(a, "r", 1)
    mode = a.get("mode", "both")
    modes = {"paper": ["paper_bound"], "paper_bound": ["paper_bound"], "search": ["search"], "both": ["search", "paper_bound"]}
    if mode not in modes:
        raise PreconditionError(f"unknown mode {mode!r}")
    out, checks = {}, []
    for m in modes[mode]:
        wit = _phi_record(s, spec, r, m)
        key = "paper" if m == "paper_bound" else "search"
        out[key] = wit.record()
        checks.append(_check_chain_map(spec.ring, wit.phi, f"phi ({key})"))
        checks.append(_check_complex(spec.ring, wit.tate.complex, f"tate complex ({key})"))
    summary = ", ".join(f"u({k}) = {v['u']}" for k, v in out.items())
    return {"r": r, "modes": out, "summary": summary}, checks


def cmd_exponents(s, a):
    spec = s.get("sequences", a.get("sequence"))
    r = _int(a, "r", 1)
    e = exponents(spec, range(1, r + 2), s.budgets["power"])
    return {
        **e.record(),
        "r": r,
        "u": e.u(r),
        "q_iter": [e.q_iter(i, r) for i in range(spec.d + 1)],
        "q_closed": [e.q_closed(i, r) for i in range(spec.d + 1)],
        "w": e.w(r),
        "summary": f"l = {e.l}, h = {e.h}, u({r}) = {e.u(r)}",
    }, []


def _same_ring(*objs):
    """Reject arguments defined over different rings."""
    descs = {json.dumps(o.ring.describe(), sort_keys=True) for o in objs if o is not None}
    if len(descs) > 1:
        raise PreconditionError("arguments live over different rings")


def cmd_tor_vanish(s, a):
    I = s.get("ideals", a.get("ideal"))
    M = s.get("modules", a.get("module"))
    _same_ring(I, M)
    i, r = _int(a, "i", 1), _int(a, "r", 1)
    if a.get("h") is None:
        h = minimal_tor_offset(I, M, i, r, s.budgets["power"])
    else:
        h = _int(a, "h")
    rep = tor_map_vanishing(I, M, i, r, h)
    return {**rep.record(), "r": r, "h": h, "summary": f"Tor_{i} map zero at h = {h}: {rep.is_zero}"}, []


def cmd_w_uniform(s, a):
    spec = s.get("sequences", a.get("sequence"))
    r = _int(a, "r", 1)
    res = uniform_w(spec, r, _window(a, "i", range(1, spec.d + 3)), s.budgets["power"])
    if not res["verified_on_window"]:
        raise VerificationError(f"w({r}) = {res['w']} fails its verification window")
    return {**res, "summary": f"w({r}) = {res['w']}"}, []


def cmd_sar_check(s, a):
    I = s.get("ideals", a.get("ideal"))
    M = s.get("modules", a.get("module"))
    depth = _int(a, "depth", 2)
    res = syzygetic_ar_check(I, M, depth, _window(a, "r", range(1, 4)), s.budgets["power"])
    return {**res, "summary": f"h = {res['h']} ({res['status']})"}, []


def cmd_roundtrip(s, a):
    spec = s.get("sequences", a.get("sequence"))
    res = koszul_tor_roundtrip(spec, _int(a, "i", 1), _int(a, "r", 1), budget=s.budgets["power"])
    if not res["ok"]:
        raise VerificationError(f"round trip failed: {res}")
    return {**res, "summary": f"ok at i = {res['i']}, r = {res['r']}"}, []


def cmd_efpd_certify(s, a):
    I = s.get("ideals", a.get("ideal"))
    F = s.get("filtrations", a.get("filtration")) if a.get("filtration") else FiltrationSpec.adic(I)
    _same_ring(I, F)
    K = _int(a, "window", 3)
    budget = s.budgets["power"]
    cert = efpd_certificate(I, F, K, s.budgets["resolution"], budget, budget)
    rec = cert.record()
    checks = []
    ring = I.ring
    eq = cert.equivalence
    for k, n in sorted(eq["n_of_k"].items()):
        target = I.power(k)
        for g, coeffs in zip(F(n).gens, eq["witnesses"]["n_of_k"][k]):
            checks.append(_check_combination(ring, g, target.gens, coeffs, f"J_{n} ⊆ I^{k}"))
    if isinstance(cert, EfpdWindowCertificate):
        for n, res in sorted(cert.resolutions.items()):
            checks.append(_check_acyclic(ring, res.complex, range(1, res.complex.hi + 1), f"resolution of R/J_{n}"))
        summary = f"certified, pd = {sorted(set(cert.pds.values()))}"
    else:
        summary = f"refused at n = {rec['first_n']} ({rec['reason']})"
    return {**rec, "summary": summary}, checks


def _provider(s, a):
    if a.get("provider"):
        return s.get("filtrations", a["provider"])
    if a.get("ideal"):
        return FiltrationSpec.bracket(s.get("ideals", a["ideal"]))
    raise ParseError("reducer commands need 'provider' or 'ideal'")


def cmd_reducer_build(s, a):
    X = s.get("complexes", a.get("complex"))
    J = s.get("ideals", a["J"]) if a.get("J") else None
    prov = _provider(s, a)
    _same_ring(X, J, prov)
    cert = strong_reducer(X, J, prov, bound=s.budgets["resolution"], budget=s.budgets["power"])
    ring = X.ring
    rec = cert.record()
    return {**rec, "summary": f"m = {cert.m}, all verdicts {cert.ok}"}, [
        _check_complex(ring, cert.T, "T"),
        _check_chain_map(ring, cert.alpha, "alpha"),
    ]


def cmd_width_reduce(s, a):
    X = s.get("complexes", a.get("complex"))
    J = s.get("ideals", a["J"]) if a.get("J") else None
    prov = _provider(s, a)
    _same_ring(X, J, prov)
    steps = width_reduce(X, prov, J, bound=s.budgets["resolution"], budget=s.budgets["power"])
    ring = X.ring
    rows, checks = [], []
    for k, st in enumerate(steps):
        rows.append(
            {
                "width_before": st["width_before"],
                "width_after": st["width_after"],
                "cone_ranks": {str(n): st["cone"].rank(n) for n in sorted(st["cone"].terms)},
                "certificate": st["certificate"].record(),
            }
        )
        checks.append(_check_chain_map(ring, st["certificate"].alpha, f"alpha step {k}"))
        checks.append(_check_complex(ring, st["cone"], f"cone step {k}"))
    widths = [r["width_before"] for r in rows] + ([rows[-1]["width_after"]] if rows else [width_stats(X)["width"]])
    return {"steps": rows, "widths": widths, "summary": f"widths {widths}"}, checks


def cmd_charp_reduce(s, a):
    P = s.get("complexes", a.get("complex"))
    I = s.get("ideals", a.get("ideal"))
    _same_ring(P, I)
    k = a.get("k")
    red = charp_reducer(P, I, None if k is None else int(k), s.budgets["resolution"], s.budgets["power"])
    k = P.hi if k is None else int(k)
    rec = red.record(k)
    return {**rec, "summary": f"u = {red.u}, T in degrees {red.T.lo}..{red.T.hi}"}, [
        _check_chain_map(P.ring, red.alpha, "alpha")
    ]


def cmd_pd_resolve(s, a):
    bound = _int(a, "bound", s.budgets["resolution"])
    if a.get("module"):
        M = s.get("modules", a["module"])
        res = min_free_resolution(M, bound)
    else:
        res = resolve_quotient(s.get("ideals", a.get("ideal")), bound)
    C = res.complex
    return {**res.report(), "betti": res.betti(), "summary": res.pd_report()}, [
        _check_acyclic(C.ring, C, range(1, C.hi), "resolution exact")
    ]


def cmd_demo_brodmann(s, a):
    I = s.get("ideals", a.get("ideal"))
    nmax = _int(a, "nmax", 5)
    bound = _int(a, "bound", s.budgets["resolution"])
    rows = []
    for n in range(1, nmax + 1):
        res = resolve_quotient(I.power(n), bound)
        rows.append({"n": n, "pd": res.pd if res.terminated else None, "report": res.pd_report(), "ranks": res.ranks})
    pds = {r["report"] for r in rows}
    return {
        "ideal": I.strings(),
        "rows": rows,
        "constant": len(pds) == 1,
        "summary": "pd column: " + ", ".join(r["report"] for r in rows),
    }, []


COMMANDS = {
    "ring check": cmd_ring_check,
    "koszul homology": cmd_koszul_homology,
    "kappa induced": cmd_kappa_induced,
    "tate build": cmd_tate_build,
    "phi construct": cmd_phi_construct,
    "exponents": cmd_exponents,
    "tor vanish": cmd_tor_vanish,
    "w-uniform": cmd_w_uniform,
    "sar-check": cmd_sar_check,
    "roundtrip": cmd_roundtrip,
    "efpd certify": cmd_efpd_certify,
    "reducer build": cmd_reducer_build,
    "width reduce": cmd_width_reduce,
    "charp reduce": cmd_charp_reduce,
    "pd resolve": cmd_pd_resolve,
    "demo brodmann": cmd_demo_brodmann,
}


def run_command(session, args):
    """Run one command; return the witness document and an exit code."""
    name = args.get("run")
    doc = {"command": name, "args": {k: v for k, v in args.items() if k != "run"}}
    try:
        if name not in COMMANDS:
            raise ParseError(f"unknown command {name!r}")
        result, checks = COMMANDS[name](session, args)
        doc.update(status="ok", result=_plain(result), checks=checks)
        return doc, 0
    except TateKoszulError as exc:
        doc.update(status="error", error=exc.record())
        return doc, exc.exit_code


def _slug(name):
    return "".join(c if c.isalnum() else "-" for c in str(name)).strip("-")


def run_session(session, out, threads=1, verify=False, stream=None):
    """Run every command of ``session``; write witness files and a manifest."""
    stream = stream or sys.stdout
    cmds = session.commands
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: run_command(session, c), cmds))
    else:
        results = [run_command(session, c) for c in cmds]
    files, code = [], 0
    for k, (doc, rc) in enumerate(results, 1):
        fname = f"{k:02d}-{_slug(doc['command'])}.json"
        if out:
            ser.write_atomic(os.path.join(out, fname), doc)
        files.append({"file": fname, "command": doc["command"], "status": doc["status"], "exit_code": rc})
        if doc["status"] == "ok":
            line = doc["result"].get("summary", "")
        else:
            line = f"{doc['error']['kind']}: {doc['error']['message']}"
        print(f"{k:02d} {doc['command']:<16} {doc['status']:<5} {line}", file=stream)
        code = code or rc
    if verify and out:
        for f in files:
            if f["status"] == "ok":
                ok, _ = verify_file(os.path.join(out, f["file"]))
                f["verified"] = ok
                if not ok:
                    code = code or VerificationError.exit_code
    if out:
        ser.write_atomic(os.path.join(out, "manifest.json"), {"files": files, "exit_code": code})
    return code


def verify_file(path):
    """Re-run every check stored in a witness file."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read witness {path}: {exc}") from exc
    outcomes = []
    for c in doc.get("checks", []):
        outcomes.append({"label": c.get("label"), "type": c.get("type"), "ok": bool(run_check(c))})
    return all(o["ok"] for o in outcomes), outcomes


# -- argument parsing ------------------------------------------------------------

ARG_KEYS = (
    "ring", "sequence", "ideal", "module", "complex", "filtration", "provider", "J",
    "r", "i", "n", "k", "h", "mode", "bound", "nmax", "window", "depth",
)


def build_parser():
    p = argparse.ArgumentParser(prog="tatekoszul", description="Tate resolutions, Koszul comparisons and reducers.")
    p.add_argument("words", nargs="*", help="command words, e.g. 'phi construct'; 'run' or none runs the session; 'verify FILE…'")
    p.add_argument("--session", help="session JSON file")
    p.add_argument("--out", help="output directory for witness files")
    p.add_argument("--budget-resolution", type=int, dest="resolution")
    p.add_argument("--budget-power", type=int, dest="power")
    p.add_argument("--degree-window", type=int, dest="degree_window")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--verify", action="store_true", help="re-verify every witness file after writing")
    for key in ARG_KEYS:
        p.add_argument(f"--{key}", dest=f"arg_{key}")
    return p


def _error_exit(exc, stream=None):
    stream = stream or sys.stdout
    print(ser.dumps({"status": "error", "error": exc.record()}), end="", file=stream)
    return exc.exit_code


def main(argv=None):
    ns = build_parser().parse_args(argv)
    try:
        words = list(ns.words)
        if words and words[0] == "verify":
            if len(words) < 2:
                raise ParseError("verify needs at least one witness file")
            code = 0
            for path in words[1:]:
                ok, outcomes = verify_file(path)
                for o in outcomes:
                    print(f"{'ok  ' if o['ok'] else 'FAIL'} {os.path.basename(path)}: {o['label']}")
                if not ok:
                    code = VerificationError.exit_code
            return code
        if ns.session is None:
            raise ParseError("--session is required")
        budgets = {"resolution": ns.resolution, "power": ns.power, "degree_window": ns.degree_window}
        session = Session.load(ns.session, budgets)
        if ns.threads < 1:
            raise PreconditionError("--threads must be positive")
        out = ns.out or session.out
        if words and words != ["run"]:
            args = {"run": " ".join(words)}
            for key in ARG_KEYS:
                val = getattr(ns, f"arg_{key}")
                if val is not None:
                    args[key] = val
            session.commands = [args]
        return run_session(session, out, ns.threads, ns.verify)
    except TateKoszulError as exc:
        return _error_exit(exc)


if __name__ == "__main__":
    sys.exit(main())
