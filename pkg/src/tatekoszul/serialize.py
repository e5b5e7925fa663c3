"""Plain-JSON encodings of rings, matrices, complexes and chain maps.

Matrices are row-major lists of polynomial strings.  Output is written
with sorted keys and a fixed indent so repeated runs are byte-identical.
"""
import json
import os
import tempfile

from .complexes import ChainMap, Complex
from .errors import ParseError
from .modules import FreeModule, ModMap
from .ring import ring_create


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def write_atomic(path, obj):
    """Write JSON to ``path`` through a temporary file in the same directory."""
    text = dumps(obj)
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def ring_to(ring):
    return ring.describe()


def ring_from(data):
    return ring_create(data)


def map_to(m):
    return {"source": list(m.source.shifts), "target": list(m.target.shifts), "rows": m.row_strings()}


def map_from(ring, data):
    try:
        src = FreeModule(ring, data["source"])
        tgt = FreeModule(ring, data["target"])
        return ModMap.from_rows(ring, data["rows"], source=src, target=tgt)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed matrix record: {exc}") from exc


def complex_to(C):
    return {
        "terms": {str(n): list(F.shifts) for n, F in sorted(C.terms.items())},
        "diffs": {str(n): d.row_strings() for n, d in sorted(C.diffs.items())},
        "rels": {str(n): map_to(r) for n, r in sorted(C.rels.items())},
    }


def complex_from(ring, data, check=True):
    try:
        terms = {int(n): FreeModule(ring, sh) for n, sh in data["terms"].items()}
        diffs = {}
        for n, rows in data.get("diffs", {}).items():
            n = int(n)
            src = terms.get(n, FreeModule(ring, 0))
            tgt = terms.get(n - 1, FreeModule(ring, 0))
            diffs[n] = ModMap.from_rows(ring, rows, source=src, target=tgt)
        rels = {int(n): map_from(ring, r) for n, r in data.get("rels", {}).items()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed complex record: {exc}") from exc
    return Complex(ring, terms, diffs, rels, check=check)


def chain_map_to(f):
    return {
        "source": complex_to(f.source),
        "target": complex_to(f.target),
        "comps": {str(n): c.row_strings() for n, c in sorted(f.comps.items())},
    }


def chain_map_from(ring, data, check=False):
    S = complex_from(ring, data["source"], check=False)
    T = complex_from(ring, data["target"], check=False)
    comps = {}
    for n, rows in data.get("comps", {}).items():
        n = int(n)
        comps[n] = ModMap.from_rows(ring, rows, source=S.term(n), target=T.term(n))
    return ChainMap(S, T, comps, check=check)


__all__ = [
    "dumps",
    "write_atomic",
    "ring_to",
    "ring_from",
    "map_to",
    "map_from",
    "complex_to",
    "complex_from",
    "chain_map_to",
    "chain_map_from",
]
