"""Graded quotient rings R = k[x_1..x_m]/J and their sparse polynomials.

Internally a polynomial is a ``dict`` mapping an *encoded monomial* to a
nonzero coefficient.  The encoding is a tuple of ints chosen so that
Python's native tuple comparison realises the monomial order and so that
monomial multiplication is elementwise addition:

* degrevlex: ``(wdeg, -e_m, ..., -e_1)``
* deglex:    ``(wdeg, e_1, ..., e_m)``
* lex:       ``(e_1, ..., e_m)``
* elim:      ``(e_1, wdeg, -e_m, ..., -e_1)`` (eliminates the first variable)

The leading entries are linear forms in the exponents ("header"); the
remaining entries ("tail") are the exponents themselves, signed and
possibly reversed.  Divisibility only ever looks at the tail.
"""
import json
import re
import threading
from fractions import Fraction
from operator import add, ge, le, sub

from .errors import ParseError, PreconditionError, RingMismatch
from .field import CoefField

ORDERS = ("degrevlex", "deglex", "lex", "elim")


class MonomialOrder:
    def __init__(self, name, weights):
        if name not in ORDERS:
            raise ParseError(f"unknown monomial order {name!r}")
        n = len(weights)
        self.name = name
        self.weights = tuple(weights)
        self.nvars = n
        if name == "degrevlex":
            self.header = (self.weights,)
            self.sign, self.perm = -1, tuple(reversed(range(n)))
        elif name == "deglex":
            self.header = (self.weights,)
            self.sign, self.perm = 1, tuple(range(n))
        elif name == "lex":
            self.header = ()
            self.sign, self.perm = 1, tuple(range(n))
        else:
            first = tuple(1 if i == 0 else 0 for i in range(n))
            self.header = (first, self.weights)
            self.sign, self.perm = -1, tuple(reversed(range(n)))
        self.hlen = len(self.header)
        # position of the weighted degree inside the encoding, if stored
        self.deg_index = {"degrevlex": 0, "deglex": 0, "lex": None, "elim": 1}[name]

    def encode(self, exps):
        head = tuple(sum(w * e for w, e in zip(row, exps)) for row in self.header)
        s = self.sign
        return head + tuple(s * exps[i] for i in self.perm)

    def decode(self, mono):
        tail = mono[self.hlen:]
        exps = [0] * self.nvars
        s = self.sign
        for k, i in enumerate(self.perm):
            exps[i] = s * tail[k]
        return tuple(exps)


def _tokenize(text):
    tokens = []
    pos = 0
    pat = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")
    text = text.strip()
    while pos < len(text):
        m = pat.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
    return tokens


class _Parser:
    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty polynomial")
        value = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        r = self.ring
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = r.add(value, rhs) if op == "+" else r.sub(value, rhs)
        return value

    def term(self):
        r = self.ring
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = r.mul(value, rhs)
            else:
                c = r.constant_value(rhs)
                if c is None or not c:
                    raise ParseError(f"division by a non-constant or zero in {self.text!r}")
                value = r.scale(value, r.field.inv(c))
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return self.ring.neg(self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            return self.ring.power(base, val)
        return base

    def atom(self):
        kind, val = self.take()
        r = self.ring
        if kind == "num":
            return r.const(val)
        if kind == "name":
            if val not in r.index:
                raise ParseError(f"unknown variable {val!r}")
            return r.var(val)
        if (kind, val) == ("op", "("):
            value = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
            return value
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


class RingSpec:
    """A positively graded ring k[x_1..x_m]/J with a fixed monomial order.

    Construct with :func:`ring_create`.  The reduced Gröbner basis of J is
    computed once and cached in ``gb``; the object is immutable afterwards
    and may be shared between threads.
    """

    def __init__(self, field, names, weights=None, order="degrevlex", quotient=()):
        names = list(names)
        if len(set(names)) != len(names):
            raise ParseError(f"variables must be distinct: {names}")
        if not names:
            raise ParseError("at least one variable is required")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                raise ParseError(f"bad variable name {nm!r}")
        weights = [1] * len(names) if weights is None else [int(w) for w in weights]
        if len(weights) != len(names) or any(w <= 0 for w in weights):
            raise PreconditionError("weights must be positive, one per variable")
        self.field = field if isinstance(field, CoefField) else CoefField(field)
        self.p = self.field.p
        self.names = tuple(names)
        self.index = {nm: i for i, nm in enumerate(names)}
        self.weights = tuple(weights)
        self.nvars = len(names)
        self.order = MonomialOrder(order, weights)
        self._hlen = self.order.hlen
        self._tail_cmp = ge if self.order.sign < 0 else le
        self._tail_lcm = min if self.order.sign < 0 else max
        self.one_mono = self.order.encode((0,) * self.nvars)
        self.gb = []
        self._lock = threading.Lock()
        self._cache = {}
        gens = []
        for g in quotient:
            f = self.parse(g) if isinstance(g, str) else dict(g)
            if not f:
                continue
            if not self.is_homogeneous(f):
                raise PreconditionError(f"quotient generator {self.fmt(f)} is not homogeneous")
            gens.append(f)
        self.quotient_gens = gens
        if gens:
            from .groebner import buchberger

            self.gb = [v[0] for v in buchberger(self, [{0: f} for f in gens], rank=1, quotient=False)]
        self.gb_lts = [max(f) for f in self.gb]

    # -- identity ---------------------------------------------------------
    def describe(self):
        return {
            "char": self.p,
            "vars": [[n, w] for n, w in zip(self.names, self.weights)],
            "order": self.order.name,
            "quotient": [self.fmt(f) for f in self.quotient_gens],
        }

    def key(self):
        return json.dumps(self.describe(), sort_keys=True)

    def __eq__(self, other):
        return isinstance(other, RingSpec) and (other is self or other.key() == self.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        q = f"/({', '.join(self.fmt(f) for f in self.quotient_gens)})" if self.quotient_gens else ""
        k = f"F_{self.p}" if self.p else "QQ"
        return f"{k}[{','.join(self.names)}]{q}"

    @property
    def characteristic(self):
        return self.p

    def check_same(self, other):
        if other is not self and other != self:
            raise RingMismatch(f"ring mismatch: {self!r} vs {other!r}")

    # -- monomials ----------------------------------------------------------
    def mono(self, exps):
        return self.order.encode(tuple(exps))

    def exps(self, mono):
        return self.order.decode(mono)

    def mono_mul(self, a, b):
        return tuple(map(add, a, b))

    def mono_div(self, b, a):
        """b / a, assuming a divides b."""
        return tuple(map(sub, b, a))

    def divides(self, a, b):
        h = self._hlen
        return all(map(self._tail_cmp, a[h:], b[h:]))

    def mono_lcm(self, a, b):
        ea, eb = self.exps(a), self.exps(b)
        return self.mono(tuple(map(max, ea, eb)))

    def coprime(self, a, b):
        return not any(x and y for x, y in zip(self.exps(a), self.exps(b)))

    def mono_deg(self, mono):
        di = self.order.deg_index
        if di is not None:
            return mono[di]
        return sum(w * e for w, e in zip(self.weights, self.exps(mono)))

    # -- raw polynomials ----------------------------------------------------
    def const(self, c):
        c = self.field(c)
        return {self.one_mono: c} if c else {}

    def one(self):
        return self.const(1)

    def var(self, name_or_index):
        i = self.index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return {self.mono(e): self.field.one}

    def monomial(self, exps, coef=1):
        c = self.field(coef)
        return {self.mono(exps): c} if c else {}

    def parse(self, text):
        if isinstance(text, int):
            return self.const(text)
        return _Parser(self, str(text)).parse()

    def constant_value(self, f):
        if not f:
            return self.field.zero
        if len(f) == 1 and self.one_mono in f:
            return f[self.one_mono]
        return None

    def add(self, f, g):
        p = self.p
        out = dict(f)
        for m, c in g.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def neg(self, f):
        p = self.p
        return {m: ((-c) % p if p else -c) for m, c in f.items()}

    def sub(self, f, g):
        return self.add(f, self.neg(g))

    def scale(self, f, c):
        p = self.p
        if p:
            c %= p
        if not c:
            return {}
        if p:
            return {m: (v * c) % p for m, v in f.items()}
        return {m: v * c for m, v in f.items()}

    def mul_raw(self, f, g):
        """Product in the ambient polynomial ring (no reduction modulo J)."""
        p = self.p
        out = {}
        if len(f) > len(g):
            f, g = g, f
        for m1, c1 in f.items():
            for m2, c2 in g.items():
                k = tuple(map(add, m1, m2))
                v = out.get(k, 0) + c1 * c2
                if p:
                    v %= p
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    def mul(self, f, g):
        return self.nf(self.mul_raw(f, g))

    def mul_term(self, f, mono, c):
        p = self.p
        if p:
            return {tuple(map(add, m, mono)): (v * c) % p for m, v in f.items()}
        return {tuple(map(add, m, mono)): v * c for m, v in f.items()}

    def power(self, f, n):
        result = self.one()
        base = f
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def nf(self, f):
        """Normal form modulo the reduced Gröbner basis of J."""
        if not self.gb or not f:
            return dict(f)
        from .groebner import reduce_poly

        return reduce_poly(self, f, self.gb, self.gb_lts)

    def is_zero(self, f):
        return not self.nf(f)

    def equal(self, f, g):
        return not self.nf(self.sub(f, g))

    def lt(self, f):
        return max(f) if f else None

    def degree(self, f):
        """Maximal weighted degree of a term; -1 for the zero polynomial."""
        return max((self.mono_deg(m) for m in f), default=-1)

    def is_homogeneous(self, f):
        return len({self.mono_deg(m) for m in f}) <= 1

    def homogeneous_part(self, f, d):
        return {m: c for m, c in f.items() if self.mono_deg(m) == d}

    def is_unit(self, f):
        """Nonzero constants are exactly the units of a positively graded ring."""
        g = self.nf(f)
        return len(g) == 1 and self.one_mono in g

    def terms(self, f):
        """Terms as (coefficient, exponent tuple), leading term first."""
        return [(f[m], self.exps(m)) for m in sorted(f, reverse=True)]

    def fmt(self, f):
        if not f:
            return "0"
        fld = self.field
        out = []
        for m in sorted(f, reverse=True):
            c = f[m]
            e = self.exps(m)
            mon = "*".join(
                (nm if k == 1 else f"{nm}^{k}") for nm, k in zip(self.names, e) if k
            )
            if self.p:
                sign, mag = "+", c
            else:
                sign, mag = ("-", -c) if c < 0 else ("+", c)
            mag_s = fld.fmt(mag)
            if mon:
                body = mon if mag == 1 else f"{mag_s}*{mon}"
            else:
                body = mag_s
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def freeze(self, f):
        return tuple(sorted(f.items()))

    # -- convenience ---------------------------------------------------------
    def __call__(self, text):
        return Poly(self, self.nf(self.parse(text)))

    def gens(self):
        return [Poly(self, self.var(i)) for i in range(self.nvars)]

    def cached(self, key, compute):
        """Per-ring memo table; reads are lock free, writes serialised."""
        try:
            return self._cache[key]
        except KeyError:
            pass
        value = compute()
        with self._lock:
            self._cache.setdefault(key, value)
        return self._cache[key]


class Poly:
    """Immutable element of a :class:`RingSpec`, always in normal form."""

    __slots__ = ("ring", "raw")

    def __init__(self, ring, raw, reduced=True):
        self.ring = ring
        self.raw = raw if reduced else ring.nf(raw)

    def _coerce(self, other):
        if isinstance(other, Poly):
            self.ring.check_same(other.ring)
            return other.raw
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        return Poly(self.ring, self.ring.add(self.raw, g))

    __radd__ = __add__

    def __sub__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        return Poly(self.ring, self.ring.sub(self.raw, g))

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        return Poly(self.ring, self.ring.sub(g, self.raw))

    def __mul__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        return Poly(self.ring, self.ring.mul(self.raw, g))

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(self.ring, self.ring.neg(self.raw))

    def __pow__(self, n):
        return Poly(self.ring, self.ring.power(self.raw, int(n)))

    def __eq__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return False
        return self.raw == g

    def __hash__(self):
        return hash(self.ring.freeze(self.raw))

    def __bool__(self):
        return bool(self.raw)

    def is_zero(self):
        return not self.raw

    def degree(self):
        return self.ring.degree(self.raw)

    def is_homogeneous(self):
        return self.ring.is_homogeneous(self.raw)

    def terms(self):
        return self.ring.terms(self.raw)

    def __str__(self):
        return self.ring.fmt(self.raw)

    def __repr__(self):
        return f"Poly({self.ring.fmt(self.raw)!r})"


def _parse_vars(spec_vars):
    names, weights = [], []
    if isinstance(spec_vars, str):
        spec_vars = [v for v in re.split(r"[\s,]+", spec_vars) if v]
    for v in spec_vars:
        if isinstance(v, (list, tuple)):
            name, w = v[0], v[1] if len(v) > 1 else 1
        elif isinstance(v, dict):
            name, w = v["name"], v.get("weight", 1)
        else:
            name, _, w = str(v).partition(":")
            w = w or 1
        try:
            w = int(w)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad weight for variable {name!r}") from exc
        names.append(str(name))
        weights.append(w)
    return names, weights


def ring_create(spec):
    """Build a validated :class:`RingSpec` from a description.

    ``spec`` is either a mapping or JSON text with keys ``char`` (0 or a
    prime), ``vars`` (names, optionally ``"x:2"`` or ``["x", 2]`` for
    weights), ``order`` (default degrevlex) and ``quotient`` (polynomial
    strings generating J).
    """
    if isinstance(spec, (str, bytes)):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise ParseError(f"ring description is not valid JSON: {exc}") from exc
    if not isinstance(spec, dict):
        raise ParseError("ring description must be an object")
    if "vars" not in spec:
        raise ParseError("ring description needs 'vars'")
    try:
        char = int(spec.get("char", 0))
    except (TypeError, ValueError) as exc:
        raise ParseError("'char' must be an integer") from exc
    names, weights = _parse_vars(spec["vars"])
    quotient = spec.get("quotient", []) or []
    if isinstance(quotient, str):
        quotient = [quotient]
    return RingSpec(char, names, weights, spec.get("order", "degrevlex"), quotient)


def normal_form(f, ring=None):
    """Unique remainder of ``f`` modulo the reduced Gröbner basis of J."""
    if isinstance(f, Poly):
        ring = ring or f.ring
        return Poly(ring, ring.nf(f.raw))
    if isinstance(f, str):
        return Poly(ring, ring.nf(ring.parse(f)))
    return Poly(ring, ring.nf(f))


def poly_arith(f, g, op):
    """Exact ``add``/``sub``/``mul``/``scale`` in canonical reduced form.

    For ``scale`` the second argument is a field element.
    """
    if op == "scale":
        return Poly(f.ring, f.ring.nf(f.ring.scale(f.raw, f.ring.field(g))))
    if not isinstance(g, Poly):
        raise TypeError("poly_arith expects two Poly operands")
    f.ring.check_same(g.ring)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")
