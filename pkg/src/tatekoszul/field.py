"""Exact coefficient fields: prime fields F_p and the rationals."""
from fractions import Fraction

from .errors import ParseError, PreconditionError


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class CoefField:
    """Coefficient field. ``p == 0`` means the rationals.

    Elements of F_p are plain ints in ``range(p)``; rationals are
    :class:`fractions.Fraction`.
    """

    __slots__ = ("p",)

    def __init__(self, p=0):
        p = int(p)
        if p != 0 and not is_prime(p):
            raise PreconditionError(f"characteristic {p} is not prime")
        if p >= 2 ** 63:
            raise PreconditionError("characteristic must fit in a machine word")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, CoefField) and other.p == self.p

    def __hash__(self):
        return hash(("CoefField", self.p))

    def __repr__(self):
        return f"CoefField({self.p})" if self.p else "CoefField(QQ)"

    @property
    def characteristic(self):
        return self.p

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    def __call__(self, value):
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad coefficient {value!r}") from exc
        if self.p:
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise ParseError(f"{value} has no image in F_{self.p}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def fmt(self, a):
        if self.p:
            return str(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"
