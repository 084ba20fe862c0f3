"""Exact arithmetic in real quadratic fields Q(sqrt D), vectors and translations.

A :class:`Scalar` is ``a + b*sqrt(D)`` with rational ``a``, ``b``.  Rational
scalars (``b == 0``) mix freely with any field; two irrational scalars must
share ``D``.  Norms and distances are square roots of field elements and are
kept as :class:`SqrtValue`, compared through their squares.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational

from .errors import ContextMismatch, DimensionMismatch, DivisionByZero, ValidationError

try:  # GMP rationals are an order of magnitude faster than Fraction
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

_RATIONALS = (int, Fraction, type(Q(0)))
_ZERO = Q(0)


@lru_cache(maxsize=None)
def _check_squarefree(D: int) -> int:
    if D < 2:
        raise ValidationError(f"D must be a square-free integer >= 2, got {D}")
    p = 2
    while p * p <= D:
        if D % (p * p) == 0:
            raise ValidationError(f"D={D} is not square-free")
        p += 1
    return D


def _frac(x):
    if isinstance(x, _RATIONALS) or isinstance(x, Rational):
        return Q(x)
    if isinstance(x, str):
        return Q(Fraction(x))
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def _sign_of(a: Fraction, b: Fraction, D: int) -> int:
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    sa = 1 if a > 0 else -1
    sb = 1 if b > 0 else -1
    if sa == sb:
        return sa
    # opposite signs: the term with the larger square wins
    lhs = a * a
    rhs = b * b * D
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0  # unreachable for square-free D >= 2 unless a == b == 0


class Scalar:
    """An element ``a + b*sqrt(D)`` of a real quadratic field (or of Q)."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: int = 1):
        a = _frac(a)
        b = _frac(b)
        if b == 0:
            D = 1
        elif D == 1:
            a, b = a + b, _ZERO
        else:
            _check_squarefree(int(D))
        self.a = a
        self.b = b
        self.D = int(D)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, D: int) -> "Scalar":
        s = object.__new__(cls)
        if b == 0:
            D = 1
        s.a = a
        s.b = b
        s.D = D
        return s

    @staticmethod
    def sqrt(D: int) -> "Scalar":
        """``sqrt(D)`` for a square-free ``D`` (``D == 1`` gives one)."""
        return Scalar(0, 1, D)

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        return Scalar._raw(_frac(x), _ZERO, 1)

    def _join(self, other: "Scalar") -> int:
        if self.D == other.D or other.D == 1:
            return self.D
        if self.D == 1:
            return other.D
        raise ContextMismatch(f"cannot mix sqrt({self.D}) and sqrt({other.D})")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, _RATIONALS):
                return Scalar._raw(self.a + other, self.b, self.D)
            return NotImplemented
        D = self._join(other)
        return Scalar._raw(self.a + other.a, self.b + other.b, D)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, _RATIONALS):
                return Scalar._raw(self.a - other, self.b, self.D)
            return NotImplemented
        D = self._join(other)
        return Scalar._raw(self.a - other.a, self.b - other.b, D)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b, self.D)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, _RATIONALS):
                return Scalar._raw(self.a * other, self.b * other, self.D)
            return NotImplemented
        if self.b == 0:
            if other.b == 0:
                return Scalar._raw(self.a * other.a, _ZERO, 1)
            return Scalar._raw(self.a * other.a, self.a * other.b, other.D)
        if other.b == 0:
            return Scalar._raw(self.a * other.a, self.b * other.a, self.D)
        D = self._join(other)
        return Scalar._raw(
            self.a * other.a + self.b * other.b * D,
            self.a * other.b + self.b * other.a,
            D,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.b == 0:
            if self.a == 0:
                raise DivisionByZero("division by zero")
            return Scalar._raw(Q(1) / self.a, _ZERO, 1)
        n = self.a * self.a - self.b * self.b * self.D
        return Scalar._raw(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, _RATIONALS):
                if other == 0:
                    raise DivisionByZero("division by zero")
                return Scalar._raw(self.a / other, self.b / other, self.D)
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar._raw(Q(1), _ZERO, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.a, -self.b, self.D)

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        return _sign_of(self.a, self.b, self.D)

    def _cmp(self, other) -> int:
        if isinstance(other, Scalar):
            if self.b == 0 and other.b == 0:
                return (self.a > other.a) - (self.a < other.a)
            self._join(other)
            return _sign_of(self.a - other.a, self.b - other.b, max(self.D, other.D))
        if isinstance(other, _RATIONALS):
            return _sign_of(self.a - other, self.b, self.D)
        raise TypeError

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b and (self.b == 0 or self.D == other.D)
        if isinstance(other, _RATIONALS):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other):
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other):
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other):
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def is_rational(self) -> bool:
        return self.b == 0

    def floor(self) -> int:
        """Exact floor, computed with integer square roots only."""
        if self.b == 0:
            return int(self.a.numerator) // int(self.a.denominator)
        # t = b*sqrt(D) = +-sqrt(p/q)
        t2 = self.b * self.b * self.D
        p, q = int(t2.numerator), int(t2.denominator)
        ft = isqrt(p * q) // q  # floor(sqrt(p/q))
        if self.b < 0:
            ft = -ft - 1  # floor(-x) for irrational x
        guess = (int(self.a.numerator) // int(self.a.denominator)) + ft
        while Scalar(guess) > self:
            guess -= 1
        while Scalar(guess + 1) <= self:
            guess += 1
        return guess

    def ceil(self) -> int:
        return -((-self).floor())

    def __float__(self):
        return float(self.a) + float(self.b) * (self.D ** 0.5)

    # -- text -------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def as_scalar(x) -> Scalar:
    return Scalar.coerce(x)


def golden_ratio() -> Scalar:
    """(1 + sqrt 5) / 2."""
    return Scalar(Q(1, 2), Q(1, 2), 5)


# -- literals ----------------------------------------------------------------

_TERM = r"(?:\d+(?:/\d+)?)"
_LITERAL = re.compile(
    r"^\s*(?P<s1>[+-]?)\s*(?P<t1>{t})?(?:(?P<r1>r)(?P<d1>\d+))?"
    r"(?:\s*(?P<s2>[+-])\s*(?P<t2>{t})?(?P<r2>r)(?P<d2>\d+))?\s*$".format(t=_TERM)
)


def parse_scalar(text: str) -> Scalar:
    """Parse the literal grammar ``p/q`` / ``p/q r D`` / ``p/q+r/s rD``.

    Examples: ``"3/2"``, ``"r5"`` (sqrt 5), ``"-1/2r5"``, ``"3/2+1/2r5"``,
    ``"2-r2"``.  No floating point is accepted.
    """
    m = _LITERAL.match(text)
    if not m or (m.group("t1") is None and m.group("r1") is None):
        raise ValidationError(f"bad scalar literal {text!r}")
    try:
        return _literal(m)
    except ZeroDivisionError:
        raise ValidationError(f"zero denominator in {text!r}") from None


def _literal(m) -> Scalar:
    sign1 = -1 if m.group("s1") == "-" else 1
    coef1 = Q(Fraction(m.group("t1"))) if m.group("t1") is not None else Q(1)
    a = _ZERO
    b = _ZERO
    D = 1
    if m.group("r1"):
        b = sign1 * coef1
        D = int(m.group("d1"))
        if m.group("r2"):
            raise ValidationError(f"bad scalar literal {m.string!r}")
    else:
        a = sign1 * coef1
        if m.group("r2"):
            sign2 = -1 if m.group("s2") == "-" else 1
            coef2 = Q(Fraction(m.group("t2"))) if m.group("t2") is not None else Q(1)
            b = sign2 * coef2
            D = int(m.group("d2"))
    if D == 1:
        return Scalar(a + b)
    return Scalar(a, b, D)


def _format_frac(f) -> str:
    n, d = int(f.numerator), int(f.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def format_scalar(x: Scalar) -> str:
    if x.b == 0:
        return _format_frac(x.a)
    bpart = "" if abs(x.b) == 1 else _format_frac(abs(x.b))
    root = f"{bpart}r{x.D}"
    if x.a == 0:
        return ("-" if x.b < 0 else "") + root
    return f"{_format_frac(x.a)}{'-' if x.b < 0 else '+'}{root}"


# -- square roots ------------------------------------------------------------


def _rational_sqrt(f):
    if f < 0:
        return None
    n, d = int(f.numerator), int(f.denominator)
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Q(rn, rd)
    return None


class SqrtValue:
    """The non-negative real ``sqrt(q)`` for a field element ``q >= 0``.

    Equality and order are decided on squares, so nothing is ever rounded.
    ``SqrtValue.infinity()`` stands for an unbounded value.
    """

    __slots__ = ("q", "infinite")

    def __init__(self, q=0, infinite: bool = False):
        q = Scalar.coerce(q)
        if q.sign() < 0:
            raise ValidationError("SqrtValue needs a non-negative radicand")
        self.q = q
        self.infinite = infinite

    @classmethod
    def infinity(cls) -> "SqrtValue":
        return cls(0, infinite=True)

    @classmethod
    def of(cls, x) -> "SqrtValue":
        """``|x|`` for a scalar ``x``."""
        x = Scalar.coerce(x)
        return cls(x * x)

    def _key(self, other):
        if isinstance(other, SqrtValue):
            return other
        x = Scalar.coerce(other)
        if x.sign() < 0:
            return None  # any sqrt is larger than a negative number
        return SqrtValue(x * x)

    def _cmp(self, other) -> int:
        o = self._key(other)
        if o is None:
            return 1
        if self.infinite or o.infinite:
            return (self.infinite > o.infinite) - (self.infinite < o.infinite)
        return self.q._cmp(o.q)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except (TypeError, ValidationError):
            return NotImplemented

    def __hash__(self):
        return hash(("sqrt", self.q, self.infinite))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def square(self) -> Scalar:
        if self.infinite:
            raise ValidationError("infinite value has no square")
        return self.q

    def reciprocal(self) -> "SqrtValue":
        if self.infinite:
            return SqrtValue(0)
        if not self.q:
            return SqrtValue.infinity()
        return SqrtValue(self.q.inverse())

    def exact(self):
        """Return ``sqrt(q)`` as a :class:`Scalar` when it lies in the field, else ``None``."""
        if self.infinite:
            return None
        q = self.q
        if q.b == 0:
            r = _rational_sqrt(q.a)
            if r is not None:
                return Scalar(r)
            # sqrt(a) = c*sqrt(D) with D square-free
            for D in _squarefree_parts(q.a):
                c = _rational_sqrt(q.a / D)
                if c is not None:
                    return Scalar(0, c, D)
            return None
        # (x + y sqrt D)^2 = x^2 + D y^2 + 2xy sqrt D
        disc = _rational_sqrt(q.a * q.a - q.b * q.b * q.D)
        if disc is None:
            return None
        for x2 in ((q.a + disc) / 2, (q.a - disc) / 2):
            x = _rational_sqrt(x2)
            if x:
                y = q.b / (2 * x)
                cand = Scalar(x, y, q.D)
                if cand.sign() >= 0 and cand * cand == q:
                    return cand
        return None

    def upper_rational(self, bits: int = 24) -> Fraction:
        """A rational number ``>= sqrt(q)`` within ``2**-bits``."""
        q = self.q
        scale = 1 << bits
        # float-free upper bound of q via floor+1 at the scale
        qa = Fraction((q * scale * scale).floor() + 1)
        return Fraction(isqrt(int(qa)) + 1, scale)

    def lower_rational(self, bits: int = 24) -> Fraction:
        """A rational number ``<= sqrt(q)`` within ``2**-bits``."""
        q = self.q
        scale = 1 << bits
        qa = max((q * scale * scale).floor(), 0)
        return Fraction(isqrt(qa), scale)

    def __float__(self):
        return float("inf") if self.infinite else float(self.q) ** 0.5

    def __str__(self):
        if self.infinite:
            return "inf"
        e = self.exact()
        return str(e) if e is not None else f"sqrt({self.q})"

    def __repr__(self):
        return f"SqrtValue({self})"


def _squarefree_parts(a):
    n = int(a.numerator) * int(a.denominator)
    if n <= 0 or n > 10 ** 12:
        return []
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            for c in (d, n // d):
                try:
                    out.append(_check_squarefree(c))
                except ValidationError:
                    pass
        d += 1
    try:
        out.append(_check_squarefree(n))
    except ValidationError:
        pass
    return sorted(set(out))


# -- vectors and translations -------------------------------------------------


class Vector:
    """A point of R^d (d = 1 or 2) with exact coordinates."""

    __slots__ = ("coords", "_hash")

    def __init__(self, coords):
        if isinstance(coords, Vector):
            coords = coords.coords
        elif not isinstance(coords, (tuple, list)):
            coords = (coords,)
        if not 1 <= len(coords) <= 2:
            raise DimensionMismatch(f"only d in {{1, 2}} is supported, got {len(coords)}")
        self.coords = tuple(Scalar.coerce(c) for c in coords)
        self._hash = None

    @classmethod
    def _make(cls, coords: tuple) -> "Vector":
        v = object.__new__(cls)
        v.coords = coords
        v._hash = None
        return v

    @classmethod
    def zero(cls, dim: int) -> "Vector":
        return cls._make(tuple(Scalar(0) for _ in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def _check(self, other: "Vector"):
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch(f"dimension {self.dim} vs {other.dim}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector._make(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector._make(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "Vector":
        return Vector._make(tuple(-x for x in self.coords))

    def scale(self, s) -> "Vector":
        s = Scalar.coerce(s)
        return Vector._make(tuple(x * s for x in self.coords))

    def norm2(self) -> Scalar:
        c = self.coords
        if len(c) == 1:
            return c[0] * c[0]
        return c[0] * c[0] + c[1] * c[1]

    def norm(self) -> SqrtValue:
        return SqrtValue(self.norm2())

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self.coords)
        return h

    def __lt__(self, other: "Vector"):
        for x, y in zip(self.coords, other.coords):
            if x != y:
                return x < y
        return len(self.coords) < len(other.coords)

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return other < self

    def __ge__(self, other):
        return other <= self

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"Vector({', '.join(repr(str(c)) for c in self.coords)})"


def as_vector(x, dim: int | None = None) -> Vector:
    if isinstance(x, Translation):
        x = x.v
    if isinstance(x, Vector):
        v = x
    elif isinstance(x, str):
        v = parse_vector(x)
    else:
        v = Vector(x)
    if dim is not None and v.dim != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {v.dim}")
    return v


def parse_vector(text: str) -> Vector:
    """Comma-separated scalar literals: ``"0,1/2"``, ``"r2"``."""
    return Vector(tuple(parse_scalar(part) for part in text.split(",")))


class Translation:
    """An element of the translation group of R^d.

    The group law is vector addition and ``norm`` is the Euclidean length,
    which is a left-invariant proper metric ``rho(g, h) = |h - g|``.
    """

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = as_vector(v)

    @classmethod
    def identity(cls, dim: int) -> "Translation":
        return cls(Vector.zero(dim))

    @property
    def dim(self) -> int:
        return self.v.dim

    def __mul__(self, other: "Translation") -> "Translation":
        return Translation(self.v + as_vector(other))

    def inverse(self) -> "Translation":
        return Translation(-self.v)

    def norm(self) -> SqrtValue:
        return SqrtValue(self.v.norm2())

    def is_identity(self) -> bool:
        return self.v.is_zero()

    def __eq__(self, other):
        if isinstance(other, Translation):
            return self.v == other.v
        return NotImplemented

    def __hash__(self):
        return hash(("T", self.v))

    def __repr__(self):
        return f"Translation{self.v}"


def group_norm(g) -> SqrtValue:
    """``rho_Gamma(e, g)`` as an exact square root."""
    return SqrtValue(as_vector(g).norm2())


def scalar_arith(op: str, x, y) -> Scalar:
    """Apply ``op`` in ``+ - * /`` to two scalars."""
    x = Scalar.coerce(x)
    y = Scalar.coerce(y)
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    if op in ("*", "×"):
        return x * y
    if op in ("/", "÷"):
        return x / y
    raise ValidationError(f"unknown operation {op!r}")
