"""Dense univariate polynomials over an :class:`AmbientField`.

Coefficients are kept internally as raw residue tuples so that the hot
loops of Cantor's algorithm avoid wrapper allocation; the public
``coeffs`` view returns :class:`FieldElement` objects.
"""

from __future__ import annotations

from .arith import prime_divisors
from .errors import (
    BothZero,
    ConstantPolynomial,
    DivisionByZeroPoly,
    FieldMismatch,
    ZeroPolynomial,
)
from .field import AmbientField, FieldElement


class Polynomial:
    __slots__ = ("field", "c")

    def __init__(self, field: AmbientField, coeffs=()):
        raw = []
        for x in coeffs:
            if isinstance(x, FieldElement):
                raw.append(x.coeffs)
            elif isinstance(x, tuple):
                raw.append(x)
            else:
                raw.append(field(x).coeffs)
        zero = field.zero.coeffs
        while raw and raw[-1] == zero:
            raw.pop()
        self.field = field
        self.c = tuple(raw)

    @classmethod
    def _raw(cls, field, raw):
        # trusted constructor: raw must already be trimmed
        obj = cls.__new__(cls)
        obj.field = field
        obj.c = raw
        return obj

    @classmethod
    def x(cls, field: AmbientField) -> Polynomial:
        return cls(field, [0, 1])

    @property
    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.c]

    @property
    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lead(self) -> FieldElement:
        return FieldElement(self.field, self.c[-1]) if self.c else self.field.zero

    def __getitem__(self, i: int) -> FieldElement:
        if 0 <= i < len(self.c):
            return FieldElement(self.field, self.c[i])
        return self.field.zero

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("polynomials over different fields")
            return other
        return Polynomial(self.field, [other])

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.c == other.c and self.field == other.field
        if isinstance(other, (int, FieldElement)):
            return self == Polynomial(self.field, [other])
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for i, c in enumerate(self.c):
            e = FieldElement(self.field, c)
            if not e:
                continue
            s = repr(e)
            if " + " in s:
                s = f"({s})"
            if i == 0:
                parts.append(s)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                parts.append(mono if s == "1" else f"{s}*{mono}")
        return " + ".join(reversed(parts))

    def __reduce__(self):
        return (Polynomial._raw, (self.field, self.c))

    # ring operations

    def __add__(self, other):
        other = self._check(other)
        return Polynomial._raw(self.field, _add(self.field, self.c, other.c))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Polynomial._raw(self.field, _sub(self.field, self.c, other.c))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        F = self.field
        return Polynomial._raw(F, tuple(F._neg(a) for a in self.c))

    def __mul__(self, other):
        other = self._check(other)
        return Polynomial._raw(self.field, _mul(self.field, self.c, other.c))

    __rmul__ = __mul__

    def __divmod__(self, other):
        return poly_divmod(self, self._check(other))

    def __floordiv__(self, other):
        return poly_divmod(self, self._check(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, self._check(other))[1]

    def scale(self, e: FieldElement) -> Polynomial:
        F = self.field
        r = F(e).coeffs
        if not any(r):
            return Polynomial._raw(F, ())
        return Polynomial._raw(F, tuple(F._mul(a, r) for a in self.c))

    def monic(self) -> Polynomial:
        if not self.c:
            return self
        F = self.field
        inv = F._inv(self.c[-1])
        return Polynomial._raw(F, tuple(F._mul(a, inv) for a in self.c))

    def derivative(self) -> Polynomial:
        F = self.field
        raw = [F._scale(a, i % F.p) for i, a in enumerate(self.c) if i]
        return Polynomial(F, raw)

    def __call__(self, e) -> FieldElement:
        F = self.field
        e = F(e).coeffs
        acc = F.zero.coeffs
        for a in reversed(self.c):
            acc = F._add(F._mul(acc, e), a)
        return FieldElement(F, acc)

    def frobenius(self, j: int = 1) -> Polynomial:
        return Polynomial._raw(self.field, tuple(
            FieldElement(self.field, a).frobenius(j).coeffs for a in self.c
        ))

    def key(self) -> tuple:
        return self.c


# -- raw helpers on coefficient tuples --

def _trim(F, raw: list) -> tuple:
    zero = F.zero.coeffs
    while raw and raw[-1] == zero:
        raw.pop()
    return tuple(raw)


def _add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = F._add(out[i], y)
    return _trim(F, out) if len(a) == len(b) else tuple(out)


def _sub(F, a, b):
    n = max(len(a), len(b))
    zero = F.zero.coeffs
    out = [
        F._sub(a[i] if i < len(a) else zero, b[i] if i < len(b) else zero)
        for i in range(n)
    ]
    return _trim(F, out)


def _mul(F, a, b):
    if not a or not b:
        return ()
    zero = F.zero.coeffs
    out = [zero] * (len(a) + len(b) - 1)
    mul, add = F._mul, F._add
    for i, x in enumerate(a):
        if x == zero:
            continue
        for j, y in enumerate(b):
            if y != zero:
                out[i + j] = add(out[i + j], mul(x, y))
    return _trim(F, out)


def _divmod(F, a, b):
    db = len(b) - 1
    if len(a) <= db:
        return (), a
    r = list(a)
    inv = F._inv(b[-1])
    zero = F.zero.coeffs
    q = [zero] * (len(a) - db)
    mul, sub = F._mul, F._sub
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if c == zero:
            continue
        c = mul(c, inv)
        q[k - db] = c
        for j in range(db):
            if b[j] != zero:
                r[k - db + j] = sub(r[k - db + j], mul(c, b[j]))
        r[k] = zero
    return _trim(F, q), _trim(F, r[:db])


# -- public operations --

def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Euclidean division: a = q*b + r with deg r < deg b."""
    if b.is_zero():
        raise DivisionByZeroPoly("division by the zero polynomial")
    F = a.field
    q, r = _divmod(F, a.c, b.c)
    return Polynomial._raw(F, q), Polynomial._raw(F, r)


def poly_xgcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Return (g, s, t) with g monic and s*a + t*b = g."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd of two zero polynomials")
    F = a.field
    r0, r1 = a.c, b.c
    s0, s1 = (F.one.coeffs,), ()
    t0, t1 = (), (F.one.coeffs,)
    while r1:
        q, r = _divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(F, s0, _mul(F, q, s1))
        t0, t1 = t1, _sub(F, t0, _mul(F, q, t1))
    inv = F._inv(r0[-1])
    scale = lambda raw: tuple(F._mul(x, inv) for x in raw)  # noqa: E731
    return (
        Polynomial._raw(F, scale(r0)),
        Polynomial._raw(F, scale(s0)),
        Polynomial._raw(F, scale(t0)),
    )


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    return poly_xgcd(a, b)[0]


def poly_powmod(base: Polynomial, e: int, mod: Polynomial) -> Polynomial:
    F = base.field
    m = mod.c
    result = _divmod(F, (F.one.coeffs,), m)[1]
    b = _divmod(F, base.c, m)[1]
    while e:
        if e & 1:
            result = _divmod(F, _mul(F, result, b), m)[1]
        e >>= 1
        if e:
            b = _divmod(F, _mul(F, b, b), m)[1]
    return Polynomial._raw(F, result)


def is_squarefree(f: Polynomial) -> bool:
    if f.is_zero():
        raise ZeroPolynomial("squarefreeness of the zero polynomial")
    return poly_gcd(f, f.derivative()).degree == 0


def is_irreducible(f: Polynomial, Q: int) -> bool:
    """Rabin's test for irreducibility over the subfield GF(Q) of f's field."""
    d = f.degree
    if d < 1:
        raise ConstantPolynomial("irreducibility of a constant")
    if d == 1:
        return True
    f = f.monic()
    x = Polynomial.x(f.field)

    def frob_power(k: int) -> Polynomial:
        r = x
        for _ in range(k):
            r = poly_powmod(r, Q, f)
        return r

    if not ((frob_power(d) - x) % f).is_zero():
        return False
    for r in prime_divisors(d):
        if poly_gcd(f, frob_power(d // r) - x).degree != 0:
            return False
    return True


def poly_roots(f: Polynomial, domain) -> list[FieldElement]:
    """Elements of ``domain`` (in order) at which f vanishes."""
    if f.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    return [e for e in domain if f(e).is_zero()]
