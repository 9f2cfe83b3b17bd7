"""Exact arithmetic in GF(p) and a single ambient extension GF(p^N).

Elements are stored as length-N tuples of residues (ascending powers of
the generator ``t``), reduced modulo a fixed monic irreducible modulus.
All subfields GF(p^m), m | N, live inside the ambient field and are
recognised through Frobenius fixed points.
"""

from __future__ import annotations

import itertools
from functools import cached_property

from .arith import factorize, is_prime, prime_divisors
from .errors import (
    BudgetExceeded,
    CharTooSmall,
    DegreeZero,
    FieldMismatch,
    NotADivisor,
    NotPrime,
    ValidationError,
)

DEFAULT_BUDGET = 2**63
MIN_CHAR = 7


# -- polynomials over GF(p) as integer lists (ascending, no trailing zeros) --

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim([c % p for c in out])


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(r) - db, 0)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return _ptrim(q), _ptrim(r[:db] if db > 0 else [])


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _pdivmod(_pmul(base, base, p), mod, p)[1]
    return result


def _int_poly_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test over GF(p) for a monic integer polynomial."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]

    def xpow(k: int) -> list[int]:
        # x^(p^k) mod f by iterated p-th powering
        r = x
        for _ in range(k):
            r = _ppowmod(r, p, f, p)
        return r

    if _pdivmod(_psub(xpow(d), x, p), f, p)[1]:
        return False
    for r in prime_divisors(d):
        g = _pgcd(f, _psub(xpow(d // r), x, p), p)
        if len(g) != 1:
            return False
    return True


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


# -- the ambient field --

class AmbientField:
    """GF(p^N) with a deterministic modulus.

    Use :func:`build_ambient` rather than constructing directly.
    """

    def __init__(self, p: int, N: int, modulus: tuple[int, ...]):
        self.p = p
        self.N = N
        self.modulus = modulus
        self.cardinality = p**N
        # t^k mod modulus for k = N .. 2N-2, used to fold products
        red = []
        cur = [(-c) % p for c in modulus[:N]]
        for _ in range(max(N - 1, 0)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c + top * r) % p for c, r in zip(cur, red[0])]
        self._fold = tuple(red)
        self._modlist = list(modulus)
        self.zero = FieldElement(self, (0,) * N)
        self.one = FieldElement(self, (1,) + (0,) * (N - 1))

    # construction helpers

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field is not self:
                if value.field == self:
                    return FieldElement(self, value.coeffs)
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.N - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.N:
            if any(coeffs[self.N:]):
                raise ValidationError(f"coefficient list longer than degree {self.N}")
            coeffs = coeffs[: self.N]
        return FieldElement(self, tuple(coeffs) + (0,) * (self.N - len(coeffs)))

    @property
    def gen(self) -> FieldElement:
        """The residue class of ``t``."""
        if self.N == 1:
            return self(-self.modulus[0])
        return self([0, 1])

    def elements(self):
        """All elements in lexicographic coefficient order (low degree first)."""
        for c in itertools.product(range(self.p), repeat=self.N):
            yield FieldElement(self, c)

    def __eq__(self, other):
        return (
            isinstance(other, AmbientField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"AmbientField(p={self.p}, N={self.N}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (AmbientField, (self.p, self.N, self.modulus))

    # raw tuple arithmetic

    def _add(self, a, b):
        p = self.p
        return tuple([(x + y) % p for x, y in zip(a, b)])

    def _sub(self, a, b):
        p = self.p
        return tuple([(x - y) % p for x, y in zip(a, b)])

    def _neg(self, a):
        p = self.p
        return tuple([(-x) % p for x in a])

    def _mul(self, a, b):
        p = self.p
        N = self.N
        if N == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * N - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        low = prod[:N]
        for k, fold in enumerate(self._fold):
            c = prod[N + k] % p
            if c:
                for i, r in enumerate(fold):
                    low[i] += c * r
        return tuple([c % p for c in low])

    def _scale(self, a, c):
        p = self.p
        return tuple([x * c % p for x in a])

    def _inv(self, a):
        p = self.p
        if self.N == 1:
            return (pow(a[0], p - 2, p),)
        # extended Euclid on integer polynomials: s*a + t*mod = 1
        r0, r1 = list(self._modlist), _ptrim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _pdivmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        inv = pow(r0[0], p - 2, p)
        s = [c * inv % p for c in s0]
        return tuple(s) + (0,) * (self.N - len(s))

    def _pow(self, a, e):
        result = self.one.coeffs
        while e:
            if e & 1:
                result = self._mul(result, a)
            e >>= 1
            if e:
                a = self._mul(a, a)
        return result

    @cached_property
    def _frob_rows(self):
        # row i holds the image of t^i under x -> x^p
        rows = []
        tp = self._pow(self.gen.coeffs, self.p)
        cur = self.one.coeffs
        for _ in range(self.N):
            rows.append(cur)
            cur = self._mul(cur, tp)
        return tuple(rows)

    def _frob(self, a):
        p = self.p
        out = [0] * self.N
        for c, row in zip(a, self._frob_rows):
            if c:
                for i, r in enumerate(row):
                    out[i] += c * r
        return tuple([x % p for x in out])

    # structure

    @cached_property
    def order_factors(self) -> dict[int, int]:
        return factorize(self.cardinality - 1)

    @cached_property
    def primitive(self) -> FieldElement:
        """Smallest element (lexicographic coefficients) of order Q - 1."""
        Q1 = self.cardinality - 1
        exps = [Q1 // r for r in self.order_factors]
        one = self.one.coeffs
        for c in itertools.product(range(self.p), repeat=self.N):
            if not any(c):
                continue
            if all(self._pow(c, e) != one for e in exps):
                return FieldElement(self, c)
        raise AssertionError("no primitive element found")  # pragma: no cover


class FieldElement:
    """Immutable element of an :class:`AmbientField`."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: AmbientField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("elements of different fields")
            return other.coeffs
        if isinstance(other, int):
            return self.field(other).coeffs
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._add(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._sub(self.coeffs, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._sub(o, self.coeffs))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(self.coeffs, o))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.coeffs))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if not any(o):
            raise ZeroDivisionError("division by zero in finite field")
        F = self.field
        return FieldElement(F, F._mul(self.coeffs, F._inv(o)))

    def __pow__(self, e: int):
        F = self.field
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(F, F._pow(self.coeffs, e))

    def inverse(self) -> FieldElement:
        if not any(self.coeffs):
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(self.field, self.field._inv(self.coeffs))

    def frobenius(self, j: int = 1) -> FieldElement:
        F = self.field
        c = self.coeffs
        for _ in range(j % F.N if F.N > 1 else 0):
            c = F._frob(c)
        return FieldElement(F, c)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.coeffs == other.coeffs and (
                other.field is self.field or other.field == self.field
            )
        if isinstance(other, int):
            return self.coeffs == self.field(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __lt__(self, other: FieldElement):
        return self.coeffs < other.coeffs

    def __le__(self, other: FieldElement):
        return self.coeffs <= other.coeffs

    def __repr__(self):
        if self.field.N == 1 or not any(self.coeffs[1:]):
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                if i == 0:
                    terms.append(str(c))
                else:
                    terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    def __reduce__(self):
        return (FieldElement, (self.field, self.coeffs))


# -- public operations --

def find_modulus(p: int, N: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree N over GF(p)."""
    for low in itertools.product(range(p), repeat=N):
        f = list(low) + [1]
        if N > 1 and low[0] == 0:
            continue
        if _int_poly_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def build_ambient(p: int, N: int, budget: int = DEFAULT_BUDGET) -> AmbientField:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p < MIN_CHAR:
        raise CharTooSmall(f"characteristic {p} < {MIN_CHAR}")
    if p >= 2**16:
        raise BudgetExceeded(f"characteristic {p} exceeds 2^16")
    if N < 1:
        raise DegreeZero("extension degree must be at least 1")
    if p**N > budget:
        raise BudgetExceeded(f"{p}^{N} exceeds the field budget {budget}")
    return AmbientField(p, N, find_modulus(p, N))


def frobenius_elt(F: AmbientField, e: FieldElement, j: int) -> FieldElement:
    """``e^(p^j)``."""
    if j < 0:
        raise ValueError("Frobenius power must be non-negative")
    return F(e).frobenius(j)


def elt_degree(F: AmbientField, e: FieldElement) -> int:
    """Degree of the smallest subfield GF(p^m) containing ``e``."""
    e = F(e)
    c = e.coeffs
    cur = c
    for m in range(1, F.N + 1):
        cur = F._frob(cur) if F.N > 1 else cur
        if cur == c:
            return m
    raise AssertionError("Frobenius of full degree must fix every element")  # pragma: no cover


def subfield_generator(F: AmbientField, m: int) -> FieldElement:
    if m < 1 or F.N % m:
        raise NotADivisor(f"{m} does not divide {F.N}")
    Q1 = F.cardinality - 1
    return F.primitive ** (Q1 // (F.p**m - 1))


def subfield_elements(F: AmbientField, m: int) -> list[FieldElement]:
    """GF(p^m) inside F: 0, then h^0, h^1, ... for h = g^((Q-1)/(p^m-1))."""
    h = subfield_generator(F, m).coeffs
    out = [F.zero]
    cur = F.one.coeffs
    for _ in range(F.p**m - 1):
        out.append(FieldElement(F, cur))
        cur = F._mul(cur, h)
    return out


def norm_to_prime(F: AmbientField, e: FieldElement, m: int | None = None) -> int:
    """Norm from GF(p^m) down to GF(p), for ``e`` lying in GF(p^m)."""
    m = F.N if m is None else m
    c = e.coeffs
    acc = c
    cur = c
    for _ in range(m - 1):
        cur = F._frob(cur)
        acc = F._mul(acc, cur)
    return acc[0]


def is_square(F: AmbientField, e: FieldElement, m: int | None = None) -> bool:
    """Quadratic residuosity of ``e`` in GF(p^m) (default: the whole field)."""
    if e.is_zero():
        return True
    n = norm_to_prime(F, e, m)
    return pow(n, (F.p - 1) // 2, F.p) == 1


def sqrt_elt(F: AmbientField, e: FieldElement) -> FieldElement | None:
    """Square root with the lexicographically smaller coefficient list, or None."""
    e = F(e)
    if e.is_zero():
        return F.zero
    Q = F.cardinality
    if F._pow(e.coeffs, (Q - 1) // 2) != F.one.coeffs:
        return None
    # Tonelli-Shanks with the primitive element as the non-residue
    s, t = 0, Q - 1
    while t % 2 == 0:
        t //= 2
        s += 1
    mul, pw = F._mul, F._pow
    one = F.one.coeffs
    z = pw(F.primitive.coeffs, t)
    x = pw(e.coeffs, (t + 1) // 2)
    b = pw(e.coeffs, t)
    r = s
    while b != one:
        i, b2 = 0, b
        while b2 != one:
            b2 = mul(b2, b2)
            i += 1
        w = z
        for _ in range(r - i - 1):
            w = mul(w, w)
        z = mul(w, w)
        x = mul(x, w)
        b = mul(b, z)
        r = i
    neg = F._neg(x)
    return FieldElement(F, min(x, neg))
