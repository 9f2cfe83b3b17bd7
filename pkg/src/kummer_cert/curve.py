"""Genus-2 curves y^2 = f(x) with f a monic squarefree quintic over GF(p).

The unique point at infinity is rational and a Weierstrass point; it is
the base point of the Abel-Jacobi embedding used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .arith import is_prime
from .errors import (
    BadDegree,
    BudgetExceeded,
    CharTooSmall,
    FieldMismatch,
    FieldTooSmall,
    NotADivisor,
    NotMonic,
    NotPrime,
    NotSquarefree,
    PointNotOnCurve,
)
from .field import (
    MIN_CHAR,
    AmbientField,
    FieldElement,
    _pdivmod,
    _ppowmod,
    _psub,
    build_ambient,
    is_square,
    sqrt_elt,
    subfield_elements,
)
from .poly import Polynomial, is_squarefree, poly_roots

GENUS = 2
COUNT_BUDGET = 10**8


@dataclass(frozen=True)
class CurvePoint:
    """A point of C: ``a is None`` encodes the point at infinity."""

    a: FieldElement | None = None
    b: FieldElement | None = None

    @property
    def is_infinity(self) -> bool:
        return self.a is None

    def frobenius(self, j: int = 1) -> CurvePoint:
        if self.a is None:
            return self
        return CurvePoint(self.a.frobenius(j), self.b.frobenius(j))

    def involute(self) -> CurvePoint:
        """Hyperelliptic involution (a, b) -> (a, -b)."""
        if self.a is None:
            return self
        return CurvePoint(self.a, -self.b)

    def key(self) -> tuple:
        if self.a is None:
            return ()
        return (self.a.coeffs, self.b.coeffs)

    def __repr__(self):
        return "Infinity" if self.a is None else f"({self.a!r}, {self.b!r})"


INFINITY = CurvePoint()


@dataclass(frozen=True)
class Curve:
    p: int
    f: tuple[int, ...]  # ascending residues, f[5] == 1
    label: str = field(default="", compare=False)

    def f_over(self, F: AmbientField) -> Polynomial:
        if F.p != self.p:
            raise FieldMismatch(f"field characteristic {F.p} != curve prime {self.p}")
        return _f_over(self.f, F)

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        F = P.a.field
        return P.b * P.b == self.f_over(F)(P.a)

    def __str__(self):
        terms = []
        for i in range(5, -1, -1):
            c = self.f[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if (c == 1 and mono) else f"{c}{mono}")
        name = f"{self.label}: " if self.label else ""
        return f"{name}y^2 = {' + '.join(terms)} over GF({self.p})"


@lru_cache(maxsize=64)
def _f_over(f: tuple[int, ...], F: AmbientField) -> Polynomial:
    return Polynomial(F, list(f))


def new_curve(p: int, f_coeffs, label: str = "") -> Curve:
    """Validate and build the curve y^2 = f(x) over GF(p)."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p < MIN_CHAR:
        raise CharTooSmall(f"characteristic {p} < {MIN_CHAR}")
    f = [int(c) % p for c in f_coeffs]
    while f and f[-1] == 0:
        f.pop()
    if len(f) - 1 != 5:
        raise BadDegree(f"f has degree {len(f) - 1}, expected 5")
    if f[5] != 1:
        raise NotMonic("leading coefficient of f must be 1")
    if not is_squarefree(Polynomial(build_ambient(p, 1), f)):
        raise NotSquarefree("f has a repeated root")
    return Curve(p, tuple(f), label)


def _check(C: Curve, F: AmbientField, m: int) -> None:
    if F.p != C.p:
        raise FieldMismatch(f"field characteristic {F.p} != curve prime {C.p}")
    if m < 1 or F.N % m:
        raise NotADivisor(f"{m} does not divide {F.N}")


def curve_points(C: Curve, F: AmbientField, m: int) -> list[CurvePoint]:
    """C(GF(p^m)) inside F: infinity first, then by x in subfield order."""
    _check(C, F, m)
    f = C.f_over(F)
    out = [INFINITY]
    for a in subfield_elements(F, m):
        z = f(a)
        if z.is_zero():
            out.append(CurvePoint(a, z))
        elif is_square(F, z, m):
            r = sqrt_elt(F, z)
            out.append(CurvePoint(a, r))
            out.append(CurvePoint(a, -r))
    return out


def _legendre(z: int, p: int) -> int:
    if z % p == 0:
        return 0
    return 1 if pow(z, (p - 1) // 2, p) == 1 else -1


def _count_prime_field(C: Curve) -> int:
    p, f = C.p, C.f
    total = 1
    for a in range(p):
        z = 0
        for c in reversed(f):
            z = (z * a + c) % p
        total += 1 + _legendre(z, p)
    return total


def _count_quadratic(C: Curve) -> int:
    # GF(p^2) = GF(p)(s), s^2 = d for the smallest non-residue d
    p, f = C.p, C.f
    d = next(k for k in range(2, p) if _legendre(k, p) == -1)
    total = 1
    for x0 in range(p):
        for x1 in range(p):
            z0, z1 = 0, 0
            for c in reversed(f):
                z0, z1 = (z0 * x0 + d * z1 * x1 + c) % p, (z0 * x1 + z1 * x0) % p
            total += 1 + _legendre(z0 * z0 - d * z1 * z1, p)
    return total


def count_points(C: Curve, m: int) -> int:
    """N_m = #C(GF(p^m))."""
    if m < 1:
        raise NotADivisor("extension degree must be positive")
    if C.p**m > COUNT_BUDGET:
        raise BudgetExceeded(f"{C.p}^{m} exceeds the point-counting budget")
    if m == 1:
        return _count_prime_field(C)
    if m == 2:
        return _count_quadratic(C)
    return len(curve_points(C, build_ambient(C.p, m), m))


def point_orbit(C: Curve, P: CurvePoint, F: AmbientField, j: int = 1):
    """Orbit of P under Fr^j, returned as (orbit, size)."""
    if not C.contains(P):
        raise PointNotOnCurve(f"{P!r} is not on {C}")
    orbit = [P]
    Q = P.frobenius(j)
    while Q != P:
        orbit.append(Q)
        Q = Q.frobenius(j)
    return orbit, len(orbit)


def splitting_degree(C: Curve) -> int:
    """Degree of the splitting field of f over GF(p)."""
    p, f = C.p, list(C.f)
    r = [0, 1]
    for d in range(1, 61):
        r = _ppowmod(r, p, f, p)
        if not _pdivmod(_psub(r, [0, 1], p), f, p)[1]:
            return d
    raise AssertionError("splitting degree above 60")  # pragma: no cover


def f_roots(C: Curve, F: AmbientField) -> list[FieldElement]:
    """The five roots of f in F, in subfield enumeration order."""
    d = splitting_degree(C)
    if F.p != C.p:
        raise FieldMismatch(f"field characteristic {F.p} != curve prime {C.p}")
    if F.N % d:
        raise FieldTooSmall(f"f splits over GF({C.p}^{d}), not inside GF({C.p}^{F.N})")
    roots = poly_roots(C.f_over(F), subfield_elements(F, d))
    assert len(roots) == 5
    return roots


def weierstrass_points(C: Curve, F: AmbientField) -> list[CurvePoint]:
    """Infinity plus (r, 0) for every root r of f."""
    return [INFINITY] + [CurvePoint(r, F.zero) for r in f_roots(C, F)]
