"""The Jacobian of a genus-2 curve as an explicit group.

Divisor classes use Mumford coordinates (u, v); the group law is Cantor's
composition and reduction for y^2 = f(x), f of degree 5, odd
characteristic. The identity is (1, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, valuation
from .curve import Curve, CurvePoint, count_points, curve_points
from .errors import (
    BudgetExceeded,
    FieldMismatch,
    InconsistentCounts,
    InvalidDivisor,
    NotADivisor,
    OrderViolation,
    PointNotOnCurve,
)
from .field import AmbientField, build_ambient, subfield_elements
from .poly import Polynomial, _add, _divmod, _mul, _sub, _trim, poly_xgcd

ENUM_BUDGET = 10**8
FACTOR_BOUND = 10**6


@dataclass(frozen=True)
class MumfordDivisor:
    u: Polynomial
    v: Polynomial

    @property
    def field(self) -> AmbientField:
        return self.u.field

    @property
    def is_identity(self) -> bool:
        return self.u.degree == 0

    def key(self) -> tuple:
        """Canonical comparison key: u coefficients then v coefficients."""
        return (self.u.c, self.v.c)

    def __lt__(self, other: MumfordDivisor):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, MumfordDivisor) and self.key() == other.key()

    def __repr__(self):
        return f"<{self.u!r}, {self.v!r}>"


def identity(F: AmbientField) -> MumfordDivisor:
    return MumfordDivisor(Polynomial(F, [1]), Polynomial(F, []))


def is_valid_divisor(C: Curve, D: MumfordDivisor) -> bool:
    u, v = D.u, D.v
    if u.is_zero() or u.degree > 2 or u.lead() != D.field.one:
        return False
    if v.degree >= u.degree:
        return False
    return ((v * v - C.f_over(D.field)) % u).is_zero()


def check_divisor(C: Curve, D: MumfordDivisor) -> MumfordDivisor:
    if not isinstance(D, MumfordDivisor):
        raise InvalidDivisor(f"not a divisor: {D!r}")
    if D.field.p != C.p:
        raise FieldMismatch("divisor and curve live in different characteristics")
    if not is_valid_divisor(C, D):
        raise InvalidDivisor(f"{D!r} is not a reduced Mumford pair for {C}")
    return D


def make_divisor(C: Curve, F: AmbientField, u, v) -> MumfordDivisor:
    """Build and validate a divisor from coefficient lists."""
    D = MumfordDivisor(Polynomial(F, u), Polynomial(F, v))
    return check_divisor(C, D)


def embed_point(C: Curve, P: CurvePoint, F: AmbientField | None = None) -> MumfordDivisor:
    """Abel-Jacobi map with base point infinity: (a, b) -> (x - a, b)."""
    if P.is_infinity:
        if F is None:
            raise ValueError("a field is needed to embed the point at infinity")
        return identity(F)
    if not C.contains(P):
        raise PointNotOnCurve(f"{P!r} is not on {C}")
    F = P.a.field
    return MumfordDivisor(Polynomial(F, [-P.a, 1]), Polynomial(F, [P.b]))


def _cantor(f: Polynomial, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    F = f.field
    u1, v1, u2, v2 = D1.u, D1.v, D2.u, D2.v
    d1, e1, e2 = poly_xgcd(u1, u2)
    if d1.degree == 0:
        # coprime supports: d = 1
        u = u1 * u2
        v = (e1 * u1 * v2 + e2 * u2 * v1) % u
    else:
        d, c1, c2 = poly_xgcd(d1, v1 + v2)
        s1, s2 = c1 * e1, c1 * e2
        dd = d * d
        u = (u1 * u2) // dd
        v = ((s1 * u1 * v2 + s2 * u2 * v1 + c2 * (v1 * v2 + f)) // d) % u
    fc = f.c
    uc, vc = u.c, v.c
    while len(uc) > 3:
        num = _sub(F, fc, _mul(F, vc, vc))
        uc = _divmod(F, num, uc)[0]
        inv = F._inv(uc[-1])
        uc = tuple(F._mul(a, inv) for a in uc)
        vc = _divmod(F, tuple(F._neg(a) for a in vc), uc)[1]
    if uc[-1] != F.one.coeffs:
        inv = F._inv(uc[-1])
        uc = tuple(F._mul(a, inv) for a in uc)
    vc = _divmod(F, vc, uc)[1]
    return MumfordDivisor(Polynomial._raw(F, uc), Polynomial._raw(F, vc))


def _inv_linear_mod(F, a1, a0, u1, u0):
    """(a1 x + a0)^-1 mod x^2 + u1 x + u0 as (c1, c0), or None if not invertible."""
    mul, sub, add = F._mul, F._sub, F._add
    res = add(sub(mul(a0, a0), mul(mul(a0, a1), u1)), mul(mul(a1, a1), u0))
    if not any(res):
        return None
    r = F._inv(res)
    return mul(F._neg(a1), r), mul(sub(a0, mul(a1, u1)), r)


def _mulmod_linear(F, a1, a0, b1, b0, u1, u0):
    """(a1 x + a0)(b1 x + b0) mod x^2 + u1 x + u0."""
    mul, sub, add = F._mul, F._sub, F._add
    c2 = mul(a1, b1)
    c1 = add(mul(a1, b0), mul(a0, b1))
    c0 = mul(a0, b0)
    return sub(c1, mul(c2, u1)), sub(c0, mul(c2, u0))


def _finish(F, fc, U, V):
    """One reduction step from (U, V) with deg U in {3, 4}, deg V < deg U."""
    uc = _divmod(F, _sub(F, fc, _mul(F, V, V)), U)[0]
    inv = F._inv(uc[-1])
    uc = tuple(F._mul(a, inv) for a in uc)
    vc = _divmod(F, tuple(F._neg(a) for a in V), uc)[1]
    return MumfordDivisor(Polynomial._raw(F, uc), Polynomial._raw(F, vc))


def _pad2(F, vc):
    zero = F.zero.coeffs
    return (vc + (zero, zero))[:2]


def _fast_add(F, fc, D1, D2):
    """Generic case: deg u1 = deg u2 = 2 with coprime u1, u2."""
    u1, u2 = D1.u.c, D2.u.c
    v10, v11 = _pad2(F, D1.v.c)
    v20, v21 = _pad2(F, D2.v.c)
    # s = (v2 - v1) / u1 mod u2
    inv = _inv_linear_mod(F, F._sub(u1[1], u2[1]), F._sub(u1[0], u2[0]), u2[1], u2[0])
    if inv is None:
        return None
    s1, s0 = _mulmod_linear(F, F._sub(v21, v11), F._sub(v20, v10), inv[0], inv[1], u2[1], u2[0])
    V = _add(F, D1.v.c, _mul(F, _trim(F, [s0, s1]), u1))
    return _finish(F, fc, _mul(F, u1, u2), V)


def _fast_double(F, fc, D):
    """Generic case: deg u = 2 and v invertible mod u."""
    u = D.u.c
    v0, v1 = _pad2(F, D.v.c)
    inv = _inv_linear_mod(F, F._add(v1, v1), F._add(v0, v0), u[1], u[0])
    if inv is None:
        return None
    k = _divmod(F, _sub(F, fc, _mul(F, D.v.c, D.v.c)), u)[0]
    k0, k1 = _pad2(F, _divmod(F, k, u)[1])
    s1, s0 = _mulmod_linear(F, k1, k0, inv[0], inv[1], u[1], u[0])
    V = _add(F, D.v.c, _mul(F, _trim(F, [s0, s1]), u))
    return _finish(F, fc, _mul(F, u, u), V)


def _fast_mixed(F, fc, D1, D2):
    """deg u1 = 2 plus a point divisor (x - a, b) with u1(a) != 0."""
    u1 = D1.u.c
    v10, v11 = _pad2(F, D1.v.c)
    mul, add = F._mul, F._add
    a = F._neg(D2.u.c[0])
    ua = add(add(mul(a, a), mul(u1[1], a)), u1[0])
    if not any(ua):
        return None
    b = D2.v.c[0] if D2.v.c else F.zero.coeffs
    k = mul(F._sub(b, add(mul(v11, a), v10)), F._inv(ua))
    V = _trim(F, [add(v10, mul(k, u1[0])), add(v11, mul(k, u1[1])), k])
    return _finish(F, fc, _mul(F, u1, D2.u.c), V)


def _fast_points(F, D1, D2):
    """Two point divisors (x - a1, b1), (x - a2, b2) with a1 != a2: the chord."""
    a1, a2 = F._neg(D1.u.c[0]), F._neg(D2.u.c[0])
    if a1 == a2:
        return None
    zero = F.zero.coeffs
    b1 = D1.v.c[0] if D1.v.c else zero
    b2 = D2.v.c[0] if D2.v.c else zero
    s = F._mul(F._sub(b2, b1), F._inv(F._sub(a2, a1)))
    uc = (F._mul(a1, a2), F._neg(F._add(a1, a2)), F.one.coeffs)
    vc = _trim(F, [F._sub(b1, F._mul(s, a1)), s])
    return MumfordDivisor(Polynomial._raw(F, uc), Polynomial._raw(F, vc))


def cantor_add(C: Curve, D1: MumfordDivisor, D2: MumfordDivisor, check: bool = True) -> MumfordDivisor:
    """D1 + D2 in J(C)."""
    if check:
        check_divisor(C, D1)
        check_divisor(C, D2)
        if D1.field != D2.field:
            raise FieldMismatch("divisors over different fields")
    if D1.is_identity:
        return D2
    if D2.is_identity:
        return D1
    f = C.f_over(D1.field)
    F = f.field
    n1, n2 = len(D1.u.c), len(D2.u.c)
    out = None
    if n1 == 3 and n2 == 3:
        if D1.u.c != D2.u.c:
            out = _fast_add(F, f.c, D1, D2)
        elif D1.v.c == D2.v.c:
            out = _fast_double(F, f.c, D1)
    elif n1 == 3:
        out = _fast_mixed(F, f.c, D1, D2)
    elif n2 == 3:
        out = _fast_mixed(F, f.c, D2, D1)
    else:
        out = _fast_points(F, D1, D2)
    if out is not None:
        return out
    return _cantor(f, D1, D2)


def cantor_add_generic(C: Curve, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    """Cantor composition and reduction with no special-case shortcuts."""
    if D1.is_identity:
        return D2
    if D2.is_identity:
        return D1
    return _cantor(C.f_over(D1.field), D1, D2)


def negate(C: Curve, D: MumfordDivisor) -> MumfordDivisor:
    """The involution x -> -x: (u, v) -> (u, -v mod u)."""
    return MumfordDivisor(D.u, -D.v)


def scalar_mul(C: Curve, D: MumfordDivisor, k: int, check: bool = True) -> MumfordDivisor:
    if check:
        check_divisor(C, D)
    if k < 0:
        D, k = negate(C, D), -k
    result = identity(D.field)
    base = D
    while k:
        if k & 1:
            result = cantor_add(C, result, base, check=False)
        k >>= 1
        if k:
            base = cantor_add(C, base, base, check=False)
    return result


def frobenius_div(C: Curve, D: MumfordDivisor, j: int = 1) -> MumfordDivisor:
    """Apply x -> x^(p^j) to every Mumford coefficient."""
    return MumfordDivisor(D.u.frobenius(j), D.v.frobenius(j))


def frobenius_sum_transcript(C: Curve, D: MumfordDivisor, n: int, base_power: int = 1):
    """Sum of Fr^(base_power*j)(D), j < n, with the list of partial sums."""
    if n < 1:
        raise ValueError("n must be positive")
    term = acc = D
    transcript = [acc]
    for _ in range(n - 1):
        term = frobenius_div(C, term, base_power)
        acc = cantor_add(C, acc, term, check=False)
        transcript.append(acc)
    return acc, transcript


def frobenius_sum(C: Curve, D: MumfordDivisor, n: int, base_power: int = 1) -> MumfordDivisor:
    check_divisor(C, D)
    return frobenius_sum_transcript(C, D, n, base_power)[0]


def enumerate_jacobian(C: Curve, F: AmbientField | None = None, m: int = 1) -> list[MumfordDivisor]:
    """All of J(GF(p^m)) by brute force over Mumford pairs.

    Order: identity, then degree-1 classes in curve-point order, then
    degree-2 classes by (u0, u1, v0, v1) in subfield enumeration order.
    """
    if F is None:
        F = build_ambient(C.p, m)
    if F.N % m:
        raise NotADivisor(f"{m} does not divide {F.N}")
    q = C.p**m
    if q**4 > ENUM_BUDGET:
        raise BudgetExceeded(f"q^4 = {q**4} exceeds the enumeration budget")
    f = C.f_over(F)
    out = [identity(F)]
    for P in curve_points(C, F, m)[1:]:
        out.append(embed_point(C, P))
    K = [e.coeffs for e in subfield_elements(F, m)]
    fc = f.c
    one = F.one.coeffs
    zero = F.zero.coeffs
    for u0 in K:
        for u1 in K:
            uc = (u0, u1, one)
            # f mod u, then test v^2 == f mod u for every linear v
            fr = _divmod(F, fc, uc)[1]
            for v0 in K:
                for v1 in K:
                    vc = (v0, v1) if v1 != zero else ((v0,) if v0 != zero else ())
                    sq = _divmod(F, _mul(F, vc, vc), uc)[1]
                    if sq == fr:
                        out.append(MumfordDivisor(Polynomial._raw(F, uc), Polynomial._raw(F, vc)))
    return out


# -- zeta function --

@dataclass(frozen=True)
class ZetaData:
    q: int
    N1: int
    N2: int
    s1: int
    s2: int
    L_coeffs: tuple[int, int, int, int, int]
    jacobian_order: int
    newton_slopes: tuple[Fraction, ...]
    p_rank: int
    supersingular: bool

    def power_sums(self, upto: int) -> list[int]:
        """S_k = sum of k-th powers of the reciprocal Frobenius roots, k = 0..upto."""
        c = self.L_coeffs
        e = [1, -c[1], c[2], -c[3], c[4]]
        S = [4]
        for k in range(1, upto + 1):
            acc = 0
            for i in range(1, min(k, 4) + 1):
                acc += (-1) ** (i - 1) * e[i] * (S[k - i] if k - i > 0 else 0)
            if k <= 4:
                acc += (-1) ** (k - 1) * k * e[k]
            S.append(acc)
        return S

    def points_over(self, k: int) -> int:
        """#C(GF(q^k)) from the L-polynomial."""
        return self.q**k + 1 - self.power_sums(k)[k]

    def jacobian_order_over(self, k: int) -> int:
        """#J(GF(q^k)) from the L-polynomial."""
        S = self.power_sums(2 * k)
        e1 = S[k]
        e2 = (S[k] ** 2 - S[2 * k]) // 2
        Qk = self.q**k
        return 1 - e1 + e2 - Qk * e1 + Qk * Qk

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "N1": self.N1,
            "N2": self.N2,
            "s1": self.s1,
            "s2": self.s2,
            "L_coeffs": list(self.L_coeffs),
            "jacobian_order": self.jacobian_order,
            "newton_slopes": [str(s) for s in self.newton_slopes],
            "p_rank": self.p_rank,
            "supersingular": self.supersingular,
        }


def newton_slopes(coeffs, p: int) -> tuple[Fraction, ...]:
    """Slopes (with multiplicity) of the lower convex hull of (i, v_p(c_i))."""
    pts = [(i, valuation(c, p)) for i, c in enumerate(coeffs)]
    pts = [(i, v) for i, v in pts if v != float("inf")]
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes: list[Fraction] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.extend([Fraction(y2 - y1, x2 - x1)] * (x2 - x1))
    return tuple(slopes)


def zeta_data(C: Curve) -> ZetaData:
    q = C.p
    N1 = count_points(C, 1)
    N2 = count_points(C, 2)
    s1 = q + 1 - N1
    s2 = q * q + 1 - N2
    if (s1 * s1 - s2) % 2:
        raise InconsistentCounts(f"s1^2 - s2 = {s1 * s1 - s2} is odd")
    a2 = (s1 * s1 - s2) // 2
    L = (1, -s1, a2, -q * s1, q * q)
    slopes = newton_slopes(L, C.p)
    p_rank = sum(1 for s in slopes if s == 0)
    return ZetaData(
        q=q,
        N1=N1,
        N2=N2,
        s1=s1,
        s2=s2,
        L_coeffs=L,
        jacobian_order=sum(L),
        newton_slopes=slopes,
        p_rank=p_rank,
        supersingular=all(s == Fraction(1, 2) for s in slopes),
    )


def element_order(
    C: Curve, D: MumfordDivisor, group_order: int, factor_bound: int | None = FACTOR_BOUND
) -> int:
    """Exact order of D, given a multiple ``group_order`` of it."""
    check_divisor(C, D)
    if not scalar_mul(C, D, group_order, check=False).is_identity:
        raise OrderViolation(f"{group_order} * D is not the identity")
    factors = factorize(group_order, bound=factor_bound)
    if factors is None:
        raise BudgetExceeded(f"cannot factor {group_order} within bound {factor_bound}")
    order = group_order
    for r, e in factors.items():
        for _ in range(e):
            if scalar_mul(C, D, order // r, check=False).is_identity:
                order //= r
            else:
                break
    return order
