import random
from dataclasses import replace

import pytest

from kummer_cert.curve import INFINITY, CurvePoint, curve_points, new_curve, point_orbit
from kummer_cert.errors import BadN, BaseFieldMismatch, NotFound, ValidationError
from kummer_cert.field import build_ambient, elt_degree, sqrt_elt
from kummer_cert.jacobian import (
    MumfordDivisor,
    cantor_add,
    element_order,
    embed_point,
    enumerate_jacobian,
    frobenius_div,
    identity,
    negate,
    scalar_mul,
    zeta_data,
)
from kummer_cert.poly import Polynomial
from kummer_cert.search import (
    _lift,
    cover_check,
    find_certificate,
    session_field,
    sweep_traces,
    threads_from_env,
    trace_class,
    verify_certificate,
)

from oracles import closed_point_class

F7 = build_ambient(7, 1)
F75 = build_ambient(7, 5)


def degree5_points(C, F, count, seed):
    f = C.f_over(F)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = F([rng.randrange(F.p) for _ in range(F.N)])
        if elt_degree(F, a) != F.N:
            continue
        r = sqrt_elt(F, f(a))
        if r is not None:
            out.append(CurvePoint(a, r))
    return out


# -- trace classes --

def test_trace_examples(k7a):
    assert trace_class(k7a, INFINITY, 5, 1, F75).is_identity
    c = CurvePoint(F75(0), F75(1))
    assert trace_class(k7a, c, 5) == scalar_mul(k7a, embed_point(k7a, c), 5)
    for P in degree5_points(k7a, F75, 30, 1):
        T = trace_class(k7a, P, 5)
        assert frobenius_div(k7a, T, 1) == T


@pytest.mark.parametrize("p,f", [(7, [1, 0, 0, 0, 0, 1]), (11, [1, 1, 0, 0, 0, 1]), (13, [0, 1, 0, 0, 0, 1])])
def test_trace_matches_closed_point_oracle(p, f):
    C = new_curve(p, f)
    F = build_ambient(p, 5)
    for P in degree5_points(C, F, 25, p):
        orbit, _ = point_orbit(C, P, F)
        expected = closed_point_class(
            C.f, p, [Q.a for Q in orbit], [Q.b for Q in orbit], (F.one, F.zero)
        )
        T = trace_class(C, P, 5)
        got = (tuple(c[0] for c in T.u.c), tuple(c[0] for c in T.v.c))
        assert got == expected


def test_trace_is_orbit_invariant(k7a):
    for P in degree5_points(k7a, F75, 20, 2):
        T = trace_class(k7a, P, 5)
        for j in range(1, 5):
            assert trace_class(k7a, P.frobenius(j), 5) == T


def test_trace_commutes_with_involution(k7a):
    for P in degree5_points(k7a, F75, 20, 3):
        assert trace_class(k7a, P.involute(), 5) == negate(k7a, trace_class(k7a, P, 5))


def test_relative_trace_descends(k7a):
    F = build_ambient(7, 4)
    for P in degree5_points(k7a, F, 20, 4):
        T = trace_class(k7a, P, 2, 2)
        assert frobenius_div(k7a, T, 2) == T


# -- the sweep against a naive scan --

def naive_sweep(C, F, m, n, strict):
    found = {}
    for P in curve_points(C, F, m * n):
        if strict and point_orbit(C, P, F, m)[1] != n:
            continue
        T = trace_class(C, P, n, m, F)
        found.setdefault(T.key(), P)
    return found


@pytest.mark.parametrize("N,m,n,strict", [(3, 1, 3, True), (3, 1, 3, False), (4, 2, 2, True), (4, 1, 4, True), (4, 1, 2, False)])
def test_sweep_matches_naive_scan(k7a, N, m, n, strict):
    F = build_ambient(7, N)
    expected = naive_sweep(k7a, F, m, n, strict)
    found, _, exhausted = sweep_traces(k7a, F, m, n, strict, set(expected) | {("none",)}, chunk=50)
    assert exhausted
    assert {k: v[1] for k, v in found.items()} == expected


def test_sweep_independent_of_workers_and_chunks(k7a):
    F = build_ambient(7, 4)
    targets = {_lift(T, F).key() for T in enumerate_jacobian(k7a)}
    runs = [
        sweep_traces(k7a, F, 1, 4, True, targets, workers=w, chunk=c)[0]
        for w, c in ((1, 2048), (1, 37), (2, 37))
    ]
    assert runs[0] == runs[1] == runs[2]


# -- certificates --

@pytest.fixture(scope="module")
def report7(k7a):
    return cover_check(k7a, 1, 5)


def test_find_certificate_rational_point(k7a):
    F = session_field(k7a, 1, 5)
    x = _lift(embed_point(k7a, CurvePoint(F7(0), F7(1))), F)
    cert = find_certificate(k7a, x, 5)
    assert cert.orbit_size == 5 and cert.strict
    assert trace_class(k7a, cert.c, 5) == x
    assert verify_certificate(k7a, cert).passed
    assert cert.phi_description == "sum_{j=0}^{4} (Fr)^j"


def test_find_certificate_identity(k7a, report7):
    F = session_field(k7a, 1, 5)
    cert = find_certificate(k7a, identity(F), 5)
    assert not cert.c.is_infinity
    assert cert.orbit_size == 5
    assert verify_certificate(k7a, cert).passed
    assert cert == next(c for c in report7.certificates if c.x.is_identity)


def test_find_certificate_matches_cover(k7a, report7):
    for cert in report7.certificates[:4]:
        again = find_certificate(k7a, cert.x, 5)
        assert again == cert


def test_bad_n(k7a):
    F = session_field(k7a, 1, 4)
    with pytest.raises(BadN):
        find_certificate(k7a, identity(F), 4)
    with pytest.raises(BadN):
        cover_check(k7a, 1, 4)
    cert = find_certificate(k7a, identity(F), 4, relaxed=True)
    assert not cert.strict
    assert verify_certificate(k7a, cert).passed


def test_base_field_mismatch(k7a):
    P = degree5_points(k7a, F75, 1, 9)[0]
    with pytest.raises(BaseFieldMismatch):
        find_certificate(k7a, embed_point(k7a, P), 5)


def test_not_found(k7a):
    # with n = 1 every trace is a single point, so no degree-2 class is reachable
    F = session_field(k7a, 1, 1)
    x = next(D for D in enumerate_jacobian(k7a, F) if D.u.degree == 2)
    with pytest.raises(NotFound, match="n = 2"):
        find_certificate(k7a, x, 1, relaxed=True)


def test_threads_from_env(monkeypatch):
    monkeypatch.delenv("KUMMER_THREADS", raising=False)
    assert threads_from_env() == 1
    monkeypatch.setenv("KUMMER_THREADS", "3")
    assert threads_from_env() == 3
    for bad in ("0", "-2", "x"):
        monkeypatch.setenv("KUMMER_THREADS", bad)
        with pytest.raises(ValidationError):
            threads_from_env()


# -- verification --

def test_verify_examples(k7a, report7):
    cert = report7.certificates[3]
    assert verify_certificate(k7a, cert).passed
    F = cert.field
    W = MumfordDivisor(Polynomial(F, [1, 1]), Polynomial(F, []))
    bad = replace(cert, x=cantor_add(k7a, cert.x, W))
    assert verify_certificate(k7a, bad).checks["trace"] == "fail"
    rotated = replace(cert, c=cert.c.frobenius(1))
    checks = verify_certificate(k7a, rotated).checks
    assert checks["trace"] == "pass"
    assert checks["on_curve"] == checks["orbit_size"] == checks["base_fixed"] == "pass"


def test_verify_catches_wrong_n(k7a, report7):
    cert = report7.certificates[5]
    for n in (4, 6, 10):
        assert not verify_certificate(k7a, replace(cert, n=n)).passed


def test_verify_catches_off_curve_witness(k7a, report7):
    cert = report7.certificates[7]
    c = CurvePoint(cert.c.a, cert.c.b + F75.one)
    report = verify_certificate(k7a, replace(cert, c=c))
    assert report.checks["on_curve"] == "fail"
    assert report.checks["order_divisibility"] == "skipped"


def test_order_divisibility(k7a, report7):
    z = zeta_data(k7a)
    ambient = z.jacobian_order_over(5)
    for cert in report7.certificates[:12]:
        assert verify_certificate(k7a, cert, z).checks["order_divisibility"] == "pass"
        # direct check on a few: ord(x) divides ord(iota(c)) in J(GF(7^5))
        D = embed_point(k7a, cert.c)
        ox = element_order(k7a, cert.x, ambient)
        oc = element_order(k7a, D, ambient)
        assert oc % ox == 0


# -- coverage --

def test_cover_bookkeeping(k7a, report7):
    assert report7.total == 50
    assert report7.certified + len(report7.failures) == report7.total
    assert len({c.x.key() for c in report7.certificates}) == report7.certified
    for cert in report7.certificates:
        assert verify_certificate(k7a, cert).passed

