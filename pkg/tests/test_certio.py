import json
import random

import pytest

from kummer_cert import certio
from kummer_cert.curve import curve_points
from kummer_cert.errors import InvalidDivisor, ParseError, ValidationError
from kummer_cert.field import build_ambient
from kummer_cert.jacobian import MumfordDivisor, cantor_add, embed_point, enumerate_jacobian, identity
from kummer_cert.kummer import certify_kummer_point, to_kummer
from kummer_cert.poly import Polynomial
from kummer_cert.search import VerificationReport, _lift, find_certificate, session_field, verify_certificate

F7 = build_ambient(7, 1)


@pytest.fixture(scope="module")
def cert(k7a):
    F = session_field(k7a, 1, 5)
    x = _lift(enumerate_jacobian(k7a)[9], F)
    return find_certificate(k7a, x, 5)


# -- divisor text --

def test_divisor_text_examples(k7a):
    assert certio.divisor_text(identity(F7)) == "1;"
    W = MumfordDivisor(Polynomial(F7, [1, 1]), Polynomial(F7, []))
    assert certio.divisor_text(W) == "1,1;"
    F = build_ambient(7, 2)
    D = MumfordDivisor(Polynomial(F, [F([2, 1]), 1]), Polynomial(F, [F([0, 3])]))
    assert certio.divisor_text(D) == "2:1,1;0:3"


def test_divisor_text_round_trip_prime_field(k7a):
    for D in enumerate_jacobian(k7a):
        text = certio.divisor_text(D)
        assert certio.parse_divisor_text(k7a, F7, text) == D


def test_divisor_text_round_trip_extension(k7a):
    F = build_ambient(7, 3)
    pts = curve_points(k7a, F, 3)[1:]
    rng = random.Random(0)
    for _ in range(100):
        D = cantor_add(k7a, embed_point(k7a, rng.choice(pts)), embed_point(k7a, rng.choice(pts)))
        assert certio.parse_divisor_text(k7a, F, certio.divisor_text(D)) == D


@pytest.mark.parametrize("text,exc", [("1,1", ParseError), ("1;2;3", ParseError), ("a,1;", ParseError), ("0,1;2", InvalidDivisor)])
def test_divisor_text_rejects(k7a, text, exc):
    with pytest.raises(exc):
        certio.parse_divisor_text(k7a, F7, text)


# -- headers and certificates --

def test_header_round_trip(k7a, cert):
    F = cert.field
    obj = certio.header_obj(k7a, F)
    assert obj == {"kind": "header", "label": "k7a", "p": 7, "N": 5, "modulus": [1, 0, 0, 0, 3, 1], "f": [1, 0, 0, 0, 0, 1]}
    C, G = certio.parse_header(json.loads(certio.dumps(obj)))
    assert C == k7a and G.modulus == F.modulus


@pytest.mark.parametrize(
    "change",
    [{"modulus": [1, 0, 0, 0, 0, 1]}, {"modulus": [1, 0, 0, 0, 3, 2]}, {"modulus": [1, 0, 1]}, {"kind": "certificate"}],
)
def test_header_rejects(k7a, change):
    obj = dict(certio.header_obj(k7a, session_field(k7a, 1, 5)), **change)
    with pytest.raises(ValidationError):
        certio.parse_header(obj)


def test_certificate_round_trip(k7a, cert):
    obj = json.loads(certio.dumps(certio.cert_obj(cert, verify_certificate(k7a, cert))))
    assert obj["kind"] == "certificate"
    assert set(obj["checks"].values()) <= {"pass", "skipped"}
    back = certio.parse_cert(cert.field, obj)
    assert back == cert
    assert back.transcript_hash == cert.transcript_hash


def test_certificate_missing_field(cert):
    obj = certio.cert_obj(cert, VerificationReport({}))
    del obj["n"]
    with pytest.raises(ParseError):
        certio.parse_cert(cert.field, obj)


def test_kummer_round_trip(k7a, cert):
    kc = certify_kummer_point(k7a, to_kummer(k7a, cert.x))
    obj = json.loads(certio.dumps(certio.kummer_obj(kc, kc.report)))
    assert obj["kind"] == "kummer" and obj["exceptional"] is False
    back = certio.parse_kummer(cert.field, obj)
    assert back == kc
    W = MumfordDivisor(Polynomial(F7, [1, 1]), Polynomial(F7, []))
    ex = certify_kummer_point(k7a, to_kummer(k7a, W))
    obj = json.loads(certio.dumps(certio.kummer_obj(ex, None)))
    assert obj["notice"] and obj["exceptional"] is True
    assert certio.parse_kummer(F7, obj) == ex


def test_canonical_json_is_sorted_and_compact():
    assert certio.dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


# -- files --

def test_read_cert_file(tmp_path, k7a, cert):
    path = tmp_path / "c.jsonl"
    certio.write_lines(path, [certio.header_obj(k7a, cert.field), certio.cert_obj(cert, verify_certificate(k7a, cert))])
    C, F, objs = certio.read_cert_file(path)
    assert C == k7a and len(objs) == 1
    assert certio.parse_cert(F, objs[0]) == cert


def test_read_cert_file_errors(tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("\n")
    with pytest.raises(ParseError):
        certio.read_cert_file(empty)
    broken = tmp_path / "broken.jsonl"
    broken.write_text('{"kind": "header"}\n{oops\n')
    with pytest.raises(ParseError) as info:
        certio.read_cert_file(broken)
    assert info.value.line == 2
