"""JSON encodings for certificates, reports and the ``u;v`` text form.

Certificate files are JSON lines: one header object recording the
session field, followed by one object per certificate. Field elements
are ascending residue lists relative to the header modulus.
"""

from __future__ import annotations

import json

from .curve import INFINITY, Curve, CurvePoint, new_curve
from .errors import ParseError, ValidationError
from .field import AmbientField, FieldElement, _int_poly_irreducible
from .jacobian import MumfordDivisor, check_divisor
from .kummer import KummerCertificate, KummerPoint
from .poly import Polynomial
from .search import Certificate, CoverageReport, VerificationReport


def dumps(obj) -> str:
    """Canonical compact JSON (sorted keys), used for every artifact."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def dumps_pretty(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- primitives --

def elt_obj(e: FieldElement) -> list[int]:
    return list(e.coeffs)


def poly_obj(P: Polynomial) -> list[list[int]]:
    return [list(c) for c in P.c]


def point_obj(P: CurvePoint):
    if P.is_infinity:
        return "infinity"
    return {"a": elt_obj(P.a), "b": elt_obj(P.b)}


def divisor_obj(D: MumfordDivisor) -> dict:
    return {"u": poly_obj(D.u), "v": poly_obj(D.v)}


def parse_point(F: AmbientField, obj) -> CurvePoint:
    if obj == "infinity":
        return INFINITY
    try:
        return CurvePoint(F(obj["a"]), F(obj["b"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed point {obj!r}") from exc


def parse_divisor(F: AmbientField, obj) -> MumfordDivisor:
    try:
        return MumfordDivisor(Polynomial(F, [F(c) for c in obj["u"]]), Polynomial(F, [F(c) for c in obj["v"]]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed divisor {obj!r}") from exc


# -- the u;v text form --

def _elt_text(c: tuple[int, ...]) -> str:
    digits = list(c)
    while len(digits) > 1 and digits[-1] == 0:
        digits.pop()
    return ":".join(str(d) for d in digits)


def divisor_text(D: MumfordDivisor) -> str:
    """``u;v`` with comma-separated ascending coefficients.

    Coefficients outside the prime field are written as colon-separated
    residues relative to the session modulus, e.g. ``2:1`` for 2 + t.
    """
    u = ",".join(_elt_text(c) for c in D.u.c)
    v = ",".join(_elt_text(c) for c in D.v.c)
    return f"{u};{v}"


def parse_divisor_text(C: Curve, F: AmbientField, text: str) -> MumfordDivisor:
    if text.count(";") != 1:
        raise ParseError(f"divisor text {text!r} must look like 'u;v'")
    parts = text.split(";")

    def coeffs(s: str):
        s = s.strip()
        if not s:
            return []
        try:
            return [F([int(d) for d in tok.split(":")]) for tok in s.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad coefficient in {text!r}") from exc

    D = MumfordDivisor(Polynomial(F, coeffs(parts[0])), Polynomial(F, coeffs(parts[1])))
    return check_divisor(C, D)


# -- certificate files --

def header_obj(C: Curve, F: AmbientField) -> dict:
    return {
        "kind": "header",
        "label": C.label,
        "p": F.p,
        "N": F.N,
        "modulus": list(F.modulus),
        "f": list(C.f),
    }


def parse_header(obj) -> tuple[Curve, AmbientField]:
    if not isinstance(obj, dict) or obj.get("kind") != "header":
        raise ParseError("first line must be a header object")
    p, N, modulus = obj["p"], obj["N"], list(obj["modulus"])
    if len(modulus) != N + 1 or modulus[-1] != 1 or not _int_poly_irreducible(modulus, p):
        raise ValidationError("header modulus is not a monic irreducible polynomial of degree N")
    C = new_curve(p, obj["f"], obj.get("label", ""))
    return C, AmbientField(p, N, tuple(modulus))


def cert_obj(cert: Certificate, report: VerificationReport) -> dict:
    return {
        "kind": "certificate",
        "label": cert.label,
        "p": cert.p,
        "m": cert.m,
        "n": cert.n,
        "strict": cert.strict,
        "c": point_obj(cert.c),
        "x": divisor_obj(cert.x),
        "orbit_size": cert.orbit_size,
        "transcript_hash": cert.transcript_hash,
        "checks": dict(report.checks),
    }


def parse_cert(F: AmbientField, obj) -> Certificate:
    try:
        return Certificate(
            label=obj.get("label", ""),
            p=int(obj["p"]),
            m=int(obj["m"]),
            n=int(obj["n"]),
            strict=bool(obj["strict"]),
            c=parse_point(F, obj["c"]),
            x=parse_divisor(F, obj["x"]),
            orbit_size=int(obj["orbit_size"]),
            transcript_hash=str(obj["transcript_hash"]),
        )
    except KeyError as exc:
        raise ParseError(f"certificate missing field {exc}") from exc


def kummer_obj(kc: KummerCertificate, report: VerificationReport | None) -> dict:
    if kc.certificate is None:
        return {
            "kind": "kummer",
            "kummer_rep": divisor_obj(kc.point.rep),
            "exceptional": True,
            "sigma_check": kc.sigma_check,
            "two_torsion_check": kc.two_torsion_check,
            "notice": kc.notice,
        }
    out = cert_obj(kc.certificate, report)
    out.update(
        kind="kummer",
        kummer_rep=divisor_obj(kc.point.rep),
        exceptional=False,
        sigma_check=kc.sigma_check,
        two_torsion_check=kc.two_torsion_check,
    )
    return out


def parse_kummer(F: AmbientField, obj) -> KummerCertificate:
    rep = parse_divisor(F, obj["kummer_rep"])
    point = KummerPoint(rep, bool(obj["exceptional"]))
    if point.exceptional:
        return KummerCertificate(point, None, obj["sigma_check"], obj["two_torsion_check"], obj.get("notice"))
    return KummerCertificate(point, parse_cert(F, obj), obj["sigma_check"], obj["two_torsion_check"])


def write_lines(path, objs) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for obj in objs:
            fh.write(dumps(obj) + "\n")


def read_cert_file(path) -> tuple[Curve, AmbientField, list[dict]]:
    """Parse a JSON-lines certificate file into (curve, field, raw objects)."""
    objs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                objs.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ParseError(str(exc), line=lineno) from exc
    if not objs:
        raise ParseError("empty certificate file")
    C, F = parse_header(objs[0])
    return C, F, objs[1:]


# -- reports --

def coverage_obj(report: CoverageReport) -> dict:
    return {
        "kind": "coverage",
        "label": report.label,
        "p": report.p,
        "m": report.m,
        "n": report.n,
        "strict": report.strict,
        "total": report.total,
        "certified": report.certified,
        "coverage": f"{report.certified}/{report.total}",
        "failures": [divisor_text(D) for D in report.failures],
        "swept_positions": report.swept_positions,
        "exhausted": report.exhausted,
        # line numbers refer to the certificate stream, whose line 1 is the header
        "certificates": [
            {"x": divisor_text(c.x), "line": i + 2} for i, c in enumerate(report.certificates)
        ],
    }
