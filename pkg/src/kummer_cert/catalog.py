"""Curve catalogs: JSON arrays of {label, p, f} entries."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .curve import Curve, new_curve
from .errors import KummerError, ParseError, ValidationError


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    p: int
    f: tuple[int, ...]
    line: int = 0

    def curve(self) -> Curve:
        return new_curve(self.p, self.f, self.label)


class EntryRejected(ValidationError):
    def __init__(self, label: str, reason: str, line: int):
        super().__init__(f"line {line}: entry {label!r} rejected: {reason}")
        self.label = label
        self.reason = reason
        self.line = line


def default_catalog_path() -> Path:
    return Path(str(resources.files("kummer_cert") / "data" / "catalog.json"))


def _split_array(text: str):
    """Yield (line, object) for each element of a top-level JSON array."""
    dec = json.JSONDecoder()
    i = 0
    n = len(text)

    def skip(i):
        while i < n and text[i] in " \t\r\n":
            i += 1
        return i

    def line_of(i):
        return text.count("\n", 0, i) + 1

    i = skip(i)
    if i >= n or text[i] != "[":
        raise ParseError("catalog must be a JSON array", line=line_of(i))
    i = skip(i + 1)
    if i < n and text[i] == "]":
        return
    while True:
        try:
            obj, end = dec.raw_decode(text, i)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=exc.lineno) from exc
        yield line_of(i), obj
        i = skip(end)
        if i < n and text[i] == ",":
            i = skip(i + 1)
            continue
        if i < n and text[i] == "]":
            if skip(i + 1) != n:
                raise ParseError("trailing data after catalog array", line=line_of(i))
            return
        raise ParseError("expected ',' or ']'", line=line_of(i))


def _validate(line: int, obj) -> CatalogEntry:
    label = obj.get("label", f"<line {line}>") if isinstance(obj, dict) else f"<line {line}>"
    if not isinstance(obj, dict):
        raise EntryRejected(label, "entry is not an object", line)
    if not isinstance(obj.get("label"), str):
        raise EntryRejected(label, "missing string label", line)
    p, f = obj.get("p"), obj.get("f")
    if not isinstance(p, int) or isinstance(p, bool):
        raise EntryRejected(label, "p must be an integer", line)
    if not isinstance(f, list) or len(f) != 6 or not all(isinstance(c, int) for c in f):
        raise EntryRejected(label, "f must be a list of 6 integers", line)
    if f[5] != 1:
        raise EntryRejected(label, "NotMonic", line)
    try:
        new_curve(p, f, label)
    except KummerError as exc:
        raise EntryRejected(label, exc.code, line) from exc
    return CatalogEntry(label, p, tuple(c % p for c in f), line)


def load_catalog(path=None, skip_invalid: bool = False):
    """Validated entries in file order.

    With ``skip_invalid`` the result is ``(entries, rejections)``;
    otherwise the first invalid entry raises :class:`EntryRejected`.
    """
    path = Path(path) if path is not None else default_catalog_path()
    text = path.read_text(encoding="utf-8")
    entries, rejections = [], []
    for line, obj in _split_array(text):
        try:
            entries.append(_validate(line, obj))
        except EntryRejected as exc:
            if not skip_invalid:
                raise
            rejections.append(exc)
    return (entries, rejections) if skip_invalid else entries


def find_entry(entries, label: str) -> CatalogEntry:
    for e in entries:
        if e.label == label:
            return e
    raise ValidationError(f"no catalog entry labelled {label!r}")
