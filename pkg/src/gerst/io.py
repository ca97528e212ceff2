"""HopfFile: JSON structure-constant documents with exact scalar strings.

Canonical form is ``json.dumps(doc, sort_keys=True, indent=2)`` plus a
trailing newline, so ``dumps_hopf(loads_hopf(text)) == text`` for any
canonical ``text``.  See ``docs/hopf_file_format.md``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .field import FieldError, FieldSpec
from .hopf import HopfData, ensure_hopf

KEYS = ("name", "field", "dim", "unit", "mult", "counit", "comult", "antipode")
OPTIONAL = ("provenance",)


class HopfFileError(ValueError):
    def __init__(self, message: str, key: str | None = None):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key


def to_document(H: HopfData) -> dict:
    fmt = H.field.format
    doc = {
        "name": H.name,
        "field": H.field.to_json(),
        "dim": H.dim,
        "unit": [fmt(x) for x in H.unit],
        "mult": [fmt(x) for x in H.mult.reshape(-1)],
        "counit": [fmt(x) for x in H.counit],
        "comult": [fmt(x) for x in H.comult.reshape(-1)],
        "antipode": [fmt(x) for x in H.antipode.reshape(-1)],
    }
    if H.provenance is not None:
        doc["provenance"] = H.provenance
    return doc


def dumps_hopf(H: HopfData) -> str:
    return json.dumps(to_document(H), sort_keys=True, indent=2) + "\n"


def _scalars(field: FieldSpec, doc: dict, key: str, length: int) -> np.ndarray:
    vals = doc[key]
    if not isinstance(vals, list):
        raise HopfFileError("expected an array of scalar strings", key)
    if len(vals) != length:
        raise HopfFileError(f"expected {length} entries, found {len(vals)}", key)
    out = field.zeros(length)
    for k, v in enumerate(vals):
        if not isinstance(v, str):
            raise HopfFileError(f"entry {k} is not a string", key)
        try:
            out[k] = field.elem(field.parse(v))
        except FieldError as exc:
            raise HopfFileError(f"entry {k}: {exc}", key) from None
    return out


def from_document(doc, validate: bool = True) -> HopfData:
    if not isinstance(doc, dict):
        raise HopfFileError("top level must be an object")
    for key in KEYS:
        if key not in doc:
            raise HopfFileError("missing key", key)
    unknown = sorted(set(doc) - set(KEYS) - set(OPTIONAL))
    if unknown:
        raise HopfFileError("unknown key", unknown[0])
    if not isinstance(doc["name"], str):
        raise HopfFileError("expected a string", "name")
    try:
        field = FieldSpec.from_json(doc["field"])
    except (FieldError, KeyError, TypeError, ValueError) as exc:
        raise HopfFileError(str(exc), "field") from None
    d = doc["dim"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise HopfFileError("expected a positive integer", "dim")
    prov = doc.get("provenance")
    if prov is not None and not isinstance(prov, str):
        raise HopfFileError("expected a string", "provenance")
    H = HopfData(
        field, d,
        mult=_scalars(field, doc, "mult", d ** 3).reshape(d, d, d),
        unit=_scalars(field, doc, "unit", d),
        comult=_scalars(field, doc, "comult", d ** 3).reshape(d, d, d),
        counit=_scalars(field, doc, "counit", d),
        antipode=_scalars(field, doc, "antipode", d * d).reshape(d, d),
        name=doc["name"], provenance=prov,
    )
    if validate:
        ensure_hopf(H)
    return H


def loads_hopf(text: str, validate: bool = True) -> HopfData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise HopfFileError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_document(doc, validate=validate)


def parse_hopf(path, validate: bool = True) -> HopfData:
    return loads_hopf(Path(path).read_text(encoding="utf-8"), validate=validate)


def write_hopf(H: HopfData, path) -> None:
    Path(path).write_text(dumps_hopf(H), encoding="utf-8")
