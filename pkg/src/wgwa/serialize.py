"""Versioned JSON for universes, modules, matrix realizations and reports.

Every document carries ``"schema": "wgwa/1"`` and a ``"type"`` field;
``loads`` dispatches on the type and rebuilds the object.  Report documents
(orbit, classification, catalogue, relation checks) come back as validated
dicts, with the universe rebuilt where one is embedded.
"""

from __future__ import annotations

import json
from fractions import Fraction

import sympy

from .bands import BandModule, build_band, detect_band_data, pmodule
from .errors import WGWAError
from .fields import ExtensionField, PrimeField, RationalField
from .oracle import FiniteModule
from .strings import StringModule, build_string
from .universe import make_universe

SCHEMA = "wgwa/1"
REPORT_TYPES = ("orbit", "classification", "catalogue", "check", "string_report", "band_report")


class SchemaError(WGWAError):
    code = "schema_error"


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def document(kind: str, body: dict) -> dict:
    out = {"schema": SCHEMA, "type": kind}
    out.update(body)
    return out


# ---------------------------------------------------------------- encoders


def universe_doc(u) -> dict:
    return document("universe", {"universe": u.describe()})


def string_doc(s: StringModule) -> dict:
    return document("string", {"universe": s.universe.describe(), **s.describe()})


def band_doc(bm: BandModule) -> dict:
    return document("band", {"universe": bm.universe.describe(), **bm.describe()})


def finite_module_doc(fm: FiniteModule) -> dict:
    if not isinstance(fm.field, PrimeField):
        raise SchemaError("matrix dumps are defined over prime fields only")
    return document("finite_module", fm.to_dict())


def report_doc(kind: str, body: dict, u=None) -> dict:
    if kind not in REPORT_TYPES:
        raise SchemaError(f"unknown report type {kind!r}")
    extra = {"universe": u.describe()} if u is not None else {}
    return document(kind, {**extra, **body})


def to_document(obj) -> dict:
    if isinstance(obj, StringModule):
        return string_doc(obj)
    if isinstance(obj, BandModule):
        return band_doc(obj)
    if isinstance(obj, FiniteModule):
        return finite_module_doc(obj)
    if hasattr(obj, "describe") and hasattr(obj, "down"):
        return universe_doc(obj)
    raise SchemaError(f"cannot serialize {type(obj).__name__}")


# ---------------------------------------------------------------- decoders


def _field_entry(K, x):
    if isinstance(K, ExtensionField):
        return K.from_coords([int(c) for c in x]) if isinstance(x, list) else K(int(x))
    if isinstance(K, PrimeField):
        return K(int(x))
    if isinstance(K, RationalField):
        return Fraction(str(x))
    return sympy.sympify(x)


def from_document(doc: dict):
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise SchemaError(f"expected a {SCHEMA} document")
    kind = doc.get("type")
    try:
        if kind == "universe":
            return make_universe(doc["universe"])
        if kind == "string":
            u = make_universe(doc["universe"])
            ideals = [u.parse_ideal(x) for x in doc["window"]]
            return build_string(u, doc["kind"], ideals, lo=int(doc["lo"]))
        if kind == "band":
            u = make_universe(doc["universe"])
            band = detect_band_data(u, u.parse_ideal(doc["cycle"][0]))
            if [m.render() for m in band.cycle] != list(doc["cycle"]):
                raise SchemaError("stored cycle does not match the universe")
            K = band.field
            alpha = [[_field_entry(K, x) for x in row] for row in doc["alpha"]]
            return build_band(band, pmodule(band, alpha), doc["variant"])
        if kind == "finite_module":
            return FiniteModule.from_dict(doc)
        if kind in REPORT_TYPES:
            out = dict(doc)
            if "universe" in out:
                out["universe"] = make_universe(out["universe"])
            return out
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed {kind} document: {exc}") from None
    raise SchemaError(f"unknown document type {kind!r}")


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return from_document(doc)


def load_path(path: str):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
