"""The session file format: one JSON document naming everything a command needs.

Top-level keys: ``field``, ``objects``, ``maps``, ``homotopies``,
``roofs``.  Objects are complexes given by sparse degree tables::

    {
      "field": {"kind": "prime", "p": 5},
      "objects": {
        "A": {"dims": {"0": 2, "1": 1}, "diff": {"0": [[1, 2]]}}
      },
      "maps": {
        "f": {"from": "A", "to": "A", "components": {"0": [[1, 0], [0, 1]], "1": [[1]]}}
      },
      "homotopies": {},
      "roofs": {}
    }

Degree keys are decimal integers in canonical form; omitted degrees are
zero.  Scalars are integers (reduced modulo p on load) over a prime
field, and integers or "a/b" strings over the rationals.  A complex's
support window is the hull of its declared degrees; emission writes
every window degree into ``dims``, so windows survive a round trip and
``emit(parse(emit(x)))`` equals ``emit(x)`` byte for byte.

Parsing is eager: every complex must satisfy d(d(x)) = 0, every map
must commute with the differentials, and every roof denominator must be
a quasi-isomorphism before any command runs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .chainmaps import ChainMap, Homotopy, validate_chain_map
from .complexes import CochainComplex, validate_complex
from .errors import (
    InvalidChainMapError,
    InvalidComplexError,
    NotQuasiIsoError,
    SessionSyntaxError,
    ShapeMismatchError,
    UnknownReferenceError,
)
from .fields import FieldSpec
from .matrices import Matrix
from .roofs import Roof

__all__ = [
    "MapEntry",
    "HomotopyEntry",
    "RoofEntry",
    "SessionFile",
    "parse_session",
    "emit_session",
    "matrix_payload",
]

_TOP_KEYS = ("field", "objects", "maps", "homotopies", "roofs")
_DEGREE_RE = re.compile(r"0|-?[1-9][0-9]*")
_FRACTION_RE = re.compile(r"(-?[0-9]+)/([0-9]+)")


@dataclass(frozen=True)
class MapEntry:
    source: str
    target: str
    value: ChainMap


@dataclass(frozen=True)
class HomotopyEntry:
    source: str
    target: str
    value: Homotopy


@dataclass(frozen=True)
class RoofEntry:
    denom: str
    numer: str
    value: Roof


@dataclass(frozen=True)
class SessionFile:
    field: FieldSpec
    objects: dict[str, CochainComplex] = dataclass_field(default_factory=dict)
    maps: dict[str, MapEntry] = dataclass_field(default_factory=dict)
    homotopies: dict[str, HomotopyEntry] = dataclass_field(default_factory=dict)
    roofs: dict[str, RoofEntry] = dataclass_field(default_factory=dict)


# -- parsing -----------------------------------------------------------------


def _no_duplicate_pairs(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise SessionSyntaxError(f"duplicate key {key!r}")
        out[key] = value
    return out


def _parse_field(payload) -> FieldSpec:
    if not isinstance(payload, dict):
        raise SessionSyntaxError("'field' must be an object")
    kind = payload.get("kind")
    if kind == "prime":
        if set(payload) != {"kind", "p"}:
            raise SessionSyntaxError("prime field takes exactly the keys 'kind' and 'p'")
        p = payload["p"]
        if isinstance(p, bool) or not isinstance(p, int):
            raise SessionSyntaxError(f"field modulus must be an integer, got {p!r}")
        try:
            return FieldSpec.prime(p)
        except ValueError as e:
            raise SessionSyntaxError(str(e)) from None
    if kind == "rational":
        if set(payload) != {"kind"}:
            raise SessionSyntaxError("rational field takes exactly the key 'kind'")
        return FieldSpec.rational()
    raise SessionSyntaxError(f"unknown field kind {kind!r}")


def _parse_degree(key, where: str) -> int:
    if not isinstance(key, str) or not _DEGREE_RE.fullmatch(key):
        raise SessionSyntaxError(f"{where}: degree keys must be canonical integers, got {key!r}")
    return int(key)


def _parse_scalar(fld: FieldSpec, value, where: str):
    if isinstance(value, bool) or isinstance(value, float):
        raise SessionSyntaxError(f"{where}: not an exact scalar: {value!r}")
    if fld.kind == "prime":
        if not isinstance(value, int):
            raise SessionSyntaxError(f"{where}: expected an integer scalar, got {value!r}")
        return value % fld.p
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _FRACTION_RE.fullmatch(value)
        if m:
            num, den = int(m.group(1)), int(m.group(2))
            if den != 0:
                return Fraction(num, den)
        raise SessionSyntaxError(f"{where}: bad rational scalar {value!r}")
    raise SessionSyntaxError(f"{where}: expected an integer or 'a/b' string, got {value!r}")


def _parse_matrix(fld: FieldSpec, value, where: str) -> Matrix:
    if not isinstance(value, list) or not value:
        raise SessionSyntaxError(f"{where}: a matrix is a non-empty list of rows")
    width = None
    rows = []
    for r, row in enumerate(value):
        if not isinstance(row, list) or not row:
            raise SessionSyntaxError(f"{where}: row {r} is not a non-empty list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise SessionSyntaxError(f"{where}: row {r} has {len(row)} entries, expected {width}")
        rows.append([_parse_scalar(fld, x, f"{where} row {r}") for x in row])
    return Matrix.from_rows(fld, rows)


def _table(doc: dict, key: str) -> dict:
    payload = doc.get(key, {})
    if not isinstance(payload, dict):
        raise SessionSyntaxError(f"'{key}' must be an object")
    for name in payload:
        if not name:
            raise SessionSyntaxError(f"'{key}' contains an empty name")
    return payload


def _parse_complex(fld: FieldSpec, name: str, payload) -> CochainComplex:
    where = f"object {name!r}"
    if not isinstance(payload, dict) or not set(payload) <= {"dims", "diff"}:
        raise SessionSyntaxError(f"{where}: expected the keys 'dims' and optionally 'diff'")
    dims_raw = payload.get("dims", {})
    diff_raw = payload.get("diff", {})
    if not isinstance(dims_raw, dict) or not isinstance(diff_raw, dict):
        raise SessionSyntaxError(f"{where}: 'dims' and 'diff' must be objects")
    dims = {}
    for key, value in dims_raw.items():
        i = _parse_degree(key, where)
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise SessionSyntaxError(f"{where}: dimension at degree {i} must be a nonnegative integer")
        dims[i] = value
    diff = {}
    for key, value in diff_raw.items():
        i = _parse_degree(key, where)
        diff[i] = _parse_matrix(fld, value, f"{where} diff {i}")
    try:
        return CochainComplex.create(fld, dims, diff)
    except ShapeMismatchError as e:
        raise ShapeMismatchError(f"{where}: {e}") from None


def _resolve(table: dict, ref, kind: str, where: str):
    if not isinstance(ref, str):
        raise SessionSyntaxError(f"{where}: {kind} reference must be a string, got {ref!r}")
    if ref not in table:
        raise UnknownReferenceError(f"{where}: unknown {kind} {ref!r}")
    return table[ref]


def _parse_components(fld: FieldSpec, payload, where: str) -> dict[int, Matrix]:
    raw = payload.get("components", {})
    if not isinstance(raw, dict):
        raise SessionSyntaxError(f"{where}: 'components' must be an object")
    comps = {}
    for key, value in raw.items():
        i = _parse_degree(key, where)
        comps[i] = _parse_matrix(fld, value, f"{where} component {i}")
    return comps


def parse_session(text: str) -> SessionFile:
    """Parse and fully validate a session document."""
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicate_pairs)
    except json.JSONDecodeError as e:
        raise SessionSyntaxError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise SessionSyntaxError("top level must be an object")
    unknown = set(doc) - set(_TOP_KEYS)
    if unknown:
        raise SessionSyntaxError(f"unknown top-level keys: {sorted(unknown)}")
    if "field" not in doc:
        raise SessionSyntaxError("missing required key 'field'")
    fld = _parse_field(doc["field"])

    objects: dict[str, CochainComplex] = {}
    for name, payload in _table(doc, "objects").items():
        objects[name] = _parse_complex(fld, name, payload)
    for name, complex_ in objects.items():
        report = validate_complex(complex_)
        if not report.ok:
            raise InvalidComplexError(
                f"object {name!r}: d(d(x)) != 0 at degree {report.degree}"
            )

    maps: dict[str, MapEntry] = {}
    for name, payload in _table(doc, "maps").items():
        where = f"map {name!r}"
        if not isinstance(payload, dict) or not set(payload) <= {"from", "to", "components"}:
            raise SessionSyntaxError(f"{where}: expected 'from', 'to' and optional 'components'")
        if "from" not in payload or "to" not in payload:
            raise SessionSyntaxError(f"{where}: both 'from' and 'to' are required")
        source = _resolve(objects, payload["from"], "object", where)
        target = _resolve(objects, payload["to"], "object", where)
        comps = _parse_components(fld, payload, where)
        try:
            value = ChainMap.create(source, target, comps)
        except ShapeMismatchError as e:
            raise ShapeMismatchError(f"{where}: {e}") from None
        report = validate_chain_map(value)
        if not report.ok:
            raise InvalidChainMapError(
                f"{where}: square fails to commute at degree {report.degree}"
            )
        maps[name] = MapEntry(payload["from"], payload["to"], value)

    homotopies: dict[str, HomotopyEntry] = {}
    for name, payload in _table(doc, "homotopies").items():
        where = f"homotopy {name!r}"
        if not isinstance(payload, dict) or not set(payload) <= {"from", "to", "components"}:
            raise SessionSyntaxError(f"{where}: expected 'from', 'to' and optional 'components'")
        if "from" not in payload or "to" not in payload:
            raise SessionSyntaxError(f"{where}: both 'from' and 'to' are required")
        source = _resolve(objects, payload["from"], "object", where)
        target = _resolve(objects, payload["to"], "object", where)
        comps = _parse_components(fld, payload, where)
        try:
            value = Homotopy.create(source, target, comps)
        except ShapeMismatchError as e:
            raise ShapeMismatchError(f"{where}: {e}") from None
        homotopies[name] = HomotopyEntry(payload["from"], payload["to"], value)

    roofs: dict[str, RoofEntry] = {}
    for name, payload in _table(doc, "roofs").items():
        where = f"roof {name!r}"
        if not isinstance(payload, dict) or set(payload) != {"denom", "numer"}:
            raise SessionSyntaxError(f"{where}: expected exactly 'denom' and 'numer'")
        denom = _resolve(maps, payload["denom"], "map", where)
        numer = _resolve(maps, payload["numer"], "map", where)
        try:
            value = Roof(apex=denom.value.source, denom=denom.value, numer=numer.value)
        except ShapeMismatchError as e:
            raise ShapeMismatchError(f"{where}: {e}") from None
        except NotQuasiIsoError as e:
            raise NotQuasiIsoError(f"{where}: {e}") from None
        roofs[name] = RoofEntry(payload["denom"], payload["numer"], value)

    return SessionFile(fld, objects, maps, homotopies, roofs)


# -- emission ----------------------------------------------------------------


def _field_payload(fld: FieldSpec):
    if fld.kind == "prime":
        return {"kind": "prime", "p": fld.p}
    return {"kind": "rational"}


def _scalar_payload(fld: FieldSpec, x):
    if fld.kind == "prime":
        return int(x)
    frac = Fraction(x)
    if frac.denominator == 1:
        return int(frac)
    return f"{frac.numerator}/{frac.denominator}"


def matrix_payload(m: Matrix):
    """Nested-list JSON form of a matrix, scalars formatted for its field."""
    return [[_scalar_payload(m.field, x) for x in m.row(i)] for i in range(m.rows)]


def _complex_payload(c: CochainComplex):
    payload = {"dims": {str(i): c.dim(i) for i in c.degrees()}}
    diff = {}
    for i in range(c.lo, c.hi):
        d = c.d(i)
        if d.rows > 0 and d.cols > 0:
            diff[str(i)] = matrix_payload(d)
    if diff:
        payload["diff"] = diff
    return payload


def _map_payload(entry: MapEntry):
    payload = {"from": entry.source, "to": entry.target}
    f = entry.value
    comps = {}
    for i in range(max(f.source.lo, f.target.lo), min(f.source.hi, f.target.hi) + 1):
        m = f.component(i)
        if m.rows > 0 and m.cols > 0:
            comps[str(i)] = matrix_payload(m)
    if comps:
        payload["components"] = comps
    return payload


def _homotopy_payload(entry: HomotopyEntry):
    payload = {"from": entry.source, "to": entry.target}
    k = entry.value
    comps = {}
    for i in range(max(k.source.lo, k.target.lo + 1), min(k.source.hi, k.target.hi + 1) + 1):
        m = k.component(i)
        if m.rows > 0 and m.cols > 0:
            comps[str(i)] = matrix_payload(m)
    if comps:
        payload["components"] = comps
    return payload


def emit_session(session: SessionFile) -> str:
    """Canonical text form: fixed key order, ascending degrees, declaration order."""
    doc = {
        "field": _field_payload(session.field),
        "objects": {name: _complex_payload(c) for name, c in session.objects.items()},
        "maps": {name: _map_payload(e) for name, e in session.maps.items()},
        "homotopies": {name: _homotopy_payload(e) for name, e in session.homotopies.items()},
        "roofs": {name: {"denom": e.denom, "numer": e.numer} for name, e in session.roofs.items()},
    }
    return json.dumps(doc, indent=2) + "\n"
