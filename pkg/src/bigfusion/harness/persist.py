"""
JSON documents for pairs.

Layout (schema "biframe/1")::

    {"schema": "biframe/1", "ambient_dim": n, "weights": [...],
     "lambda": [{"subspace_basis": M, "operator": M}, ...],
     "gamma":  [...]}

where each matrix M is a list of rows and each scalar is ``[re, im]``.
Python's float repr round-trips exactly, so save/load is bit-exact.
"""

import json
from pathlib import Path

import numpy as np

from ..bifusion import BiGFusionPair
from ..errors import BiframeError, ParseError, SchemaValidation, SchemaVersionMismatch
from ..gfusion import GFusionItem, GFusionSystem
from ..subspace import Subspace

SCHEMA = "biframe/1"


def _finite_float(x):
    try:
        x = float(x)
    except OverflowError:
        return None
    return x if np.isfinite(x) else None


def _matrix_to_json(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _matrix_from_json(obj, where):
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise SchemaValidation("expected a non-empty list of rows", where)
    width = len(obj[0])
    if width == 0 or any(len(r) != width for r in obj):
        raise SchemaValidation("rows must be non-empty and of equal length", where)
    out = np.empty((len(obj), width), dtype=np.complex128)
    for i, row in enumerate(obj):
        for j, z in enumerate(row):
            if (
                not isinstance(z, list)
                or len(z) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in z)
            ):
                raise SchemaValidation("scalars must be [re, im] number pairs", f"{where}[{i}][{j}]")
            re, im = _finite_float(z[0]), _finite_float(z[1])
            if re is None or im is None:
                raise SchemaValidation("non-finite scalar", f"{where}[{i}][{j}]")
            out[i, j] = complex(re, im)
    return out


def pair_to_document(pair):
    def items(sys):
        return [
            {
                "subspace_basis": _matrix_to_json(it.subspace.basis),
                "operator": _matrix_to_json(it.operator),
            }
            for it in sys.items
        ]

    return {
        "schema": SCHEMA,
        "ambient_dim": pair.ambient_dim,
        "weights": [float(w) for w in pair.weights],
        "lambda": items(pair.lambda_sys),
        "gamma": items(pair.gamma_sys),
    }


def dump_pair(pair):
    return json.dumps(pair_to_document(pair))


def save(path, pair):
    Path(path).write_text(dump_pair(pair) + "\n")


def _system_from_json(doc, key, n, weights):
    entries = doc.get(key)
    if not isinstance(entries, list):
        raise SchemaValidation("expected a list of items", key)
    if len(entries) != len(weights):
        raise SchemaValidation(f"{len(entries)} items but {len(weights)} weights", key)
    items = []
    for k, (entry, w) in enumerate(zip(entries, weights)):
        where = f"{key}[{k}]"
        if not isinstance(entry, dict):
            raise SchemaValidation("expected an object", where)
        for field in ("subspace_basis", "operator"):
            if field not in entry:
                raise SchemaValidation(f"missing field {field!r}", where)
        basis = _matrix_from_json(entry["subspace_basis"], f"{where}.subspace_basis")
        op = _matrix_from_json(entry["operator"], f"{where}.operator")
        if basis.shape[0] != n:
            raise SchemaValidation(f"basis has {basis.shape[0]} rows, expected {n}", where)
        if op.shape[1] != n:
            raise SchemaValidation(f"operator has {op.shape[1]} columns, expected {n}", where)
        try:
            items.append(GFusionItem(Subspace(basis), op, w))
        except (BiframeError, ValueError) as exc:
            raise SchemaValidation(str(exc), where) from exc
    return GFusionSystem(n, tuple(items))


def document_to_pair(doc):
    if not isinstance(doc, dict):
        raise SchemaValidation("top level must be an object", "$")
    if "schema" not in doc:
        raise SchemaValidation("missing field 'schema'", "$")
    if doc["schema"] != SCHEMA:
        raise SchemaVersionMismatch(f"expected {SCHEMA!r}, got {doc['schema']!r}", "schema")
    n = doc.get("ambient_dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaValidation("must be a positive integer", "ambient_dim")
    weights = doc.get("weights")
    if not isinstance(weights, list) or not weights:
        raise SchemaValidation("expected a non-empty list", "weights")
    for k, w in enumerate(weights):
        ok = isinstance(w, (int, float)) and not isinstance(w, bool)
        if not ok or _finite_float(w) is None or w <= 0:
            raise SchemaValidation(f"weights must be positive numbers, got {w!r}", f"weights[{k}]")
    weights = [float(w) for w in weights]
    lam = _system_from_json(doc, "lambda", n, weights)
    gam = _system_from_json(doc, "gamma", n, weights)
    try:
        return BiGFusionPair(lam, gam)
    except BiframeError as exc:
        raise SchemaValidation(str(exc), "gamma") from exc


def parse_pair(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    except RecursionError as exc:
        raise ParseError("document nested too deeply") from exc
    return document_to_pair(doc)


def load(path):
    try:
        text = Path(path).read_text()
    except UnicodeDecodeError as exc:
        raise ParseError("file is not valid UTF-8 text", str(path)) from exc
    return parse_pair(text)


def pairs_identical(p, q):
    """Bit-level equality of every array and weight."""
    if p.ambient_dim != q.ambient_dim or len(p) != len(q):
        return False
    for sp, sq in ((p.lambda_sys, q.lambda_sys), (p.gamma_sys, q.gamma_sys)):
        for a, b in zip(sp.items, sq.items):
            if np.float64(a.weight).tobytes() != np.float64(b.weight).tobytes():
                return False
            for x, y in ((a.subspace.basis, b.subspace.basis), (a.operator, b.operator)):
                if x.shape != y.shape or x.tobytes() != y.tobytes():
                    return False
    return True
