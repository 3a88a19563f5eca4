"""JSON documents for algebras, cocycles, 2-algebras, morphisms and maps.

Scalars are always strings in canonical form (``"3"``, ``"-1/2"``) so that
documents are exact and diff-friendly.  Algebra references inside cocycle
documents are ``examples:NAME``, a path (relative to the referring file), or
an inline algebra document.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

import numpy as np

from . import registry
from .algebra import LeibnizAlgebra, check_leibniz
from .extensions import NonAbelianCocycle
from .fields import QQ, format_scalar, parse_scalar, zeros
from .leibniz2 import Leibniz2Algebra, Leibniz2Morphism

__all__ = [
    "ParseError",
    "LeibnizViolation",
    "dumps",
    "algebra_to_document",
    "parse_algebra",
    "load_algebra",
    "cocycle_to_document",
    "parse_cocycle",
    "load_cocycle",
    "matrix_to_document",
    "parse_matrix",
    "tensor_to_document",
    "two_algebra_to_document",
    "parse_two_algebra",
    "morphism_to_document",
    "parse_morphism",
    "format_vector",
]

EXAMPLES_PREFIX = "examples:"


class ParseError(ValueError):
    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class LeibnizViolation(ValueError):
    def __init__(self, name, violations):
        self.violations = violations
        shown = ", ".join(str(v) for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"{name} violates the Leibniz identity at (i, j, k) = {shown}{more}")


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _scalar(text, field, where):
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string like \"1/2\", got {text!r}", where)
    try:
        return field(parse_scalar(text))
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


def _load_json(text, where):
    if isinstance(text, (dict, list)):
        return text
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", where) from None


def _require(doc, key, kind, where):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing key {key!r}", where)
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"{key!r} must be a {kind.__name__}", f"{where}.{key}")
    return value


# -- algebras --------------------------------------------------------------


def _value_items(vec, basis):
    return [[basis[k], format_scalar(x)] for k, x in enumerate(vec) if x != 0]


def algebra_to_document(A: LeibnizAlgebra) -> dict:
    return {
        "name": A.name,
        "dim": A.dim,
        "basis": list(A.basis),
        "brackets": [
            {"left": A.basis[i], "right": A.basis[j], "value": _value_items(v, A.basis)}
            for i, j, v in A.nonzero_brackets()
        ],
    }


def parse_algebra(text, field=QQ, verify: bool = True, where: str = "<algebra>") -> LeibnizAlgebra:
    doc = _load_json(text, where)
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be an object", where)
    name = _require(doc, "name", str, where)
    basis = _require(doc, "basis", list, where)
    if not all(isinstance(b, str) and b for b in basis):
        raise ParseError("basis labels must be non-empty strings", f"{where}.basis")
    seen = set()
    for k, b in enumerate(basis):
        if b in seen:
            raise ParseError(f"duplicate basis label {b!r}", f"{where}.basis[{k}]")
        seen.add(b)
    if "dim" in doc and doc["dim"] != len(basis):
        raise ParseError(f"dim is {doc['dim']} but the basis has {len(basis)} labels", f"{where}.dim")
    index = {b: k for k, b in enumerate(basis)}
    n = len(basis)
    c = zeros((n, n, n), field)
    for k, entry in enumerate(doc.get("brackets", [])):
        loc = f"{where}.brackets[{k}]"
        left = _require(entry, "left", str, loc)
        right = _require(entry, "right", str, loc)
        for side, label in (("left", left), ("right", right)):
            if label not in index:
                raise ParseError(f"unknown basis label {label!r}", f"{loc}.{side}")
        for t, item in enumerate(_require(entry, "value", list, loc)):
            iloc = f"{loc}.value[{t}]"
            if not (isinstance(item, list) and len(item) == 2):
                raise ParseError("value terms are [label, scalar] pairs", iloc)
            label, coeff = item
            if label not in index:
                raise ParseError(f"unknown basis label {label!r}", iloc)
            c[index[left], index[right], index[label]] += _scalar(coeff, field, iloc)
    A = LeibnizAlgebra(name, tuple(basis), c, field)
    if verify:
        report = check_leibniz(A)
        if not report.ok:
            raise LeibnizViolation(A.name, report.violations)
    return A


def load_algebra(ref, field=QQ, verify: bool = True, gamma=Fraction(1), base_dir: str = ".") -> LeibnizAlgebra:
    """Resolve ``examples:NAME``, a file path or an inline document."""
    if isinstance(ref, dict):
        return parse_algebra(ref, field, verify, "<inline algebra>")
    if not isinstance(ref, str):
        raise ParseError(f"algebra reference must be a string or object, got {ref!r}")
    if ref.startswith(EXAMPLES_PREFIX):
        name = ref[len(EXAMPLES_PREFIX):]
        try:
            return registry.algebra(name, gamma, field)
        except KeyError:
            raise ParseError(f"unknown example algebra {name!r}", ref) from None
    path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), path) from None
    return parse_algebra(text, field, verify, path)


# -- matrices and tensors --------------------------------------------------


def matrix_to_document(M) -> list:
    return [[format_scalar(x) for x in row] for row in np.asarray(M, dtype=object)]


def parse_matrix(doc, shape, field=QQ, where="<matrix>") -> np.ndarray:
    rows, cols = shape
    if not isinstance(doc, list) or len(doc) != rows:
        raise ParseError(f"expected {rows} rows", where)
    out = zeros(shape, field)
    for i, row in enumerate(doc):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"expected {cols} entries", f"{where}[{i}]")
        for j, x in enumerate(row):
            out[i, j] = _scalar(x, field, f"{where}[{i}][{j}]")
    return out


def tensor_to_document(T) -> dict:
    T = np.asarray(T, dtype=object)
    return {"shape": list(T.shape), "entries": [format_scalar(x) for x in T.reshape(-1)]}


def _parse_tensor(doc, shape, field, where):
    got = _require(doc, "shape", list, where)
    if tuple(got) != tuple(shape):
        raise ParseError(f"shape {got} does not match expected {list(shape)}", where)
    entries = _require(doc, "entries", list, where)
    if len(entries) != int(np.prod(shape)):
        raise ParseError("entry count does not match the shape", where)
    flat = np.array([_scalar(x, field, f"{where}.entries[{k}]") for k, x in enumerate(entries)], dtype=object)
    return flat.reshape(shape) if flat.size else zeros(shape, field)


def format_vector(v, basis) -> str:
    """Readable form such as ``e3`` or ``e1 - 1/2*e2``."""
    parts = []
    for k, x in enumerate(v):
        if x == 0:
            continue
        s = format_scalar(x)
        neg = s.startswith("-")
        mag = s[1:] if neg else s
        term = basis[k] if mag == "1" else f"{mag}*{basis[k]}"
        if not parts:
            parts.append(f"-{term}" if neg else term)
        else:
            parts.append(f"- {term}" if neg else f"+ {term}")
    return " ".join(parts) if parts else "0"


# -- cocycles --------------------------------------------------------------


def cocycle_to_document(c: NonAbelianCocycle, g_ref=None, h_ref=None) -> dict:
    """Nonzero blocks only; matrices are indexed ``[output][input]``."""
    g, h = c.g, c.h
    doc = {
        "g": g_ref if g_ref is not None else algebra_to_document(g),
        "h": h_ref if h_ref is not None else algebra_to_document(h),
        "l": {g.basis[x]: matrix_to_document(c.l[x]) for x in range(g.dim) if any(v != 0 for v in c.l[x].flat)},
        "r": {g.basis[x]: matrix_to_document(c.r[x]) for x in range(g.dim) if any(v != 0 for v in c.r[x].flat)},
        "omega": [
            {"left": g.basis[i], "right": g.basis[j], "value": _value_items(c.omega[i, j], h.basis)}
            for i in range(g.dim)
            for j in range(g.dim)
            if any(v != 0 for v in c.omega[i, j])
        ],
    }
    return doc


def parse_cocycle(text, field=QQ, verify: bool = True, g=None, h=None, base_dir=".", gamma=Fraction(1),
                  where="<cocycle>") -> NonAbelianCocycle:
    """Parse a cocycle document; explicit ``g``/``h`` override the references."""
    doc = _load_json(text, where)
    if not isinstance(doc, dict):
        raise ParseError("cocycle document must be an object", where)
    if g is None:
        g = load_algebra(_require(doc, "g", None, where), field, verify, gamma, base_dir)
    if h is None:
        h = load_algebra(_require(doc, "h", None, where), field, verify, gamma, base_dir)
    n, m = g.dim, h.dim
    gi = {b: k for k, b in enumerate(g.basis)}
    hi = {b: k for k, b in enumerate(h.basis)}
    blocks = {}
    for key in ("l", "r"):
        arr = zeros((n, m, m), field)
        section = doc.get(key, {})
        if not isinstance(section, dict):
            raise ParseError("must map g-basis labels to matrices", f"{where}.{key}")
        for label, mat in section.items():
            if label not in gi:
                raise ParseError(f"unknown g-basis label {label!r}", f"{where}.{key}")
            arr[gi[label]] = parse_matrix(mat, (m, m), field, f"{where}.{key}.{label}")
        blocks[key] = arr
    omega = zeros((n, n, m), field)
    for k, entry in enumerate(doc.get("omega", [])):
        loc = f"{where}.omega[{k}]"
        left = _require(entry, "left", str, loc)
        right = _require(entry, "right", str, loc)
        for side, label in (("left", left), ("right", right)):
            if label not in gi:
                raise ParseError(f"unknown g-basis label {label!r}", f"{loc}.{side}")
        for t, item in enumerate(_require(entry, "value", list, loc)):
            iloc = f"{loc}.value[{t}]"
            if not (isinstance(item, list) and len(item) == 2 and item[0] in hi):
                raise ParseError("value terms are [h-label, scalar] pairs", iloc)
            omega[gi[left], gi[right], hi[item[0]]] += _scalar(item[1], field, iloc)
    return NonAbelianCocycle(g, h, blocks["l"], blocks["r"], omega)


def load_cocycle(ref, field=QQ, verify=True, g=None, h=None, gamma=Fraction(1)) -> NonAbelianCocycle:
    """``examples:NAME`` for registry cocycles, otherwise a file path."""
    if ref.startswith(EXAMPLES_PREFIX):
        name = ref[len(EXAMPLES_PREFIX):]
        try:
            return registry.cocycle(name, gamma, field)
        except KeyError:
            raise ParseError(f"unknown example cocycle {name!r}", ref) from None
    try:
        with open(ref, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), ref) from None
    return parse_cocycle(text, field, verify, g, h, os.path.dirname(ref) or ".", gamma, ref)


# -- 2-algebras and morphisms ---------------------------------------------


def two_algebra_to_document(L: Leibniz2Algebra) -> dict:
    doc = {
        "name": L.name,
        "V1_dim": L.V1_dim,
        "V0_dim": L.V0_dim,
        "d": tensor_to_document(L.d),
        "l2_00": tensor_to_document(L.l2_00),
        "l2_01": tensor_to_document(L.l2_01),
        "l2_10": tensor_to_document(L.l2_10),
        "l3": tensor_to_document(L.l3),
    }
    if L.pairs is not None:
        doc["V0_basis"] = [
            {"left": matrix_to_document(L.pairs[i, 0]), "right": matrix_to_document(L.pairs[i, 1])}
            for i in range(L.V0_dim)
        ]
    return doc


def parse_two_algebra(text, field=QQ, where="<2-algebra>") -> Leibniz2Algebra:
    doc = _load_json(text, where)
    v0 = _require(doc, "V0_dim", int, where)
    v1 = _require(doc, "V1_dim", int, where)
    shapes = {
        "d": (v0, v1),
        "l2_00": (v0, v0, v0),
        "l2_01": (v0, v1, v1),
        "l2_10": (v1, v0, v1),
        "l3": (v0, v0, v0, v1),
    }
    parts = {k: _parse_tensor(_require(doc, k, dict, where), s, field, f"{where}.{k}") for k, s in shapes.items()}
    return Leibniz2Algebra(field=field, name=doc.get("name", ""), **parts)


def morphism_to_document(F: Leibniz2Morphism) -> dict:
    return {"f0": tensor_to_document(F.f0), "f1": tensor_to_document(F.f1), "f2": tensor_to_document(F.f2)}


def parse_morphism(text, source: Leibniz2Algebra, target: Leibniz2Algebra, field=QQ,
                   where="<morphism>") -> Leibniz2Morphism:
    doc = _load_json(text, where)
    f0 = _parse_tensor(_require(doc, "f0", dict, where), (target.V0_dim, source.V0_dim), field, f"{where}.f0")
    f1 = _parse_tensor(_require(doc, "f1", dict, where), (target.V1_dim, source.V1_dim), field, f"{where}.f1")
    f2 = _parse_tensor(
        _require(doc, "f2", dict, where), (source.V0_dim, source.V0_dim, target.V1_dim), field, f"{where}.f2"
    )
    return Leibniz2Morphism(f0, f1, f2, field)
