"""JSON manifests: a structure written out as expression strings.

Every scalar travels as a string in the expression grammar, so a manifest is
diff-able and re-imports to the identical structure.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .catalog import CatalogEntry
from .contact import ContactMetricStructure
from .frames import Distribution
from .parser import ExpressionError, parse_scalar
from .scalar import Chart
from .symplectic import SymplecticStructure
from .tensors import (CoordinateBasis, EndoField, LieBasis, MetricField, OneForm, TwoForm,
                      VectorField)

SCHEMA_VERSION = 1


class ManifestError(ValueError):
    """Schema violation; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


# ---------------------------------------------------------------------------
# export

def _strs(xs):
    return [str(x) for x in xs]


def _matrix(m):
    return [_strs(row) for row in m.matrix]


def _dists(dists: dict) -> dict:
    return {name: {"labels": list(D.labels), "vectors": [_strs(v.comps) for v in D.vectors]}
            for name, D in dists.items()}


def _chart_doc(basis) -> dict:
    if isinstance(basis, LieBasis):
        brackets = [{"pair": [basis.names[i], basis.names[j]],
                     "value": {basis.names[k]: str(c) for k, c in sorted(v.items())}}
                    for (i, j), v in basis.table().items()]
        return {"backend": "lie-frame", "frame": list(basis.names), "brackets": brackets}
    chart = basis.chart
    return {"backend": "chart", "coords": list(chart.coords), "relation": chart.relation_text()}


def export_structure(S, name: str | None = None, checks=(), source: str | None = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "name": name or S.name}
    if source:
        doc["source"] = source
    doc["chart"] = _chart_doc(S.basis)
    if isinstance(S, SymplecticStructure):
        doc["kind"] = "symplectic"
        st = {"omega": _matrix(S.omega)}
        if S.J is not None:
            st["J"] = _matrix(S.J)
        if S.g is not None:
            st["g"] = _matrix(S.g)
        doc["structure"] = st
        doc["distributions"] = _dists({"F": S.F, "G": S.G})
    else:
        doc["kind"] = "contact"
        doc["structure"] = {"eta": _strs(S.eta.comps), "xi": _strs(S.xi.comps),
                            "phi": _matrix(S.phi), "g": _matrix(S.g)}
        doc["reeb_name"] = S.reeb_name
        doc["distributions"] = _dists({"L": S.L, "Q": S.Q})
    doc["checks"] = list(checks)
    return doc


def export_entry(entry: CatalogEntry, checks=()) -> dict:
    return export_structure(entry.structure, name=entry.label, checks=checks, source=entry.label)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# import

def _need(doc, key, path, kind=None):
    if not isinstance(doc, dict):
        raise ManifestError(path, "expected an object")
    if key not in doc:
        raise ManifestError(f"{path}.{key}" if path else key, "missing field")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ManifestError(f"{path}.{key}" if path else key, f"expected {names}")
    return value


def _scalar(text, chart, path):
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        text = str(Fraction(text)) if isinstance(text, int) else repr(text)
    if not isinstance(text, str):
        raise ManifestError(path, "expected an expression string")
    try:
        return parse_scalar(text, chart)
    except (ExpressionError, ZeroDivisionError) as exc:
        raise ManifestError(path, str(exc)) from None


def _vector_list(xs, chart, dim, path):
    if not isinstance(xs, list) or len(xs) != dim:
        raise ManifestError(path, f"expected a list of {dim} expressions")
    return [_scalar(x, chart, f"{path}[{i}]") for i, x in enumerate(xs)]


def _matrix_rows(rows, chart, dim, path):
    if not isinstance(rows, list) or len(rows) != dim:
        raise ManifestError(path, f"expected a {dim}x{dim} matrix")
    return [_vector_list(r, chart, dim, f"{path}[{i}]") for i, r in enumerate(rows)]


def _basis_from(doc):
    ch = _need(doc, "chart", "", dict)
    backend = ch.get("backend", "chart")
    if backend == "lie-frame":
        names = _need(ch, "frame", "chart", list)
        if len(set(names)) != len(names) or not all(isinstance(x, str) for x in names):
            raise ManifestError("chart.frame", "frame names must be distinct strings")
        index = {n: i for i, n in enumerate(names)}
        table = {}
        for k, br in enumerate(ch.get("brackets", [])):
            p = f"chart.brackets[{k}]"
            pair = _need(br, "pair", p, list)
            if len(pair) != 2 or any(x not in index for x in pair):
                raise ManifestError(f"{p}.pair", "expected two frame names")
            value = _need(br, "value", p, dict)
            coeffs = {}
            for nm, c in value.items():
                if nm not in index:
                    raise ManifestError(f"{p}.value.{nm}", "unknown frame name")
                try:
                    coeffs[index[nm]] = Fraction(str(c))
                except ValueError:
                    raise ManifestError(f"{p}.value.{nm}", "expected a rational") from None
            table[(index[pair[0]], index[pair[1]])] = coeffs
        try:
            return LieBasis(names, table)
        except ValueError as exc:
            raise ManifestError("chart.brackets", str(exc)) from None
    if backend != "chart":
        raise ManifestError("chart.backend", f"unknown backend {backend!r}")
    coords = _need(ch, "coords", "chart", list)
    try:
        chart = Chart(coords, relation=ch.get("relation"))
    except (ValueError, ExpressionError) as exc:
        raise ManifestError("chart", str(exc)) from None
    return CoordinateBasis(chart)


def _distribution(doc, name, B, path):
    d = _need(doc, name, path, dict)
    p = f"{path}.{name}"
    vecs = _need(d, "vectors", p, list)
    if not vecs:
        raise ManifestError(f"{p}.vectors", "needs at least one vector")
    vectors = [VectorField(B, _vector_list(v, B.chart, B.dim, f"{p}.vectors[{i}]"))
               for i, v in enumerate(vecs)]
    labels = d.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != len(vectors)):
        raise ManifestError(f"{p}.labels", "one label per vector")
    try:
        return Distribution(vectors, name, labels)
    except ValueError as exc:
        raise ManifestError(p, str(exc)) from None


def import_manifest(doc: dict):
    """Build the structure described by ``doc``; raises :class:`ManifestError`."""
    if not isinstance(doc, dict):
        raise ManifestError("", "manifest must be a JSON object")
    version = _need(doc, "schema_version", "", int)
    if version != SCHEMA_VERSION:
        raise ManifestError("schema_version", f"unsupported version {version}")
    kind = doc.get("kind", "contact")
    B = _basis_from(doc)
    chart, dim = B.chart, B.dim
    st = _need(doc, "structure", "", dict)
    dists = _need(doc, "distributions", "", dict)
    name = doc.get("name", "manifest")
    if kind == "symplectic":
        omega = TwoForm(B, _matrix_rows(_need(st, "omega", "structure"), chart, dim,
                                         "structure.omega"))
        J = EndoField(B, _matrix_rows(st["J"], chart, dim, "structure.J")) if "J" in st else None
        g = MetricField(B, _matrix_rows(st["g"], chart, dim, "structure.g")) if "g" in st else None
        F = _distribution(dists, "F", B, "distributions")
        G = _distribution(dists, "G", B, "distributions")
        try:
            return SymplecticStructure(B, omega, F, G, J=J, g=g, name=name)
        except ValueError as exc:
            raise ManifestError("distributions", str(exc)) from None
    if kind != "contact":
        raise ManifestError("kind", f"unknown kind {kind!r}")
    eta = OneForm(B, _vector_list(_need(st, "eta", "structure"), chart, dim, "structure.eta"))
    xi = VectorField(B, _vector_list(_need(st, "xi", "structure"), chart, dim, "structure.xi"))
    phi = EndoField(B, _matrix_rows(_need(st, "phi", "structure"), chart, dim, "structure.phi"))
    g = MetricField(B, _matrix_rows(_need(st, "g", "structure"), chart, dim, "structure.g"))
    L = _distribution(dists, "L", B, "distributions")
    Q = _distribution(dists, "Q", B, "distributions") if "Q" in dists else None
    return ContactMetricStructure(B, eta, xi, phi, g, L, Q, name=name,
                                  reeb_name=doc.get("reeb_name", "xi"))


def load(path) -> tuple:
    """``(structure, doc)`` from a manifest file."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ManifestError("", f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return import_manifest(doc), doc


def round_trip(S):
    """Export then re-import ``S``."""
    return import_manifest(json.loads(dumps(export_structure(S))))
