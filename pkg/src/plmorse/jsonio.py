"""JSON interchange formats.

Complexes: {"name": str, "facets": [[label, ...], ...]} with string or
integer labels; the canonical writer sorts facets lexicographically.
Vertex orders: {"order": [label, ...]}.  Discrete Morse data:
{"values": {"1,2,4": 3.5, ...}} or {"matching": [["1,2", "1,2,4"], ...]}
with simplex keys as comma-joined sorted labels.
"""

import json

from .core import SimplicialComplex, label_key, make_simplex, simplex_key
from .morse import VertexOrder


def string_label(label):
    """Flatten tuple labels (from derived subdivisions) to strings."""
    if isinstance(label, tuple):
        return "(" + ",".join(string_label(x) for x in label) + ")"
    return label


def stringify_complex(complex_):
    """Replace any tuple labels with their canonical string form."""
    if all(not isinstance(v, tuple) for v in complex_.vertices):
        return complex_
    c = SimplicialComplex.from_facets(
        [[string_label(v) for v in f] for f in complex_.facets])
    if complex_.name:
        c._cache["name"] = complex_.name
    return c


def complex_to_json(complex_, name=None):
    c = stringify_complex(complex_)
    return {"name": name or complex_.name or "complex",
            "facets": [list(f) for f in c.facets]}


def complex_from_json(doc):
    if not isinstance(doc, dict) or "facets" not in doc:
        raise ValueError("complex JSON needs a 'facets' key")
    for f in doc["facets"]:
        for v in f:
            if not isinstance(v, (str, int)) or isinstance(v, bool):
                raise ValueError("labels must be strings or integers")
    return SimplicialComplex.from_facets(doc["facets"],
                                         name=doc.get("name"))


def order_to_json(order):
    return {"order": [string_label(v) for v in order.order]}


def order_from_json(doc):
    if not isinstance(doc, dict) or "order" not in doc:
        raise ValueError("order JSON needs an 'order' key")
    return VertexOrder(doc["order"])


def simplex_cell_key(cell):
    return ",".join(str(string_label(v)) for v in cell)


def _parse_cell(key, vertex_lookup):
    parts = [p.strip() for p in key.split(",")]
    out = []
    for p in parts:
        if p in vertex_lookup:
            out.append(vertex_lookup[p])
        else:
            try:
                out.append(int(p))
            except ValueError:
                out.append(p)
    return make_simplex(out)


def dmf_from_json(doc, complex_):
    """Parse discrete Morse data: explicit values, or a matching that the
    caller synthesizes values from."""
    lookup = {str(v): v for v in complex_.vertices}
    if "values" in doc:
        return ("values", {_parse_cell(k, lookup): v
                           for k, v in doc["values"].items()})
    if "matching" in doc:
        return ("matching", {_parse_cell(a, lookup): _parse_cell(b, lookup)
                             for a, b in doc["matching"]})
    raise ValueError("discrete Morse JSON needs 'values' or 'matching'")


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
