"""Forman discrete Morse functions and their conversion to generic PL Morse
functions on the derived subdivision.

A discrete Morse function assigns a value to every cell so that each k-cell
has at most one (k-1)-face with value not strictly smaller and at most one
(k+1)-coface with value not strictly larger.  Critical cells have neither;
the exceptional pairs form a partial matching.  Conversion assigns the cell
value to the corresponding barycentric vertex, so the induced vertex order
on the derived subdivision turns critical k-cells into index-k critical
vertices and everything else into strongly regular ones.
"""

import heapq
import random
from collections import defaultdict
from fractions import Fraction
from itertools import combinations

from .core import SimplicialComplex, make_simplex, simplex_key
from .morse import VertexOrder


def _cells(complex_):
    return [s for k in range(complex_.dimension + 1)
            for s in complex_.faces(k)]


def _immediate_faces(cell):
    return [cell[:i] + cell[i + 1:] for i in range(len(cell))] \
        if len(cell) > 1 else []


def _coface_map(complex_):
    cof = defaultdict(list)
    for k in range(1, complex_.dimension + 1):
        for s in complex_.faces(k):
            for f in _immediate_faces(s):
                cof[f].append(s)
    return cof


def validate(complex_, values):
    """('valid', None) or ('invalid', witness cell).

    Checks that every cell has at most one exceptional face and at most one
    exceptional coface, and not one of each (which would break the matching).
    """
    cells = _cells(complex_)
    missing = [s for s in cells if s not in values]
    if missing:
        raise ValueError("missing value for cell %r" % (missing[0],))
    cof = _coface_map(complex_)
    for s in cells:
        v = values[s]
        exc_faces = [f for f in _immediate_faces(s) if values[f] >= v]
        exc_cofaces = [c for c in cof.get(s, ()) if values[c] <= v]
        if len(exc_faces) > 1 or len(exc_cofaces) > 1:
            return ("invalid", s)
        if exc_faces and exc_cofaces:
            return ("invalid", s)
    return ("valid", None)


def _require_valid(complex_, values):
    verdict, witness = validate(complex_, values)
    if verdict != "valid":
        raise ValueError("not a discrete Morse function; first violation at "
                         "cell %r" % (witness,))


def matching(complex_, values):
    """Pairs (face, coface) of the exceptional partners of non-critical
    cells, as a dict face -> coface (each cell in at most one pair)."""
    _require_valid(complex_, values)
    pairs = {}
    cof = _coface_map(complex_)
    for s in _cells(complex_):
        v = values[s]
        for c in cof.get(s, ()):
            if values[c] <= v:
                pairs[s] = c
    return pairs


def critical_cells(complex_, values):
    """Cells with no exceptional face and no exceptional coface."""
    pairs = matching(complex_, values)
    matched = set(pairs) | set(pairs.values())
    return tuple(s for s in _cells(complex_) if s not in matched)


def _pair_digraph_order(complex_, pairs, values=None):
    """Linear order on cells compatible with the matching: contract each
    matched pair to one node, add an edge node(face) -> node(coface) for
    every unmatched face relation (any codimension), and topologically sort.

    Ties break by (input value, dimension, vertex tuple) of the node
    representative.  Returns the cell list in increasing order, with each
    matched pair adjacent as (coface, face).  Raises on a cycle.
    """
    node_of = {}
    nodes = []
    matched_face = {c: f for f, c in pairs.items()}
    for s in _cells(complex_):
        if s in pairs:        # face of its pair: same node as the coface
            continue
        nid = len(nodes)
        members = (matched_face[s], s) if s in matched_face else (s,)
        nodes.append(members)
        for m in members:
            node_of[m] = nid
    out_edges = defaultdict(set)
    indeg = [0] * len(nodes)
    for k in range(1, complex_.dimension + 1):
        for s in complex_.faces(k):
            b = node_of[s]
            for j in range(1, len(s)):
                for f in combinations(s, j):
                    a = node_of[f]
                    if a != b and b not in out_edges[a]:
                        out_edges[a].add(b)
                        indeg[b] += 1

    def key(i):
        rep = nodes[i][-1]
        val = values[rep] if values is not None else 0
        return (val, len(rep), simplex_key(rep))

    ready = [(key(i), i) for i in range(len(nodes)) if indeg[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        _, i = heapq.heappop(ready)
        order.append(i)
        for j in out_edges[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, (key(j), j))
    if len(order) != len(nodes):
        raise ValueError("matching is not acyclic")
    cells_sorted = []
    for i in order:
        members = nodes[i]
        if len(members) == 2:
            cells_sorted.append(members[1])   # coface first (smaller value)
            cells_sorted.append(members[0])   # then its exceptional face
        else:
            cells_sorted.append(members[0])
    return cells_sorted


def genericize(complex_, values):
    """Equivalent generic discrete Morse function: injective, every
    non-immediate face strictly smaller, same critical cells and matching.
    Values are consecutive integers in a deterministic order."""
    pairs = matching(complex_, values)
    ordered = _pair_digraph_order(complex_, pairs, values)
    return {s: i for i, s in enumerate(ordered)}


def values_from_matching(complex_, pairs):
    """Synthesize values realizing a given acyclic matching.

    `pairs` maps each matched face to its matched coface (immediate
    face/coface pairs).  The values come from a linear extension of the
    modified Hasse diagram, exactly as in genericize.
    """
    for f, c in pairs.items():
        if len(c) != len(f) + 1 or not set(f) <= set(c):
            raise ValueError("pair (%r, %r) is not an immediate face/coface"
                             % (f, c))
    ordered = _pair_digraph_order(complex_, dict(pairs))
    return {s: i for i, s in enumerate(ordered)}


def random_matching(complex_, rng_or_seed=None):
    """Random acyclic matching by random collapses: repeatedly collapse a
    random free pair, declaring a random top cell critical whenever the
    complex has no free face."""
    rng = rng_or_seed if isinstance(rng_or_seed, random.Random) \
        else random.Random(rng_or_seed)
    remaining = set(_cells(complex_))
    pairs = {}
    while remaining:
        cof_count = defaultdict(list)
        for s in remaining:
            for j in range(1, len(s)):
                for f in combinations(s, j):
                    if f in remaining:
                        cof_count[f].append(s)
        free = sorted((f for f, cs in cof_count.items()
                       if len(cs) == 1 and len(cs[0]) == len(f) + 1),
                      key=simplex_key)
        if free:
            f = rng.choice(free)
            c = cof_count[f][0]
            pairs[f] = c
            remaining.discard(f)
            remaining.discard(c)
        else:
            top = max((len(s) for s in remaining))
            tops = sorted((s for s in remaining if len(s) == top),
                          key=simplex_key)
            remaining.discard(rng.choice(tops))   # critical cell
    return pairs


class ConversionResult:
    """Derived complex, induced vertex order, and the cell -> derived-vertex
    map of a discrete-to-PL conversion."""

    __slots__ = ("derived", "order", "vertex_of_cell", "critical",
                 "guarantees")

    def __init__(self, derived, order, vertex_of_cell, critical, guarantees):
        self.derived = derived
        self.order = order
        self.vertex_of_cell = vertex_of_cell
        self.critical = critical
        self.guarantees = guarantees


def to_pl_morse(complex_, values):
    """Convert a discrete Morse function to a generic PL function on the
    barycentric subdivision: the derived vertex of a cell ranks by the
    genericized cell value.

    On combinatorial manifolds the conversion guarantees that critical
    k-cells become H-critical derived vertices of index k and multiplicity 1
    and all other vertices become strongly regular; on other complexes the
    conversion is produced with guarantees withheld.
    """
    from .core import check_manifold

    _require_valid(complex_, values)
    generic = genericize(complex_, values)
    derived = complex_.barycentric_subdivision()
    vertex_of_cell = {s: s for s in generic}     # bsd labels faces by themselves
    order = VertexOrder(sorted(generic, key=lambda s: generic[s]))
    crit = critical_cells(complex_, values)
    guarantees = check_manifold(complex_).verdict == "yes"
    return ConversionResult(derived, order, vertex_of_cell, crit, guarantees)
