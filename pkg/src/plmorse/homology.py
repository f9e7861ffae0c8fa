"""Exact simplicial homology over prime fields, the rationals and the
integers, on sparse boundary matrices.

Everything is arbitrary precision.  Integral homology goes through a Smith
normal form whose first phase eliminates +-1 pivots chosen by Markowitz
fill-in cost; the boundary matrices arising from the large section-9
complexes reduce almost entirely in that phase, and the gcd-based phase only
ever sees a small remainder.
"""

import heapq
from collections import Counter, defaultdict
from fractions import Fraction
from itertools import combinations
from math import gcd

from .core import SimplicialComplex, simplex_key


class SparseIntMatrix:
    """Sparse integer matrix as a map (row, col) -> nonzero value."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if v:
                    self.entries[(r, c)] = v

    def __repr__(self):
        return "<SparseIntMatrix %dx%d nnz=%d>" % (self.nrows, self.ncols,
                                                   len(self.entries))

    def transpose(self):
        return SparseIntMatrix(self.ncols, self.nrows,
                               {(c, r): v for (r, c), v in self.entries.items()})

    def column(self, j):
        return {r: v for (r, c), v in self.entries.items() if c == j}

    def dense(self):
        m = [[0] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            m[r][c] = v
        return m

    def compose(self, other):
        """self @ other, for chain-complex identity checks."""
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows = defaultdict(dict)
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        bycol = defaultdict(dict)
        for (r, c), v in other.entries.items():
            bycol[c][r] = v
        out = {}
        for c2, col in bycol.items():
            for r in rows:
                s = 0
                row = rows[r]
                for k, v in col.items():
                    s += row.get(k, 0) * v
                if s:
                    out[(r, c2)] = s
        return SparseIntMatrix(self.nrows, other.ncols, out)

    def is_zero(self):
        return not self.entries


def boundary_matrix(complex_, k, reduced=False):
    """Matrix of the k-th boundary operator for lexicographically sorted
    simplex bases, with the sorted-vertex orientation sign convention.

    With reduced=True and k == 0, returns the augmentation row (each vertex
    maps to the generator of degree -1).
    """
    if reduced and k == 0:
        n = len(complex_.faces(0)) if complex_.dimension >= 0 else 0
        return SparseIntMatrix(1, n, {(0, j): 1 for j in range(n)})
    if k < 1 or k > complex_.dimension:
        raise ValueError("boundary dimension %d out of range" % k)
    rows = complex_.faces(k - 1)
    cols = complex_.faces(k)
    idx = {s: i for i, s in enumerate(rows)}
    entries = {}
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            entries[(idx[face], j)] = (-1) ** i
    return SparseIntMatrix(len(rows), len(cols), entries)


# ---------------- Smith normal form ----------------

def smith_normal_form(matrix):
    """Invariant factors d1 | d2 | ... of an integer matrix, plus the rank.

    Returns (invariants, rank) where invariants is the sorted-by-divisibility
    list of nonzero diagonal entries (rank many).
    """
    if isinstance(matrix, SparseIntMatrix):
        entries = matrix.entries
    else:
        entries = matrix
    invariants = _staged_snf(entries)
    return invariants, len(invariants)


def _staged_snf(entries):
    rows = defaultdict(dict)
    cols = defaultdict(set)
    for (r, c), v in entries.items():
        if v:
            rows[r][c] = v
            cols[c].add(r)
    n_unit = 0
    heap = []
    for r, row in rows.items():
        for c, v in row.items():
            if v in (1, -1):
                heap.append(((len(row) - 1) * (len(cols[c]) - 1), r, c))
    heapq.heapify(heap)
    while heap:
        cost, r, c = heapq.heappop(heap)
        row = rows.get(r)
        if row is None:
            continue
        v = row.get(c)
        if v not in (1, -1):
            continue
        true_cost = (len(row) - 1) * (len(cols[c]) - 1)
        if true_cost > cost:
            heapq.heappush(heap, (true_cost, r, c))
            continue
        # pivot on (r, c): Schur update of the other rows meeting column c,
        # then drop the pivot row and column (unimodular row/column ops)
        piv = rows.pop(r)
        for c2 in piv:
            cols[c2].discard(r)
        for r2 in cols.pop(c, ()):
            row2 = rows.get(r2)
            if row2 is None:
                continue
            v2 = row2.pop(c, 0)
            if not v2:
                continue
            mult = v2 if v == 1 else -v2
            for c2, pv in piv.items():
                if c2 == c:
                    continue
                nv = row2.get(c2, 0) - mult * pv
                if nv:
                    row2[c2] = nv
                    cols[c2].add(r2)
                    if nv in (1, -1):
                        heapq.heappush(
                            heap, ((len(row2) - 1) * (len(cols[c2]) - 1), r2, c2))
                else:
                    row2.pop(c2, None)
                    cols[c2].discard(r2)
            if not row2:
                del rows[r2]
        n_unit += 1
    rest = [1] * n_unit
    rem = {(r, c): v for r, row in rows.items() for c, v in row.items()}
    if rem:
        rest += _gcd_snf(rem)
    return _divisibility_chain(rest)


def _gcd_snf(entries):
    """Classical SNF with gcd row/column ops; used on the small remainder
    left after unit-pivot elimination."""
    rows = defaultdict(dict)
    for (r, c), v in entries.items():
        if v:
            rows[r][c] = v
    inv = []
    while rows:
        r0, c0, _ = min(((r, c, abs(v)) for r, row in rows.items()
                         for c, v in row.items()), key=lambda t: (t[2], t[0], t[1]))
        while True:
            piv = rows[r0][c0]
            off = None
            for r, row in rows.items():
                if r != r0 and c0 in row:
                    off = ("r", r)
                    break
            if off is None:
                for c in rows[r0]:
                    if c != c0:
                        off = ("c", c)
                        break
            if off is None:
                break
            if off[0] == "r":
                r = off[1]
                q = rows[r][c0] // piv
                for c, pv in list(rows[r0].items()):
                    nv = rows[r].get(c, 0) - q * pv
                    if nv:
                        rows[r][c] = nv
                    else:
                        rows[r].pop(c, None)
                if not rows[r]:
                    del rows[r]
                elif rows[r].get(c0):
                    rows[r0], rows[r] = rows[r], rows[r0]
            else:
                c = off[1]
                q = rows[r0][c] // piv
                for r, row in list(rows.items()):
                    pv = row.get(c0)
                    if pv is None:
                        continue
                    nv = row.get(c, 0) - q * pv
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
                if rows[r0].get(c):
                    for row in rows.values():
                        a, b = row.get(c0), row.get(c)
                        if b is None:
                            row.pop(c0, None)
                        else:
                            row[c0] = b
                        if a is None:
                            row.pop(c, None)
                        else:
                            row[c] = a
        inv.append(abs(rows[r0].pop(c0)))
        if not rows[r0]:
            del rows[r0]
    return inv


def _divisibility_chain(invariants):
    inv = sorted(abs(x) for x in invariants if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(inv)):
            for j in range(i + 1, len(inv)):
                a, b = inv[i], inv[j]
                if b % a:
                    g = gcd(a, b)
                    inv[i], inv[j] = g, a * b // g
                    changed = True
        if changed:
            inv.sort()
    return inv


# ---------------- rank over a field ----------------

def parse_field(field):
    """Field spec -> characteristic (0 for the rationals, p for F_p)."""
    if field in (None, 0, "Q", "q"):
        return 0
    if isinstance(field, int):
        p = field
    elif isinstance(field, str) and field.upper().startswith("F"):
        p = int(field[1:])
    else:
        raise ValueError("unrecognized field %r" % (field,))
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError("%d is not prime" % p)
    return p


def field_rank(matrix, field="Q"):
    """Rank by exact Gaussian elimination over Q or F_p on sparse rows."""
    p = parse_field(field)
    rows = defaultdict(dict)
    cols = defaultdict(set)
    for (r, c), v in matrix.entries.items():
        v = v % p if p else Fraction(v)
        if v:
            rows[r][c] = v
            cols[c].add(r)
    rank = 0
    heap = [(len(row) - 1, r) for r, row in rows.items()]
    heapq.heapify(heap)
    while heap:
        cost, r = heapq.heappop(heap)
        row = rows.get(r)
        if row is None:
            continue
        if len(row) - 1 > cost:
            heapq.heappush(heap, (len(row) - 1, r))
            continue
        c = min(row, key=lambda cc: len(cols[cc]))
        v = row[c]
        piv = rows.pop(r)
        for c2 in piv:
            cols[c2].discard(r)
        vinv = pow(v, p - 2, p) if p else 1 / v
        for r2 in cols.pop(c, ()):
            row2 = rows.get(r2)
            if row2 is None:
                continue
            v2 = row2.pop(c, 0)
            if not v2:
                continue
            mult = v2 * vinv
            if p:
                mult %= p
            for c2, pv in piv.items():
                if c2 == c:
                    continue
                nv = row2.get(c2, 0) - mult * pv
                if p:
                    nv %= p
                if nv:
                    row2[c2] = nv
                    cols[c2].add(r2)
                else:
                    row2.pop(c2, None)
                    cols[c2].discard(r2)
            if row2:
                heapq.heappush(heap, (len(row2) - 1, r2))
            else:
                del rows[r2]
        rank += 1
    return rank


# ---------------- homology profiles ----------------

class HomologyProfile:
    """Per-dimension Betti numbers and torsion coefficients."""

    __slots__ = ("dim", "betti", "torsion", "field", "reduced")

    def __init__(self, dim, betti, torsion, field="Z", reduced=False):
        self.dim = dim
        self.betti = tuple(betti)
        self.torsion = tuple(tuple(t) for t in torsion)
        self.field = field
        self.reduced = reduced

    def __eq__(self, other):
        return (isinstance(other, HomologyProfile)
                and (self.dim, self.betti, self.torsion, self.field,
                     self.reduced)
                == (other.dim, other.betti, other.torsion, other.field,
                    other.reduced))

    def __repr__(self):
        return "<H%s dim=%d betti=%s torsion=%s over %s>" % (
            "~" if self.reduced else "", self.dim, self.betti,
            self.torsion, self.field)

    def is_trivial(self):
        return all(b == 0 for b in self.betti) and not any(self.torsion)

    def total_rank(self):
        return sum(self.betti)

    def to_json(self):
        return {"dim": self.dim, "betti": list(self.betti),
                "torsion": [list(t) for t in self.torsion],
                "field": self.field}


def betti(complex_, field="Q", reduced=False):
    """Betti numbers over Q or F_p via exact Gaussian elimination.

    For a reduced profile the augmented chain complex is used, so the empty
    complex has reduced Betti vector () and b~_{-1} is never reported.
    """
    p = parse_field(field)
    key = ("betti", p, reduced)
    got = complex_._cache.get(key)
    if got is not None:
        return got
    d = complex_.dimension
    if d < 0:
        out = ()
    else:
        ranks = {}
        for k in range(0 if reduced else 1, d + 1):
            ranks[k] = field_rank(boundary_matrix(complex_, k, reduced=True)
                                  if k == 0 else boundary_matrix(complex_, k),
                                  field)
        out = []
        for k in range(d + 1):
            b = complex_.num_faces(k) - ranks.get(k, 0) - ranks.get(k + 1, 0)
            out.append(b)
        out = tuple(out)
    complex_._cache[key] = out
    return out


def integral_homology(complex_, reduced=False):
    """Integral homology via Smith normal form of every boundary operator."""
    key = ("zhom", reduced)
    got = complex_._cache.get(key)
    if got is not None:
        return got
    d = complex_.dimension
    if d < 0:
        prof = HomologyProfile(-1, (), (), "Z", reduced)
        complex_._cache[key] = prof
        return prof
    ranks = {}
    torsion_from = {}
    lo = 0 if reduced else 1
    for k in range(lo, d + 1):
        m = boundary_matrix(complex_, k, reduced=True) if k == 0 \
            else boundary_matrix(complex_, k)
        inv, rank = smith_normal_form(m)
        ranks[k] = rank
        torsion_from[k] = [x for x in inv if x > 1]
    bettis = []
    torsions = []
    for k in range(d + 1):
        b = complex_.num_faces(k) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        bettis.append(b)
        torsions.append(tuple(torsion_from.get(k + 1, ())))
    prof = HomologyProfile(d, bettis, torsions, "Z", reduced)
    complex_._cache[key] = prof
    return prof


def is_z_acyclic(complex_):
    """True iff the reduced integral homology vanishes in every dimension."""
    if complex_.is_empty():
        raise ValueError("acyclicity of the empty complex is undefined")
    return integral_homology(complex_, reduced=True).is_trivial()


def reduced_betti(complex_, field="Q"):
    """Reduced Betti vector (b~_0, ..., b~_d); empty for the empty complex."""
    if complex_.is_empty():
        return ()
    return betti(complex_, field, reduced=True)
