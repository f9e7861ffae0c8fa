"""Built-in complexes and regular neighborhoods in the second derived
subdivision.

Cyclic polytope boundaries come from Gale's evenness condition.  The
8-vertex dunce hat is the fixed 17-triangle list whose triangles each
contain 1, 8, or a consecutive pair, which makes it a subcomplex of the
boundary of the cyclic 5-polytope on 8 vertices.
"""

from collections import Counter
from itertools import combinations, permutations

from .core import SimplicialComplex, collapse_facets, make_simplex, simplex_key


def simplex_boundary(d):
    """Boundary of the d-simplex on vertices 0..d."""
    verts = tuple(range(d + 1))
    return SimplicialComplex.from_facets(
        [verts[:i] + verts[i + 1:] for i in range(d + 1)],
        name="boundary-of-%d-simplex" % d)


def torus7():
    """The 7-vertex torus, as the cyclic scheme {i,i+1,i+3}, {i,i+2,i+3}
    mod 7.  It is 2-neighborly, has chi = 0, and every vertex link is a
    6-cycle; the triangle 124 is a face."""
    fs = []
    for i in range(7):
        fs.append(((i) % 7, (i + 1) % 7, (i + 3) % 7))
        fs.append(((i) % 7, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex.from_facets(fs, name="torus7")


def rp2_6():
    """The 6-vertex real projective plane (antipodal icosahedron)."""
    fs = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
          (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)]
    return SimplicialComplex.from_facets(fs, name="rp2-6")


DUNCE_HAT_TRIANGLES = (
    (1, 2, 4), (2, 3, 4), (3, 4, 6), (1, 3, 6),
    (1, 2, 6), (2, 5, 6), (2, 3, 5), (1, 3, 5),
    (1, 2, 7), (1, 4, 7), (2, 7, 8), (4, 5, 7), (5, 7, 8),
    (2, 3, 8), (1, 3, 8), (1, 5, 8),
    (4, 5, 6),
)


def dunce_hat8():
    """The 8-vertex dunce hat: contractible but not collapsible."""
    return SimplicialComplex.from_facets(DUNCE_HAT_TRIANGLES,
                                         name="duncehat8")


def cyclic_polytope_boundary(d, n):
    """Boundary complex of the cyclic d-polytope with n vertices, by Gale's
    evenness condition: a d-subset S of {1..n} is a facet iff between any two
    elements not in S there lies an even number of elements of S."""
    if n <= d + 1:
        raise ValueError("cyclic polytope needs n >= d + 2")
    verts = list(range(1, n + 1))
    facets = []
    for s in combinations(verts, d):
        inside = set(s)
        comp = [v for v in verts if v not in inside]
        if all(sum(1 for x in s if i < x < j) % 2 == 0
               for i, j in combinations(comp, 2)):
            facets.append(s)
    return SimplicialComplex.from_facets(facets,
                                         name="cyclic-%d-%d" % (d, n))


def is_subcomplex(whole, part):
    """True when every facet of `part` is a face of `whole`."""
    return all(whole.has_face(f) for f in part.facets)


def is_full_subcomplex(whole, part):
    """True when `part` equals the span of its vertex set inside `whole`."""
    if not is_subcomplex(whole, part):
        return False
    return whole.span(set(part.vertices)) == part


# ---------------- regular neighborhoods ----------------

class NeighborhoodResult:
    """Regular neighborhood M of |K| in the second derived subdivision of C,
    its boundary, and the carrier chain of every derived vertex.

    Vertices of M are compact integer ids; carrier[id] is the chain of
    simplices of C (each a sorted vertex tuple) that the id stands for —
    a simplex of the first derived subdivision."""

    __slots__ = ("M", "boundary", "carrier")

    def __init__(self, M, boundary, carrier):
        self.M = M
        self.boundary = boundary
        self.carrier = carrier


def _first_derived_facets(complex_):
    """Facets of bsd(C) as chains (tuples of simplices of C)."""
    out = []
    for f in complex_.facets:
        for perm in permutations(f):
            acc = []
            chain = []
            for v in perm:
                acc.append(v)
                chain.append(make_simplex(acc))
            out.append(tuple(chain))
    return out


def regular_neighborhood(complex_, sub):
    """Closed subcomplex of the second derived subdivision of `complex_`
    consisting of all simplices meeting the subdivided copy of `sub`.

    A facet of the second derived is a flag of simplices of the first
    derived; its closure meets |sub'| exactly when the minimal flag element
    is the barycenter of a simplex of `sub`, so the facets of M are the
    flags whose bottom vertex carries a simplex of `sub`.
    """
    if not is_subcomplex(complex_, sub):
        raise ValueError("second argument is not a subcomplex")
    # rank the simplices of C so chains become int tuples (hot loop below)
    all_simplices = sorted(
        {s for f in complex_.facets
         for k in range(1, len(f) + 1) for s in combinations(f, k)},
        key=lambda s: (len(s), simplex_key(s)))
    srank = {s: i for i, s in enumerate(all_simplices)}
    in_sub = set()
    for f in sub.facets:
        for k in range(1, len(f) + 1):
            in_sub.update(srank[s] for s in combinations(f, k))

    chains = sorted(tuple(srank[s] for s in ch)
                    for ch in _first_derived_facets(complex_))
    chain_vertex_ids = {}

    def vid(chain):
        got = chain_vertex_ids.get(chain)
        if got is None:
            got = len(chain_vertex_ids)
            chain_vertex_ids[chain] = got
        return got

    m_facets = set()
    for chain in chains:
        n = len(chain)
        for imin in range(n):
            if chain[imin] not in in_sub:
                continue
            first = chain[imin]
            others = chain[:imin] + chain[imin + 1:]
            for perm in permutations(others):
                acc = [first]
                flag = [vid((first,))]
                for tau in perm:
                    acc.append(tau)
                    flag.append(vid(tuple(sorted(acc))))
                m_facets.add(tuple(sorted(flag)))

    # renumber ids deterministically by the carrier chains (ranks sort the
    # same way as the underlying simplices)
    chains_sorted = sorted(chain_vertex_ids)
    remap = {chain_vertex_ids[ch]: i for i, ch in enumerate(chains_sorted)}
    carrier = {i: tuple(all_simplices[r] for r in ch)
               for i, ch in enumerate(chains_sorted)}
    facets = sorted({tuple(sorted(remap[v] for v in f)) for f in m_facets})
    M = SimplicialComplex(facets, _canonical=True)
    return NeighborhoodResult(M, M.boundary_subcomplex(), carrier)
