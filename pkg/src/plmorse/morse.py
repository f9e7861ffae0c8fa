"""Generic PL functions on simplicial complexes and vertex classification.

A generic PL function assigns pairwise-distinct values to the vertices; every
quantity computed here depends only on the induced vertex order, so the
function is stored as a ranking.  A vertex is H-critical when the reduced
homology of its lower link (the full subcomplex of the link spanned by the
vertices ranked below it) is nonzero; the multiplicity of index k over a
field F is the rank of H~_{k-1} of the lower link.  Strong regularity is
decided by the low-dimensional criteria (d <= 4); in higher dimensions
H-regularity cannot decide it and 'unknown' is reported.
"""

import random
from collections import Counter

from .core import (SimplicialComplex, check_manifold, collapse_simplify,
                   label_key, _is_path_or_cycle)
from . import homology


class VertexOrder:
    """Strict total order on the vertices of a complex (rank 0 = lowest)."""

    __slots__ = ("order", "rank")

    def __init__(self, order):
        self.order = tuple(order)
        self.rank = {v: i for i, v in enumerate(self.order)}
        if len(self.rank) != len(self.order):
            raise ValueError("order contains repeated vertices")

    @classmethod
    def from_values(cls, values):
        """Build from a vertex -> value map; only the ranking is kept."""
        items = sorted(values.items(), key=lambda kv: (kv[1], label_key(kv[0])))
        vals = [v for _, v in items]
        if len(set(vals)) != len(vals):
            raise ValueError("values are not pairwise distinct")
        return cls([k for k, _ in items])

    @classmethod
    def random(cls, complex_, rng_or_seed=None):
        rng = rng_or_seed if isinstance(rng_or_seed, random.Random) \
            else random.Random(rng_or_seed)
        vs = list(complex_.vertices)
        rng.shuffle(vs)
        return cls(vs)

    def validate_for(self, complex_):
        if set(self.order) != set(complex_.vertices):
            raise ValueError("order does not cover the vertex set exactly")

    def reverse(self):
        return VertexOrder(tuple(reversed(self.order)))

    def below(self, v):
        r = self.rank[v]
        return {w for w in self.order[:r]}

    def __len__(self):
        return len(self.order)

    def __repr__(self):
        return "VertexOrder(%s)" % (list(self.order),)


def lower_link(complex_, order, v):
    """Full subcomplex of lk(v) spanned by the vertices ranked below v."""
    if v not in order.rank:
        raise ValueError("unknown vertex %r" % (v,))
    lk = complex_.link((v,))
    below = {w for w in lk.vertices if order.rank[w] < order.rank[v]}
    return lk.span(below)


def upper_link(complex_, order, v):
    if v not in order.rank:
        raise ValueError("unknown vertex %r" % (v,))
    lk = complex_.link((v,))
    above = {w for w in lk.vertices if order.rank[w] > order.rank[v]}
    return lk.span(above)


def multiplicity_vector(link_span, top_dim, field="Q"):
    """mu_k = rank H~_{k-1}(lower link; F) for k = 0..top_dim.

    The empty lower link contributes mu_0 = 1 (a local minimum attaches a
    0-cell); this is the H~_{-1} term of the augmented complex.
    """
    mu = [0] * (top_dim + 1)
    if link_span.is_empty():
        mu[0] = 1
        return tuple(mu)
    rb = homology.reduced_betti(link_span, field)
    for j, b in enumerate(rb):
        if b and j + 1 <= top_dim:
            mu[j + 1] = b
    return tuple(mu)


def integral_link_profile(link_span):
    """Reduced integral homology of the lower link; None for the empty one."""
    if link_span.is_empty():
        return None
    return homology.integral_homology(link_span, reduced=True)


class CriticalityRecord:
    """Classification of one vertex under one generic PL function."""

    __slots__ = ("vertex", "status", "multiplicities", "total_multiplicity",
                 "indices", "strong_regularity", "nondegenerate",
                 "boundary_class", "lower_link_profile")

    def __init__(self, vertex):
        self.vertex = vertex
        self.status = None               # minimum | maximum | h_regular | h_critical
        self.multiplicities = {}         # field -> tuple mu_0..mu_d
        self.total_multiplicity = {}     # field -> int
        self.indices = ()                # indices with integral multiplicity
        self.strong_regularity = "unknown"
        self.nondegenerate = "unknown"   # ('yes', k) | 'no' | 'unknown'
        self.boundary_class = "interior"
        self.lower_link_profile = None   # reduced integral HomologyProfile

    def is_h_critical(self):
        # a boundary maximum can have a contractible (ball) link: despite the
        # extremal status label it is then H-regular
        if self.lower_link_profile is None:
            return True       # empty lower link: a 0-cell is attached
        return not self.lower_link_profile.is_trivial()

    def __repr__(self):
        return "<%r: %s idx=%s mult=%s %s>" % (
            self.vertex, self.status, self.indices,
            dict(self.multiplicities), self.strong_regularity)

    def to_json(self):
        return {
            "vertex": self.vertex if not isinstance(self.vertex, tuple)
            else str(self.vertex),
            "status": self.status,
            "multiplicities": {f: list(m) for f, m in self.multiplicities.items()},
            "total_multiplicity": dict(self.total_multiplicity),
            "indices": list(self.indices),
            "strong_regularity": self.strong_regularity,
            "nondegenerate": (list(self.nondegenerate)
                              if isinstance(self.nondegenerate, tuple)
                              else self.nondegenerate),
            "boundary_class": (list(self.boundary_class)
                               if isinstance(self.boundary_class, tuple)
                               else self.boundary_class),
        }


def _integral_multiplicity(profile, top_dim, empty_lower):
    """(mu_0.., total, has_torsion) derived from the integral lower-link
    profile; ranks are free ranks, so torsion counts as degenerate extra."""
    mu = [0] * (top_dim + 1)
    if empty_lower:
        mu[0] = 1
        return tuple(mu), 1, False
    has_torsion = any(profile.torsion)
    for j, b in enumerate(profile.betti):
        if b and j + 1 <= top_dim:
            mu[j + 1] = b
    return tuple(mu), sum(mu), has_torsion


def classify_vertex(complex_, order, v, fields=("Q", "F2"),
                    manifold=None):
    """Full criticality record for one vertex.

    `manifold` may be passed to avoid re-checking; use for closed manifolds
    only — boundary vertices should go through classify_boundary_vertex.
    """
    if v not in order.rank:
        raise ValueError("unknown vertex %r" % (v,))
    d = complex_.dimension
    rec = CriticalityRecord(v)
    low = lower_link(complex_, order, v)
    lk = complex_.link((v,))
    rec.lower_link_profile = integral_link_profile(low)

    if low.is_empty():
        rec.status = "minimum"
    elif len(low.vertices) == len(lk.vertices):
        rec.status = "maximum"
    elif rec.lower_link_profile.is_trivial():
        rec.status = "h_regular"
    else:
        rec.status = "h_critical"

    for f in fields:
        mu = multiplicity_vector(low, d, f)
        rec.multiplicities[f] = mu
        rec.total_multiplicity[f] = sum(mu)
    zmu, ztotal, torsion = _integral_multiplicity(
        rec.lower_link_profile, d, low.is_empty())
    rec.indices = tuple(k for k, m in enumerate(zmu) if m)

    mv = manifold if manifold is not None else check_manifold(complex_)
    if mv.verdict == "yes" and v not in set(
            complex_.boundary_subcomplex().vertices):
        rec.strong_regularity = strong_regularity(
            complex_, order, v, manifold=mv, _low=low, _lk=lk)
        rec.nondegenerate = _nondegeneracy(d, rec.status, zmu, ztotal,
                                           torsion, rec.strong_regularity)
    return rec


def strong_regularity(complex_, order, v, manifold=None, _low=None, _lk=None):
    """'strongly_regular' | 'not_strongly_regular' | 'unknown' for an
    interior vertex of a combinatorial manifold.

    d = 1, 2 use structural link criteria; d = 3, 4 reduce H-regularity to
    strong regularity; for d >= 5 an H-regular vertex is undecided here.
    """
    mv = manifold if manifold is not None else check_manifold(complex_)
    if mv.verdict == "no":
        raise ValueError("strong regularity needs a combinatorial manifold")
    if v in set(complex_.boundary_subcomplex().vertices):
        raise ValueError("vertex %r lies on the boundary" % (v,))
    d = complex_.dimension
    low = _low if _low is not None else lower_link(complex_, order, v)
    lk = _lk if _lk is not None else complex_.link((v,))
    if low.is_empty() or len(low.vertices) == len(lk.vertices):
        return "not_strongly_regular"      # extremum
    if d == 1:
        up = len(lk.vertices) - len(low.vertices)
        return "strongly_regular" if len(low.vertices) == 1 and up == 1 \
            else "not_strongly_regular"
    if d == 2:
        return "strongly_regular" if _is_path_or_cycle(low) in ("path", "point") \
            else "not_strongly_regular"
    h_regular = homology.is_z_acyclic(low)
    if d in (3, 4):
        return "strongly_regular" if h_regular else "not_strongly_regular"
    return "unknown" if h_regular else "not_strongly_regular"


def _nondegeneracy(d, status, zmu, ztotal, torsion, strong):
    """Nondegenerate-critical-point verdict per the low-dimension results."""
    if status == "h_regular":
        return "no"
    if torsion or ztotal > 1:
        return "no"
    k = next(iter(i for i, m in enumerate(zmu) if m))
    if d <= 3:
        return ("yes", k)
    if d == 4:
        if k in (0, 1, 3, 4):
            return ("yes", k)
        return "unknown"                   # index-2 torus may be knotted
    return "unknown"


def duality_check(complex_, order, v, field="Q"):
    """Alexander duality in the link: rank H~_{d-k-1}(lk+) equals
    rank H~_{k-1}(lk-) for 1 <= k <= d-1.  Closed manifolds only."""
    mv = check_manifold(complex_)
    if mv.verdict == "no":
        raise ValueError("duality requires a combinatorial manifold")
    if not complex_.boundary_subcomplex().is_empty():
        raise ValueError("duality is stated for closed manifolds")
    d = complex_.dimension
    low = lower_link(complex_, order, v)
    up = upper_link(complex_, order, v)
    lo_rb = homology.reduced_betti(low, field)
    up_rb = homology.reduced_betti(up, field)

    def rk(rb, j):
        return rb[j] if 0 <= j < len(rb) else 0

    return all(rk(up_rb, d - k - 1) == rk(lo_rb, k - 1)
               for k in range(1, d))


def sweep(complex_, order, field="Q"):
    """Betti vectors of the sublevel spans after each vertex insertion."""
    order.validate_for(complex_)
    out = []
    for i in range(1, len(order.order) + 1):
        span = complex_.span(set(order.order[:i]))
        b = homology.betti(span, field)
        out.append(tuple(b) + (0,) * (complex_.dimension + 1 - len(b)))
    return out


def sweep_jumps_explained(profiles, records, dim, field="Q"):
    """Check that sweep Betti jumps occur only at H-critical vertices with
    sizes accounted for by the multiplicities: at each step there must be
    deaths rho_k >= 0 with jump_k = mu_k - rho_k - rho_{k+1} and rho_0 = 0."""
    prev = (0,) * (dim + 1)
    for prof, rec in zip(profiles, records):
        jump = [a - b for a, b in zip(prof, prev)]
        mu = rec.multiplicities[field]
        if not rec.is_h_critical() and any(jump):
            return False
        rho = 0
        for k in range(dim, -1, -1):
            rho = mu[k] - jump[k] - rho
            if rho < 0:
                return False
        if rho != 0:
            return False
        prev = prof
    return True


# ---------------- boundary theory ----------------

def classify_boundary_vertex(complex_, order, v):
    """Homological boundary classification of v in a manifold with boundary.

    H-critical on M gives a (+)-critical vertex with the M-side index;
    H-regular on M but H-critical for the restriction to the boundary gives
    a (-)-critical vertex with the boundary-side index; H-regular on both is
    boundary_regular.  Multiplicity above 1 (or torsion) on the deciding side
    is reported as degenerate_boundary.
    """
    bdry = complex_.boundary_subcomplex()
    if v not in set(bdry.vertices):
        raise ValueError("vertex %r is not on the boundary" % (v,))
    d = complex_.dimension
    low_m = lower_link(complex_, order, v)
    prof_m = integral_link_profile(low_m)
    low_b = lower_link(bdry, order, v)
    prof_b = integral_link_profile(low_b)

    zmu_m, tot_m, tor_m = _integral_multiplicity(prof_m, d, low_m.is_empty())
    zmu_b, tot_b, tor_b = _integral_multiplicity(prof_b, d, low_b.is_empty())

    critical_m = low_m.is_empty() or not prof_m.is_trivial()
    critical_b = low_b.is_empty() or not prof_b.is_trivial()
    if critical_m:
        if tot_m != 1 or tor_m:
            return "degenerate_boundary"
        return ("plus_critical", zmu_m.index(1))
    if critical_b:
        if tot_b != 1 or tor_b:
            return "degenerate_boundary"
        return ("minus_critical", zmu_b.index(1))
    return "boundary_regular"


def boundary_rank_inequality(complex_, order, v, field="Q"):
    """Total lower+upper multiplicity of v on M dominates the multiplicity of
    v for the restriction of f to the boundary."""
    bdry = complex_.boundary_subcomplex()
    if v in set(bdry.vertices):
        pass
    else:
        raise ValueError("vertex %r is interior" % (v,))

    def total(span):
        if span.is_empty():
            return 1
        return sum(homology.reduced_betti(span, field))

    lhs = total(lower_link(complex_, order, v)) \
        + total(upper_link(complex_, order, v))
    rhs = total(lower_link(bdry, order, v))
    return lhs >= rhs


# ---------------- whole-complex reports ----------------

class MorseReport:
    """Per-vertex records plus the complex-wide Morse relations."""

    __slots__ = ("complex", "order", "fields", "records", "weighted_mu",
                 "betti", "morse_inequality", "euler_equation", "tight",
                 "duality", "pl_morse_verdict", "manifold")

    def __init__(self):
        self.records = {}
        self.weighted_mu = {}
        self.betti = {}
        self.morse_inequality = {}
        self.euler_equation = None
        self.tight = None
        self.duality = None
        self.pl_morse_verdict = None
        self.manifold = None

    def record(self, v):
        return self.records[v]

    def to_json(self):
        return {
            "manifold": self.manifold.verdict,
            "fields": list(self.fields),
            "records": [self.records[v].to_json() for v in self.order.order],
            "weighted_mu": {f: list(m) for f, m in self.weighted_mu.items()},
            "betti": {f: list(b) for f, b in self.betti.items()},
            "morse_inequality": {f: bool(ok) for f, ok in
                                 self.morse_inequality.items()},
            "euler_equation": self.euler_equation,
            "tight": self.tight,
            "duality": self.duality,
            "pl_morse_verdict": (list(self.pl_morse_verdict)
                                 if isinstance(self.pl_morse_verdict, tuple)
                                 else self.pl_morse_verdict),
        }


def analyze(complex_, order, fields=("Q", "F2"), check_duality=False):
    """Classify every vertex and verify the Morse relations.

    Non-manifold complexes are accepted: they get the homological
    classification only, with strong regularity left 'unknown' and no
    PL-Morse verdict.
    """
    order.validate_for(complex_)
    d = complex_.dimension
    rep = MorseReport()
    rep.complex = complex_
    rep.order = order
    rep.fields = tuple(fields)
    rep.manifold = check_manifold(complex_)
    is_manifold = rep.manifold.verdict == "yes"
    bdry_vertices = set()
    if is_manifold:
        bdry_vertices = set(complex_.boundary_subcomplex().vertices)

    for v in order.order:
        rec = classify_vertex(complex_, order, v, fields,
                              manifold=rep.manifold)
        if is_manifold and v in bdry_vertices:
            rec.boundary_class = classify_boundary_vertex(complex_, order, v)
        rep.records[v] = rec

    for f in fields:
        mu = [0] * (d + 1)
        for rec in rep.records.values():
            for k, m in enumerate(rec.multiplicities[f]):
                mu[k] += m
        rep.weighted_mu[f] = tuple(mu)
        rep.betti[f] = tuple(homology.betti(complex_, f))
        rep.morse_inequality[f] = all(
            mu[k] >= rep.betti[f][k] for k in range(d + 1))
    chi = complex_.euler_characteristic()
    rep.euler_equation = all(
        sum((-1) ** k * m for k, m in enumerate(rep.weighted_mu[f])) == chi
        for f in fields)
    rep.tight = all(rep.weighted_mu[f] == rep.betti[f] for f in fields)

    if check_duality and is_manifold and not bdry_vertices:
        rep.duality = all(duality_check(complex_, order, v, fields[0])
                          for v in order.order)

    if is_manifold and d <= 4:
        rep.pl_morse_verdict = check_pl_morse(complex_, order,
                                              _report=rep)
    else:
        rep.pl_morse_verdict = ("unknown", None)
    return rep


def check_pl_morse(complex_, order, _report=None):
    """Decide whether the order defines a PL Morse function (dim <= 4).

    Returns ('yes', None), ('no', witness vertex) or ('unknown', witness).
    A vertex passes when it is strongly regular, an extremum, or a
    nondegenerate critical point per the low-dimension criteria; in
    dimension 4 an index-2 critical vertex of multiplicity 1 stays
    'unknown' (unknottedness of the level torus is not tested).  Boundary
    vertices must classify as (+)/(-)-critical with multiplicity 1 or
    boundary regular.
    """
    mv = check_manifold(complex_)
    if mv.verdict != "yes":
        raise ValueError("PL Morse verdict requires a verified manifold")
    d = complex_.dimension
    if d >= 5:
        raise ValueError("PL Morse recognition is unsupported for dim >= 5")
    bdry_vertices = set(complex_.boundary_subcomplex().vertices)
    unknown_witness = None
    for v in order.order:
        if _report is not None:
            rec = _report.records[v]
        else:
            rec = classify_vertex(complex_, order, v, fields=("Q",))
            if v in bdry_vertices:
                rec.boundary_class = classify_boundary_vertex(
                    complex_, order, v)
        if v in bdry_vertices:
            if rec.boundary_class == "degenerate_boundary":
                return ("no", v)
            continue
        if rec.status == "h_regular":
            if rec.strong_regularity == "strongly_regular":
                continue
            return ("no", v)
        nd = rec.nondegenerate
        if isinstance(nd, tuple) and nd[0] == "yes":
            continue
        if nd == "no":
            return ("no", v)
        if unknown_witness is None:
            unknown_witness = v
    if unknown_witness is not None:
        return ("unknown", unknown_witness)
    return ("yes", None)
