"""The dunce-hat / Mazur-manifold pipeline.

Embeds the 8-vertex dunce hat into the boundary complex of the cyclic
5-polytope on 8 vertices, takes the regular neighborhood M in the second
derived subdivision, and certifies that M is a Z-acyclic (contractible)
4-manifold-with-boundary whose boundary is a homology 3-sphere with
nontrivial fundamental group — hence M is not a 4-ball.

The boundary complex is large (~8*10^4 tetrahedra), so its homology profile
is assembled from small exact computations instead of one giant Smith normal
form: H0 from connectivity, H1 from a collapsed spine of the punctured
boundary (removing one top cell changes no chain group in degrees <= 2),
H2-torsion and b3 from the Smith normal form of the top boundary operator,
and b2 from the Euler-Poincare identity.
"""

import time
from collections import Counter
from itertools import combinations

from .core import SimplicialComplex, check_manifold, collapse_facets, \
    collapse_simplify
from . import homology
from .constructions import (cyclic_polytope_boundary, dunce_hat8,
                            is_subcomplex, is_full_subcomplex,
                            regular_neighborhood)
from .fundgroup import (presentation, tietze_simplify, abelianization,
                        finite_quotient_search, DEFAULT_TARGETS)


def punctured_spine(closed_complex, drop_index=0):
    """Remove one facet and collapse.  For a closed complex this produces a
    lower-dimensional spine carrying the homotopy type of the punctured
    space; degrees 0 and 1 of its homology agree with the unpunctured
    complex since removing a top cell leaves the 2-skeleton untouched."""
    facets = list(closed_complex.facets)
    del facets[drop_index]
    return SimplicialComplex(collapse_facets(facets), _canonical=True)


def closed_3manifold_homology(c, spine=None):
    """Integral homology profile of a closed connected 3-pseudomanifold,
    assembled from exact pieces that stay small."""
    if not c.is_connected():
        raise ValueError("expected a connected complex")
    if spine is None:
        spine = punctured_spine(c)
    h01 = homology.integral_homology(spine)
    b1 = h01.betti[1] if len(h01.betti) > 1 else 0
    tor1 = h01.torsion[1] if len(h01.torsion) > 1 else ()
    inv3, r3 = homology.smith_normal_form(homology.boundary_matrix(c, 3))
    b3 = c.num_faces(3) - r3
    tor2 = tuple(x for x in inv3 if x > 1)
    b2 = c.euler_characteristic() - 1 + b1 + b3
    return homology.HomologyProfile(3, (1, b1, b2, b3),
                                    ((), tuple(tor1), tor2, ()), "Z")


class Section9Report:
    """Everything the reproduction emits, machine-readable."""

    def __init__(self):
        self.steps = []
        self.embedded = None
        self.missing_triangles = None
        self.fully_embedded = None
        self.m_f_vector = None
        self.m_chi = None
        self.m_z_acyclic = None
        self.boundary_f_vector = None
        self.boundary_closed_3manifold = None
        self.boundary_homology = None
        self.pi1_presentation = None
        self.pi1_abelianization = None
        self.certificate = None
        self.verdict = None
        self.elapsed = None

    def log(self, msg):
        self.steps.append(msg)

    def to_json(self):
        return {
            "embedded": self.embedded,
            "missing_triangles": [list(t) for t in self.missing_triangles],
            "fully_embedded": self.fully_embedded,
            "M": {"f_vector": list(self.m_f_vector), "chi": self.m_chi,
                  "z_acyclic": self.m_z_acyclic},
            "boundary": {
                "f_vector": list(self.boundary_f_vector),
                "closed_3_manifold": self.boundary_closed_3manifold,
                "homology": self.boundary_homology.to_json(),
            },
            "pi1": {
                "generators": self.pi1_presentation.ngens,
                "relators": [list(w) for w in self.pi1_presentation.relators],
                "abelianization": {
                    "rank": self.pi1_abelianization[0],
                    "torsion": list(self.pi1_abelianization[1])},
                "certificate": (self.certificate.to_json()
                                if self.certificate else None),
            },
            "verdict": self.verdict,
            "elapsed_seconds": round(self.elapsed, 1),
            "steps": self.steps,
        }


def reproduce(targets=DEFAULT_TARGETS, budget_seconds=600, progress=None):
    """Run the whole pipeline; returns a Section9Report."""
    t_start = time.monotonic()
    rep = Section9Report()

    def log(msg):
        rep.log(msg)
        if progress:
            progress(msg)

    sphere = cyclic_polytope_boundary(5, 8)
    hat = dunce_hat8()
    log("built cyclic polytope boundary: %d facets" % len(sphere.facets))

    rep.embedded = is_subcomplex(sphere, hat)
    all_triples = set(combinations(range(1, 9), 3))
    present = set(sphere.faces(2))
    rep.missing_triangles = sorted(all_triples - present)
    rep.fully_embedded = is_full_subcomplex(sphere, hat)
    log("dunce hat embedded: %s; missing triangles: %s"
        % (rep.embedded, rep.missing_triangles))

    nbhd = regular_neighborhood(sphere, hat)
    M = nbhd.M
    rep.m_f_vector = M.f_vector()
    rep.m_chi = M.euler_characteristic()
    log("regular neighborhood M: f = %s, chi = %d"
        % (rep.m_f_vector, rep.m_chi))

    core = collapse_simplify(M)
    rep.m_z_acyclic = homology.is_z_acyclic(core)
    log("M collapsed to %d facets; Z-acyclic: %s"
        % (len(core.facets), rep.m_z_acyclic))

    bd = nbhd.boundary
    rep.boundary_f_vector = bd.f_vector()
    mv = check_manifold(bd)
    rep.boundary_closed_3manifold = (
        mv.verdict == "yes" and not mv.has_boundary)
    log("boundary f = %s; closed 3-manifold: %s"
        % (rep.boundary_f_vector, rep.boundary_closed_3manifold))

    spine = punctured_spine(bd)
    log("punctured boundary collapsed to %d facets" % len(spine.facets))
    rep.boundary_homology = closed_3manifold_homology(bd, spine=spine)
    log("boundary integral homology: betti %s torsion %s"
        % (rep.boundary_homology.betti, rep.boundary_homology.torsion))

    pres = tietze_simplify(presentation(spine))
    rep.pi1_presentation = pres
    rep.pi1_abelianization = abelianization(pres)
    log("pi1(boundary): %d generators, %d relators; abelianization %s"
        % (pres.ngens, len(pres.relators), rep.pi1_abelianization))

    rep.certificate = finite_quotient_search(pres, targets, budget_seconds)
    if rep.certificate:
        log("nontriviality certificate: %s" % rep.certificate.transcript)

    wanted_homology = (rep.boundary_homology.betti == (1, 0, 0, 1)
                       and not any(rep.boundary_homology.torsion))
    if (rep.m_z_acyclic and rep.m_chi == 1 and wanted_homology
            and rep.boundary_closed_3manifold
            and rep.pi1_abelianization == (0, [])
            and rep.certificate is not None):
        rep.verdict = "neighborhood is NOT a 4-ball"
    else:
        rep.verdict = "inconclusive"
    rep.elapsed = time.monotonic() - t_start
    return rep
