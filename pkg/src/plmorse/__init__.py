"""PL Morse theory on finite simplicial complexes.

Vertex classification of generic PL functions (H-critical / H-regular /
strongly regular, boundary criticality), exact simplicial homology over
fields and the integers, Forman discrete Morse conversion to PL Morse
functions, cyclic-polytope and dunce-hat constructions with regular
neighborhoods, and fundamental group certificates.
"""

from .core import (SimplicialComplex, ManifoldVerdict, check_manifold,
                   collapse_simplify, label_key)
from .homology import (SparseIntMatrix, HomologyProfile, boundary_matrix,
                       smith_normal_form, betti, reduced_betti,
                       integral_homology, is_z_acyclic)
from .morse import (VertexOrder, CriticalityRecord, MorseReport, lower_link,
                    upper_link, classify_vertex, strong_regularity, analyze,
                    duality_check, sweep, classify_boundary_vertex,
                    boundary_rank_inequality, check_pl_morse)
from .discrete import (validate, critical_cells, matching, genericize,
                       values_from_matching, random_matching, to_pl_morse,
                       ConversionResult)
from .constructions import (simplex_boundary, torus7, rp2_6, dunce_hat8,
                            cyclic_polytope_boundary, is_subcomplex,
                            is_full_subcomplex, regular_neighborhood,
                            NeighborhoodResult)
from .fundgroup import (Presentation, presentation, tietze_simplify,
                        abelianization, finite_quotient_search,
                        QuotientCertificate, parse_targets)

__version__ = "0.1.0"
