"""spheremap: economical sphere triangulations with certified degree maps."""

from .complexes import (
    FVector,
    NonOrientableError,
    NotPseudomanifoldError,
    OrientedComplex,
    SimplicialComplex,
    SphereMapError,
    central_subdivision,
    cycle,
    euler_characteristic,
    f_polynomial_product,
    f_vector,
    faces,
    is_closed_pseudomanifold,
    join,
    join_all,
    orient,
    simplex_boundary,
    vertex_link,
    verify_coherent,
)
from .maps import (
    DegreeReport,
    InvalidMapError,
    SimplicialMap,
    collapse_map,
    compose,
    constant_map,
    degree,
    facet_sign,
    identity_map,
    join_maps,
    reflect,
    swap_automorphism,
    validate_map,
    wrap_map,
)

__version__ = "0.1.0"

from .snf import SNFResult, integer_determinant, smith_normal_form  # noqa: E402
from .homology import (  # noqa: E402
    BoundaryMatrix,
    HomologyGroups,
    SphereEvidence,
    boundary_matrix,
    degree_via_homology,
    fundamental_class,
    homology,
    verify_sphere_evidence,
)
from .constructions import (  # noqa: E402
    CertificationError,
    CertifiedConstruction,
    FVectorReport,
    NoUsableFacetError,
    base_map,
    construct,
    degree_shift,
    fvector_sphere,
    multi_circle_map,
    guaranteed_vertex_bound,
)
from .realization import (  # noqa: E402
    PolytopeRealization,
    RealizationError,
    SupportCertificate,
    complex_of_tree,
    realize_construction,
    realize_cycle,
    realize_join,
    realize_simplex_boundary,
    realize_subdivision,
    verify_polytope,
)

__all__ = [name for name in dir() if not name.startswith("_")]
