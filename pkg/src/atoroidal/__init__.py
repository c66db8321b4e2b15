"""Enumeration and decomposition of atoroidal link projections on the sphere."""

__version__ = "0.1.0"

from .canon import CanonicalCode, Chirality, canonical_code, from_canonical_code, is_isomorphic
from .curves import (
    CurveCode,
    SideGraphData,
    SidePattern,
    classify_side,
    enumerate_curves,
    find_nontrivial_curve,
    is_atoroidal,
    is_hyperbolic,
    is_irreducible,
    is_trivial,
    is_trivial_by_compression,
    is_trivial_by_pattern,
    split_sides,
    vertex_link,
)
from .decompose import Cut, DecompositionTree, Gluing, Leaf, cut_along, decompose, reassemble
from .enumeration import (
    EnumerationStore,
    GluingChoice,
    RecombinationMode,
    descendant_set,
    enumerate_atoroidal,
    enumerate_recombinations,
    initial_objects,
    oracle_enumerate,
    recombine,
)
from .errors import *  # noqa: F401,F403
from .planemap import (
    ExceptionKind,
    PlaneMap,
    build,
    exception,
    face_vector,
    from_rotation_lists,
    mirror,
    parse_planar_code,
    parse_planar_codes,
    relabel,
    to_planar_code,
    torus_graph,
)
from .surgery import (
    SplitMove,
    SurgeryMove,
    apply_surgery,
    atoroidal_predecessors,
    legal_surgeries,
    simple_vertices,
    split_at,
)
