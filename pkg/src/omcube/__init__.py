"""omcube: sign-vector systems, partial cubes, and ample completions.

Vertices of the hypercube Q_m are integer bitmasks over the ground set
{1, ..., m} (element e is bit e-1); in bitstring form element 1 is the
leftmost character.  Sign vectors are disjoint (plus, minus) mask pairs.

Modules:
  family    -- shattering, VC-dimension, sandwich bounds, ampleness
  signvec   -- sign vectors, covector axioms, topes, cocircuits, rank
  pcube     -- partial-cube metric machinery, minors, expansions
  comstruct -- faces, facets, carriers, COM/OM/UOM/CUOM classification
  complete  -- completion algorithms and the minimum-completion oracle
  corpus    -- exact-rational generators, enumeration, canonical forms, I/O
  cli       -- the `omcube` command
"""

from .errors import (
    DimensionError,
    DomainVerdict,
    GenerationError,
    NoCompletionFound,
    NotCUOMError,
    OmcubeError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
)
from .family import (
    Family,
    fibers,
    is_ample,
    mask_to_str,
    phi,
    sandwich_report,
    shattering_complexes,
    str_to_mask,
    vc_dim,
)
from .signvec import (
    SignSystem,
    SignVector,
    axiom_report,
    compose,
    is_uom_by_cocircuits,
    minor,
    rank_of,
    separator,
    simplify,
    topes_and_cocircuits,
    upset_closure,
)
from .pcube import (
    NotAntipodal,
    PCube,
    antipodes,
    contract_coordinate,
    expand,
    gate,
    geodesic_gallery_exists,
    interval,
    is_gated,
    is_partial_cube,
    metric_projection,
    peripheral_expansion,
    restrict_halfspace,
    theta_and_halfspaces,
)
from .comstruct import (
    ClassReport,
    Face,
    are_parallel,
    classify,
    enumerate_faces,
    face_projection,
    facets,
    parallel_gallery,
    zones,
)
from .complete import (
    CompletionTrace,
    cuom_to_amp,
    min_ample_completion,
    naive_facet_union,
    om_to_amp,
    om_to_uom,
    single_gated_extension,
    uom_completions,
    uom_to_amp,
)
from .corpus import (
    Arrangement,
    CanonicalKey,
    canonical_form,
    covectors_of_arrangement,
    enumerate_partial_cubes,
    even_cycle,
    export_dot,
    gen_realizable_com,
    gen_uniform_om,
    load_family,
    load_signsystem,
    named,
    path,
    product,
    save_family,
    save_signsystem,
    save_trace,
    topes_of_arrangement,
)

__version__ = "0.1.0"
