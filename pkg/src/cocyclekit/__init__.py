"""Growth of multiplicative cocycles over finite covering models and
rational self-maps of the projective line.

The finite side computes backward growth limits, invariant level sets,
and absorption certificates in exact rational arithmetic; the projective
side computes local multiplicities, preimage fibers, backward growth, and
exceptional sets for rational maps, exactly where the data allows it.
"""

from .cocycle import (
    CocycleSpec,
    ExplicitSpec,
    ForwardPath,
    MultiplicativeSpec,
    RescaleResult,
    SubmultReport,
    Violation,
    builtin_explicit_spec,
    check_submultiplicative,
    cocycle_value,
    rescale_embed,
)
from .errors import (
    AmbiguousMultiplicityError,
    CocycleKitError,
    DegenerateInputError,
    DegenerateMapError,
    DegreeError,
    ExactModeRequiredError,
    InputError,
    ModeMismatchError,
    NotBackwardInvariantError,
    NumericFailureError,
    ParseError,
    PathError,
    PreconditionError,
    UnsupportedModelError,
    UnsupportedSpecError,
    WholeSpaceError,
)
from .finite import (
    ForwardGrowth,
    LevelSetCertificate,
    OscillatingExample,
    OscillatingReport,
    SigmaTrace,
    TailLimit,
    delta_star,
    example_oscillating,
    forward_max_growth,
    kappa_backward,
    kappa_minus,
    kappa_plus,
    level_set,
    oscillating_report,
    periodic_component_growth,
    sigma_construct,
    tail_limit,
)
from .formats import emit_map, emit_model, parse_map, parse_model
from .model import CoveringModel, Edge
from .poly import (
    Poly,
    derivative,
    evaluate,
    gcd_monic,
    poly_arith,
    resultant,
    squarefree_decomposition,
    vanishing_order,
)
from .projective import ProjectivePoint, chordal_distance, chordal_to_unit_circle
from .rates import AlgebraicGrowthRate, rate_from_cycle, rational_between
from .rational_maps import (
    BackwardEstimate,
    EquidistributionReport,
    ExceptionalSetReport,
    PreimageFiber,
    RationalMap,
    apply_map,
    compose_map,
    equidistribution_report,
    exceptional_set,
    iterate_map,
    iterate_multiplicity,
    kappa_backward_analytic,
    local_multiplicity,
    make_map,
    preimages,
    totally_invariant_core,
)
from .reports import TOOL_VERSION, Report, emit_report
from .roots import RootCluster, find_roots
from .scalars import APPROX, EXACT, Scalar

__version__ = TOOL_VERSION

__all__ = [name for name in dir() if not name.startswith("_")]
