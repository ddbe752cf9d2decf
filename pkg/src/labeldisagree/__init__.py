"""Dominant-label disagreement potentials: lattice verification and exact minimization."""

from .core import (
    ConcaveSpec,
    builtin_specs,
    LabelVector,
    Majority,
    deviation,
    disagreement,
    dominant_label,
    eval_g,
    make_concave_spec,
)
from .errors import (
    CapTooLarge,
    DisagreementError,
    LengthMismatch,
    ParameterError,
    ParseError,
    RangeError,
    SemanticError,
    TooLarge,
    ValidationError,
)
from .formats import parse_gspec, parse_instance, serialize_instance
from .reduction import Decomposition, GadgetFragment, Piece, build_gadget, decompose_truncated, gadget_min_over_aux
from .solver import (
    CutGraph,
    Instance,
    Solution,
    assemble_energy,
    instance_energy,
    max_flow,
    minimize_bruteforce,
    minimize_cut,
    random_instance,
)
from .verifier import (
    KappaProfile,
    ProofCase,
    VerifyReport,
    classify_case,
    find_counterexample,
    join_meet,
    kappa_profile,
    submodular_margin,
    verify_exhaustive,
    verify_sampled,
)

__version__ = "0.1.0"
