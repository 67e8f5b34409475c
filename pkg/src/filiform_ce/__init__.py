"""One-dimensional central extensions of the graded filiform algebras.

The library builds the multiplication tables of the extension family,
solves the bracket-identity constraints on their coefficients, applies
adapted basis changes in closed form, and classifies every member up to
isomorphism -- with a verification harness that re-derives each of those
facts from independent numerical routes.
"""

from .action import (
    AdaptedTransform,
    act_by_coefficient_sum,
    act_on_params,
    adapted_matrix,
    compose,
    elementary_factors,
    elementary_to_adapted,
    identity_transform,
    inverse_transform,
    random_transform,
    read_params,
    sigma,
    tau,
    transform_from_matrix,
    upsilon,
    verify_tail_triviality,
)
from .classify import (
    InvariantReport,
    OrbitLabel,
    canonicalize,
    classify,
    isomorphic,
    orbit_invariant,
    representative_params,
    representatives,
    subset_of,
    warn_if_borderline,
)
from .errors import (
    CanonicalizationError,
    DegenerateTransformError,
    DomainError,
    FiliformError,
    InputFormatError,
    SingularMatrixError,
    TableShapeError,
)
from .family import (
    ConstraintReport,
    ExtensionParams,
    Relation,
    build_mu,
    build_table,
    params_from_tuple,
    random_params,
    solve_leibniz_constraints,
)
from .tensor import (
    StructureTensor,
    bracket,
    change_basis,
    from_entries,
    is_filiform,
    leibniz_residual,
    leibniz_residual_tensor,
    lower_central_series,
    worst_leibniz_triple,
)
from .tolerance import Tolerance
from .verify import MANIFEST, CheckResult, VerificationReport, verify_all

__version__ = "0.1.0"

__all__ = [
    "AdaptedTransform",
    "CanonicalizationError",
    "CheckResult",
    "ConstraintReport",
    "DegenerateTransformError",
    "DomainError",
    "ExtensionParams",
    "FiliformError",
    "InputFormatError",
    "InvariantReport",
    "MANIFEST",
    "OrbitLabel",
    "Relation",
    "SingularMatrixError",
    "StructureTensor",
    "TableShapeError",
    "Tolerance",
    "VerificationReport",
    "act_by_coefficient_sum",
    "act_on_params",
    "adapted_matrix",
    "bracket",
    "build_mu",
    "build_table",
    "canonicalize",
    "change_basis",
    "classify",
    "compose",
    "elementary_factors",
    "elementary_to_adapted",
    "from_entries",
    "identity_transform",
    "inverse_transform",
    "is_filiform",
    "isomorphic",
    "leibniz_residual",
    "leibniz_residual_tensor",
    "lower_central_series",
    "orbit_invariant",
    "params_from_tuple",
    "random_params",
    "random_transform",
    "read_params",
    "representative_params",
    "representatives",
    "sigma",
    "solve_leibniz_constraints",
    "subset_of",
    "tau",
    "transform_from_matrix",
    "upsilon",
    "verify_all",
    "verify_tail_triviality",
    "warn_if_borderline",
    "worst_leibniz_triple",
]
