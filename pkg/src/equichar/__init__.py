"""equichar: which point-wise activations commute with which matrix groups.

The library classifies a finitely generated matrix group against the maximal
admissible pairs of activation families and matrix-group classes, constructs
the multiplicative activations belonging to each family, rescales bounded
monomial groups to (signed) permutation form, and builds/validates
equivariant affine layers for permutation representations.
"""

from .activations import (
    Activation,
    Counterexample,
    EquivarianceReport,
    EtaProfile,
    MembershipReport,
    build_eta_activation,
    check_family_membership,
    custom,
    decompose_scale,
    export_activation_csv,
    identity,
    relu,
    sample_grid,
    tanh,
    verify_pointwise_equivariance,
)
from .core import (
    DEFAULT_CLOSURE_CAP,
    DEFAULT_TOL,
    ClosureResult,
    GroupSpec,
    MonomialForm,
    as_matrix,
    close_group,
    is_unit_row,
    monomial_decompose,
)
from .errors import (
    CountMismatchError,
    DimensionTooLargeError,
    EndpointViolationError,
    EquicharError,
    GeneratorCountMismatchError,
    NonPositiveInputError,
    NotMonomialError,
    ShapeMismatchError,
    SizeExceededError,
    UnboundedGroupError,
)
from .normalize import ScalingResult, positive_scaling, signed_normalize
from .repspaces import (
    AffineEquivariantLayer,
    LayerBasis,
    NetworkReport,
    OrbitDecomposition,
    PermAction,
    StageFailure,
    build_affine_layer,
    equivariant_basis,
    invariant_basis,
    is_trivial_rep,
    orbits,
    perm_matrix,
    tensor_action,
    validate_network,
)
from .tclass import (
    ActivationFamily,
    FamilyKind,
    GroupClassification,
    SubgroupClass,
    SubgroupKind,
    TGenerators,
    classify_group,
    classify_group_detailed,
    classify_subgroup,
    family_contains,
    maximal_family,
    maximal_group_label,
    subset_sum_generators,
)

__version__ = "0.1.0"

__all__ = [
    "Activation",
    "ActivationFamily",
    "AffineEquivariantLayer",
    "ClosureResult",
    "Counterexample",
    "CountMismatchError",
    "DEFAULT_CLOSURE_CAP",
    "DEFAULT_TOL",
    "DimensionTooLargeError",
    "EndpointViolationError",
    "EquicharError",
    "EquivarianceReport",
    "EtaProfile",
    "FamilyKind",
    "GeneratorCountMismatchError",
    "GroupClassification",
    "GroupSpec",
    "LayerBasis",
    "MembershipReport",
    "MonomialForm",
    "NetworkReport",
    "NonPositiveInputError",
    "NotMonomialError",
    "OrbitDecomposition",
    "PermAction",
    "ScalingResult",
    "ShapeMismatchError",
    "SizeExceededError",
    "StageFailure",
    "SubgroupClass",
    "SubgroupKind",
    "TGenerators",
    "UnboundedGroupError",
    "as_matrix",
    "build_affine_layer",
    "build_eta_activation",
    "check_family_membership",
    "classify_group",
    "classify_group_detailed",
    "classify_subgroup",
    "close_group",
    "custom",
    "decompose_scale",
    "equivariant_basis",
    "export_activation_csv",
    "family_contains",
    "identity",
    "invariant_basis",
    "is_trivial_rep",
    "is_unit_row",
    "maximal_family",
    "maximal_group_label",
    "monomial_decompose",
    "orbits",
    "perm_matrix",
    "positive_scaling",
    "relu",
    "sample_grid",
    "signed_normalize",
    "subset_sum_generators",
    "tanh",
    "tensor_action",
    "validate_network",
    "verify_pointwise_equivariance",
]
