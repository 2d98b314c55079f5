"""Split extensions and semidirect products of finite unitary magmas."""

from .actions import (
    Action,
    SemidirectDiagram,
    associated_action,
    enumerate_actions,
    is_distributive,
    is_firm,
    restrict_action,
    semidirect,
    trivial_action,
    validate_action,
)
from .classes import (
    SplitEpiClass,
    class_of_action,
    class_of_extension,
    classify_split_epi,
    classify_split_epi_any,
    short_five_check,
)
from .composition import (
    check_distributive_closure,
    check_firm_closure,
    compose,
    is_composable,
)
from .core import (
    STANDARD,
    Hom,
    Magma,
    ZeroMap,
    cyclic_group,
    direct_product,
    identity,
    is_associative,
    is_commutative,
    or_monoid,
    trivial_magma,
    validate_magma,
)
from .enumeration import (
    SearchBudget,
    count_magmas,
    enumerate_homs,
    enumerate_magmas,
    iso_classes,
)
from .errors import (
    EquationViolation,
    InternalDefect,
    MagmaKitError,
    NotComposable,
    PreconditionViolation,
    ValidationError,
)
from .extensions import SplitExtension, scramble_extension, validate_split_extension
from .morphisms import SplitExtMorphism, canonical_iso, pullback, validate_morphism
from .verify import VerificationReport, run_verification_suite

__version__ = "0.1.0"

__all__ = [
    "Action",
    "EquationViolation",
    "Hom",
    "InternalDefect",
    "Magma",
    "MagmaKitError",
    "NotComposable",
    "PreconditionViolation",
    "STANDARD",
    "SearchBudget",
    "SemidirectDiagram",
    "SplitEpiClass",
    "SplitExtMorphism",
    "SplitExtension",
    "ValidationError",
    "VerificationReport",
    "ZeroMap",
    "associated_action",
    "canonical_iso",
    "check_distributive_closure",
    "check_firm_closure",
    "class_of_action",
    "class_of_extension",
    "classify_split_epi",
    "classify_split_epi_any",
    "compose",
    "count_magmas",
    "cyclic_group",
    "direct_product",
    "enumerate_actions",
    "enumerate_homs",
    "enumerate_magmas",
    "identity",
    "is_associative",
    "is_commutative",
    "is_composable",
    "is_distributive",
    "is_firm",
    "iso_classes",
    "or_monoid",
    "pullback",
    "restrict_action",
    "run_verification_suite",
    "scramble_extension",
    "semidirect",
    "short_five_check",
    "trivial_action",
    "trivial_magma",
    "validate_action",
    "validate_magma",
    "validate_morphism",
    "validate_split_extension",
]
