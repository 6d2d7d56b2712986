"""Music-theoretic layer: dichotomies, the strict style and its reduction mod 12."""

from contrapunctus.theory.dichotomy import (
    STANDARD,
    Dichotomy,
    deformed_condition,
    is_polarized,
    local_polarity,
    polarity_search,
    verify_local_uniqueness,
)
from contrapunctus.theory.reduction import (
    ReducedLabel,
    ReducedProgression,
    classify_reduced,
    derived_rule_crosscheck,
    enumerate_reduced,
    project,
)
from contrapunctus.theory.strict import (
    RuleLabel,
    StrictProgression,
    classify_strict,
    diatonically_embeddable,
    enumerate_strict_representatives,
)

__all__ = [
    "STANDARD",
    "Dichotomy",
    "ReducedLabel",
    "ReducedProgression",
    "RuleLabel",
    "StrictProgression",
    "classify_reduced",
    "classify_strict",
    "deformed_condition",
    "derived_rule_crosscheck",
    "diatonically_embeddable",
    "enumerate_reduced",
    "enumerate_strict_representatives",
    "is_polarized",
    "local_polarity",
    "polarity_search",
    "project",
    "verify_local_uniqueness",
]
