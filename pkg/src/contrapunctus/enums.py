"""Centralized enums for Contrapunctus.

All labels that end up in reports are string enums so that CSV/JSON output and
golden files stay stable and human readable.
"""

from enum import Enum


class Flavor(str, Enum):
    """Product rule of the dual-number ring Zn[t]."""

    NILPOTENT = "nilpotent"  # t^2 = 0
    IDEMPOTENT = "idempotent"  # t^2 = t

    @property
    def symbol(self) -> str:
        """Short symbol used when rendering ring elements."""
        return "e" if self is Flavor.NILPOTENT else "x"


class LocalityStrategy(str, Enum):
    """Where the deformed-partition condition is imposed."""

    LOCAL = "local"  # only at the cantus firmus of the first interval
    FIBERWISE = "fiberwise"  # also weights successors by their own fiber
    GLOBAL = "global"  # at every fiber


class Variant(str, Enum):
    """Counterpoint model variants."""

    CLASSICAL = "classical"
    IDEMPOTENT = "idempotent"
    LOCAL_GLOBAL_NILPOTENT = "local-global-nilpotent"
    LOCAL_GLOBAL_IDEMPOTENT = "local-global-idempotent"

    @property
    def flavor(self) -> Flavor:
        """Ring flavor the variant works over."""
        if self in (Variant.CLASSICAL, Variant.LOCAL_GLOBAL_NILPOTENT):
            return Flavor.NILPOTENT
        return Flavor.IDEMPOTENT

    @property
    def locality(self) -> LocalityStrategy:
        """Default locality strategy of the variant."""
        if self in (Variant.CLASSICAL, Variant.IDEMPOTENT):
            return LocalityStrategy.LOCAL
        return LocalityStrategy.GLOBAL


class VerdictValue(str, Enum):
    """Outcome of the model for a progression."""

    ALLOWED = "allowed"
    FORBIDDEN = "forbidden"
    NON_POLARIZED = "non-polarized"


class Category(str, Enum):
    """Strict-style and reduced-style progression categories."""

    INADMISSIBLE = "inadmissible"
    BAD = "bad"
    GOOD = "good"


class StrictKind(str, Enum):
    """Progression rule clauses of the strict style, in table order."""

    UNISON_REPETITION = "unison-repetition"
    PARALLEL_FIFTH = "parallel-perfect-5th"
    PARALLEL_OCTAVE = "parallel-perfect-8/1"
    HIDDEN_FIFTH = "hidden-5th"
    HIDDEN_OCTAVE = "hidden-8/1"
    TRITONE = "tritone"
    TOO_LARGE_SKIP = "too-large-skip"
    IMPERFECT_SIMILAR_SKIPS = "imp-cons-similar-skips"
    HIDDEN_TRITONE = "hidden-tritone"
    NONE = "none"

    @property
    def is_inadmissible(self) -> bool:
        """Whether breaking this clause makes a progression inadmissible."""
        return self in INADMISSIBLE_KINDS

    @property
    def is_bad(self) -> bool:
        """Whether breaking this clause makes a progression bad."""
        return self in BAD_KINDS


INADMISSIBLE_KINDS = (
    StrictKind.UNISON_REPETITION,
    StrictKind.PARALLEL_FIFTH,
    StrictKind.PARALLEL_OCTAVE,
    StrictKind.HIDDEN_FIFTH,
    StrictKind.HIDDEN_OCTAVE,
    StrictKind.TRITONE,
    StrictKind.TOO_LARGE_SKIP,
)

BAD_KINDS = (
    StrictKind.IMPERFECT_SIMILAR_SKIPS,
    StrictKind.HIDDEN_TRITONE,
)


class ReducedKind(str, Enum):
    """Kinds of inadmissible and bad progressions in the reduced style."""

    PARALLEL_FIFTH = "parallel-5th"
    PARALLEL_UNISON = "parallel-unison"
    HIDDEN_FIFTH_FROM_SIXTH = "hidden-5th-from-6th"
    TRITONE = "tritone"
    PROJECTED_IMPERFECT = "proj-imp-cons"
    HIDDEN_TRITONE = "hidden-tritone"
    NONE = "none"


class Refined(str, Enum):
    """Refined sub-labels of reduced good progressions."""

    GOOD_GOOD = "good-good"
    GOOD_BAD = "good-bad"
    AMBIGUOUS = "ambiguous"
    NOT_APPLICABLE = "n/a"


class Semantics(str, Enum):
    """Column semantics of a comparison table."""

    ORIGINAL = "original"
    REFINED = "refined"
    STARRED = "starred"


class OutputFormat(str, Enum):
    """Report output formats."""

    CSV = "csv"
    JSON = "json"
    MARKDOWN = "md"
    TABLE = "table"
