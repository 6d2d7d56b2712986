"""Exception hierarchy for Contrapunctus.

Library code raises these; only the CLI turns them into exit codes.
"""


class ContrapunctusError(Exception):
    """Base class for every error raised by the package."""


class ModulusError(ContrapunctusError):
    """Raised for an invalid modulus or when operands carry different moduli."""


class FlavorMismatchError(ContrapunctusError):
    """Raised when nilpotent and idempotent dual values are mixed."""


class InvalidSymmetryError(ContrapunctusError):
    """Raised when a symmetry would not be invertible (non-unit scale factor)."""


class DichotomyError(ContrapunctusError):
    """Raised when a consonance/dissonance partition violates an invariant."""


class PreliminaryRuleError(ContrapunctusError):
    """Raised when a strict progression breaks one of the preliminary rules."""


class DissonanceError(ContrapunctusError):
    """Raised when a dissonant interval is given where a consonance is required."""


class ConfigError(ContrapunctusError):
    """Raised for malformed config, dichotomy or scale files."""


class ConsistencyError(ContrapunctusError):
    """Raised when two independent computations of the same quantity disagree."""


class GoldenMismatchError(ContrapunctusError):
    """Raised when emitted output drifts from a stored golden file."""
