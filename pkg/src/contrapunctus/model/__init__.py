"""The counterpoint model, its brute-force oracle and the comparison with the reduced style."""

from contrapunctus.model.counterpoint import (
    STANDARD_WORLD,
    CounterpointWorld,
    Verdict,
    admitted_successors,
    all_verdicts,
    cardinality_formula,
    contrapuntal_symmetries,
    successor_set,
    verdict,
)
from contrapunctus.model.oracle import oracle_successors, oracle_verdicts

__all__ = [
    "STANDARD_WORLD",
    "CounterpointWorld",
    "Verdict",
    "admitted_successors",
    "all_verdicts",
    "cardinality_formula",
    "contrapuntal_symmetries",
    "oracle_successors",
    "oracle_verdicts",
    "successor_set",
    "verdict",
]
