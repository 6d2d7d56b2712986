"""Reduced-style labels against model verdicts.

Three column semantics are supported:

- original: inadmissible / bad / good
- refined: good split into good-good / good-bad / ambiguous
- starred: only the rules that keep their generality under projection
  (parallel fifths and tritones) make a progression inadmissible*; every other
  inadmissible progression moves to good*
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any

from contrapunctus.enums import Category, ReducedKind, Refined, Semantics, Variant, VerdictValue
from contrapunctus.model.counterpoint import STANDARD_WORLD, all_verdicts
from contrapunctus.theory.reduction import (
    BAD_SHAPES,
    INADMISSIBLE_SHAPES,
    ReducedLabel,
    ReducedProgression,
    classify_all,
)
from contrapunctus.theory.strict import MAX_VOICE_MOVE

logger = logging.getLogger(__name__)

GENERAL_KINDS = frozenset({ReducedKind.PARALLEL_FIFTH, ReducedKind.TRITONE})
INADMISSIBLE_STAR = "inadmissible*"
GOOD_STAR = "good*"
TRIVIAL = "trivial"

COLUMNS: dict[Semantics, tuple[str, ...]] = {
    Semantics.ORIGINAL: (Category.INADMISSIBLE.value, Category.BAD.value, Category.GOOD.value),
    Semantics.REFINED: (
        Category.INADMISSIBLE.value,
        Category.BAD.value,
        Refined.GOOD_GOOD.value,
        Refined.GOOD_BAD.value,
        Refined.AMBIGUOUS.value,
    ),
    Semantics.STARRED: (INADMISSIBLE_STAR, Category.BAD.value, GOOD_STAR),
}

# (inadmissible column, good column) per semantics
_MATCH_COLUMNS: dict[Semantics, tuple[str, str]] = {
    Semantics.ORIGINAL: (Category.INADMISSIBLE.value, Category.GOOD.value),
    Semantics.REFINED: (Category.INADMISSIBLE.value, Refined.GOOD_GOOD.value),
    Semantics.STARRED: (INADMISSIBLE_STAR, GOOD_STAR),
}

Joined = list[tuple[ReducedProgression, ReducedLabel, VerdictValue]]


def column(label: ReducedLabel, semantics: Semantics) -> str:
    """The cross-table column a label falls into."""
    if semantics is Semantics.REFINED and label.category is Category.GOOD:
        return label.refined.value
    if semantics is Semantics.STARRED:
        if label.category is Category.INADMISSIBLE:
            general = GENERAL_KINDS.intersection(label.kinds)
            return INADMISSIBLE_STAR if general else GOOD_STAR
        if label.category is Category.GOOD:
            return GOOD_STAR
    return label.category.value


@dataclass
class CrossTable:
    """Counts of (verdict, column) pairs over the diatonic reduced progressions."""

    variant: str
    semantics: Semantics
    counts: dict[tuple[str, str], int] = field(default_factory=dict)

    @property
    def columns(self) -> tuple[str, ...]:
        return COLUMNS[self.semantics]

    def cell(self, verdict: VerdictValue | str, col: str) -> int:
        value = verdict.value if isinstance(verdict, VerdictValue) else verdict
        return self.counts.get((value, col), 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def row_totals(self) -> dict[str, int]:
        return {v.value: sum(self.cell(v, c) for c in self.columns) for v in VerdictValue}

    def column_totals(self) -> dict[str, int]:
        return {c: sum(self.cell(v, c) for v in VerdictValue) for c in self.columns}

    def rows(self) -> list[dict[str, Any]]:
        """One report row per verdict, columns in table order."""
        return [
            {"verdict": v.value, **{c: self.cell(v, c) for c in self.columns}}
            for v in VerdictValue
        ]

    @classmethod
    def from_rows(
        cls, variant: str, semantics: Semantics, rows: Iterable[Mapping[str, Any]]
    ) -> CrossTable:
        """Rebuild a table from emitted rows."""
        counts = {
            (str(row["verdict"]), c): int(row[c]) for row in rows for c in COLUMNS[semantics]
        }
        return cls(variant, semantics, counts)


@dataclass(frozen=True)
class MatchMetrics:
    """Agreement between a model and the reduced style."""

    matches: int
    mismatches: int

    def to_dict(self) -> dict[str, int]:
        return {"matches": self.matches, "mismatches": self.mismatches}


def joined(variant: Variant, jobs: int = 1) -> Joined:
    """Labels and verdicts of every diatonic reduced progression."""
    labels = {p.key: label for p, label in classify_all()}
    verdicts = all_verdicts(variant, STANDARD_WORLD, jobs=jobs)
    return [(p, labels[p.key], v.value) for p, v in verdicts]


def trivial_joined() -> Joined:
    """Reference model forbidding all but the imperfect consonance repetitions."""
    rows = []
    for p, label in classify_all():
        allowed = p.is_repetition and p.k in (3, 4, 8, 9)
        rows.append((p, label, VerdictValue.ALLOWED if allowed else VerdictValue.FORBIDDEN))
    return rows


def tabulate(rows: Joined, variant: str, semantics: Semantics) -> CrossTable:
    """Count a join into a cross table."""
    counts = Counter((v.value, column(label, semantics)) for _, label, v in rows)
    return CrossTable(variant, semantics, dict(counts))


def cross_table(
    variant: Variant, semantics: Semantics = Semantics.ORIGINAL, jobs: int = 1
) -> CrossTable:
    """Cross-tabulate reduced-style labels against the variant's verdicts."""
    table = tabulate(joined(variant, jobs), variant.value, semantics)
    logger.info(f"Cross table {variant.value}/{semantics.value}: {table.row_totals()}")
    return table


def metrics_from_table(table: CrossTable) -> MatchMetrics:
    """Matches and mismatches read off a cross table.

    Matches: forbidden inadmissible, forbidden bad and allowed good. Mismatches:
    forbidden good and allowed inadmissible. Allowed bad counts for neither.
    """
    inad, good = _MATCH_COLUMNS[table.semantics]
    forbidden, allowed = VerdictValue.FORBIDDEN, VerdictValue.ALLOWED
    return MatchMetrics(
        matches=table.cell(forbidden, inad)
        + table.cell(forbidden, Category.BAD.value)
        + table.cell(allowed, good),
        mismatches=table.cell(forbidden, good) + table.cell(allowed, inad),
    )


def match_metrics(
    variant: Variant, semantics: Semantics = Semantics.ORIGINAL, jobs: int = 1
) -> MatchMetrics:
    """Matches and mismatches of a variant under a semantics."""
    return metrics_from_table(cross_table(variant, semantics, jobs))


def trivial_metrics(semantics: Semantics = Semantics.REFINED) -> MatchMetrics:
    """Metrics of the reference model that only allows imperfect repetitions."""
    return metrics_from_table(tabulate(trivial_joined(), TRIVIAL, semantics))


@dataclass
class KindTable:
    """Verdict counts per reduced inadmissible and bad kind."""

    variant: str
    counts: dict[str, dict[str, int]]

    def rows(self) -> list[dict[str, Any]]:
        return [{"kind": kind, **per_verdict} for kind, per_verdict in self.counts.items()]


def kind_table(variant: Variant, jobs: int = 1) -> KindTable:
    """Allowed/forbidden/non-polarized counts per kind, tallied with overlap."""
    rows = joined(variant, jobs)
    counts: dict[str, dict[str, int]] = {}
    for kind in INADMISSIBLE_SHAPES + BAD_SHAPES:
        tally = Counter(v for _, label, v in rows if kind in label.kinds)
        counts[kind.value] = {v.value: tally.get(v, 0) for v in VerdictValue}
    return KindTable(variant.value, counts)


@dataclass
class RecoveryReport:
    """Counterpoint rules read back from verdicts alone."""

    variant: str
    parallel_prohibited: list[int]
    perfect_consonances: list[int]
    distinguished_skips: dict[int, str]
    too_large_skip: tuple[int, int] = (7, MAX_VOICE_MOVE)

    def to_dict(self) -> dict[str, Any]:
        return {
            "variant": self.variant,
            "parallel_prohibited": self.parallel_prohibited,
            "perfect_consonances": self.perfect_consonances,
            "distinguished_skips": {str(s): v for s, v in self.distinguished_skips.items()},
            "too_large_skip": list(self.too_large_skip),
        }


def rule_recovery(variant: Variant, jobs: int = 1) -> RecoveryReport:
    """Derive the parallelism prohibitions and the distinguished unison skips.

    An interval k is parallel-prohibited when every parallel (k t, c' + k t) with
    c' != 0 is forbidden or non-polarized. A distinguished skip s is one whose
    parallel unison (0 t, s + 0 t) is not allowed.
    """
    verdicts = {p.key: v.value for p, v in all_verdicts(variant, STANDARD_WORLD, jobs=jobs)}
    prohibited = []
    for k in STANDARD_WORLD.consonances:
        parallels = [v for (k1, c, k2), v in verdicts.items() if k1 == k2 == k and c != 0]
        if parallels and VerdictValue.ALLOWED not in parallels:
            prohibited.append(k)
    skips = {
        c: v.value
        for (k1, c, k2), v in sorted(verdicts.items())
        if k1 == k2 == 0 and c != 0 and v is not VerdictValue.ALLOWED
    }
    report = RecoveryReport(
        variant=variant.value,
        parallel_prohibited=prohibited,
        perfect_consonances=sorted({0, *prohibited}),
        distinguished_skips=skips,
    )
    logger.info(f"Rule recovery {variant.value}: {report.to_dict()}")
    return report
