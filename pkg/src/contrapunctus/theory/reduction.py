"""The strict style reduced modulo the octave.

A strict progression (c, d, c', d') projects to the reduced progression
(k t, c' + k' t) with every coordinate taken mod 12 relative to c. A reduced
progression is labelled from its preimages among the strict representatives:

- inadmissible: every preimage is inadmissible
- good: at least one preimage is good
- bad: otherwise

Good progressions get a refined sub-label (good-good, good-bad, ambiguous)
from the worst preimage they have.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from contrapunctus.algebra.dual import DualNumber
from contrapunctus.enums import Category, Flavor, ReducedKind, Refined, StrictKind
from contrapunctus.errors import ConsistencyError
from contrapunctus.theory.dichotomy import STANDARD_CONSONANCES
from contrapunctus.theory.strict import (
    DIATONIC,
    OCTAVE,
    TRITONE,
    RuleLabel,
    StrictProgression,
    enumerate_strict_representatives,
    occurs_in_scale,
)

logger = logging.getLogger(__name__)

Key = tuple[int, int, int]

INADMISSIBLE_SHAPES = (
    ReducedKind.PARALLEL_FIFTH,
    ReducedKind.PARALLEL_UNISON,
    ReducedKind.HIDDEN_FIFTH_FROM_SIXTH,
    ReducedKind.TRITONE,
)
BAD_SHAPES = (ReducedKind.PROJECTED_IMPERFECT, ReducedKind.HIDDEN_TRITONE)

# Skips of a parallel unison that only come from inadmissible progressions.
INADMISSIBLE_UNISON_SKIPS = frozenset({1, 2, 3, 4, 8, 9, 10, 11})
# The one projected imperfect consonance by similar skips that stays bad.
PROJECTED_IMPERFECT_KEY: Key = (7, 5, 9)


@dataclass(frozen=True, order=True)
class ReducedProgression:
    """The progression (k t, c' + k' t) of Zn[t], n = 12 unless stated."""

    k: int
    c_next: int
    k_next: int
    flavor: Flavor = Flavor.NILPOTENT
    modulus: int = OCTAVE

    def __post_init__(self) -> None:
        for name in ("k", "c_next", "k_next"):
            object.__setattr__(self, name, getattr(self, name) % self.modulus)

    @property
    def key(self) -> Key:
        return self.k, self.c_next, self.k_next

    @property
    def first(self) -> DualNumber:
        return DualNumber.of(0, self.k, self.flavor, self.modulus)

    @property
    def second(self) -> DualNumber:
        return DualNumber.of(self.c_next, self.k_next, self.flavor, self.modulus)

    @property
    def is_repetition(self) -> bool:
        return self.c_next == 0 and self.k_next == self.k

    def with_flavor(self, flavor: Flavor) -> ReducedProgression:
        return ReducedProgression(self.k, self.c_next, self.k_next, flavor, self.modulus)

    def __str__(self) -> str:
        t = self.flavor.symbol
        return f"({self.k}{t}, {self.c_next}+{self.k_next}{t})"


@dataclass(frozen=True)
class ReducedLabel:
    """Reduced-style verdict of a progression.

    ``kind`` is the first matching shape in table order, ``kinds`` all of them.
    """

    category: Category
    refined: Refined = Refined.NOT_APPLICABLE
    kind: ReducedKind = ReducedKind.NONE
    kinds: tuple[ReducedKind, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if (self.refined is not Refined.NOT_APPLICABLE) != (self.category is Category.GOOD):
            raise ValueError(
                f"refined label {self.refined.value} inconsistent with {self.category.value}"
            )


def project(p: StrictProgression, flavor: Flavor = Flavor.NILPOTENT) -> ReducedProgression:
    """Reduce a strict progression mod 12 relative to its first cantus firmus."""
    return ReducedProgression(p.k, p.c_next - p.c, p.k_next, flavor)


def reduced_occurs(key: Key, scale: frozenset[int] = DIATONIC) -> bool:
    """Whether some translate of {0, k, c', c' + k'} lies in the scale."""
    k, c_next, k_next = key
    return occurs_in_scale((0, k, c_next, c_next + k_next), scale)


@lru_cache(maxsize=1)
def _reduced_keys() -> tuple[Key, ...]:
    keys = tuple(
        (k, c_next, k_next)
        for k in STANDARD_CONSONANCES
        for c_next in range(OCTAVE)
        for k_next in STANDARD_CONSONANCES
        if reduced_occurs((k, c_next, k_next))
    )
    logger.info(f"Enumerated {len(keys)} reduced progressions in the diatonic scale")
    return keys


def enumerate_reduced(flavor: Flavor = Flavor.NILPOTENT) -> list[ReducedProgression]:
    """All diatonic reduced progressions, ordered by (k, c', k')."""
    return [ReducedProgression(*key, flavor=flavor) for key in _reduced_keys()]


@lru_cache(maxsize=1)
def _preimage_index() -> dict[Key, tuple[tuple[StrictProgression, RuleLabel], ...]]:
    index: dict[Key, list[tuple[StrictProgression, RuleLabel]]] = defaultdict(list)
    for p, label in enumerate_strict_representatives():
        index[project(p).key].append((p, label))
    return {key: tuple(rows) for key, rows in index.items()}


def preimages(r: ReducedProgression) -> list[tuple[StrictProgression, RuleLabel]]:
    """Strict representatives projecting onto ``r``."""
    return list(_preimage_index().get(r.key, ()))


def shapes(key: Key) -> tuple[ReducedKind, ...]:
    """Closed-form kind shapes of a reduced progression, in table order.

    PROJECTED_IMPERFECT is not a shape and is never returned here.
    """
    k, c_next, k_next = key
    found = []
    if c_next != 0:
        if k == k_next == 7:
            found.append(ReducedKind.PARALLEL_FIFTH)
        if k == k_next == 0:
            found.append(ReducedKind.PARALLEL_UNISON)
        # similar motion only: the discantus must move too
        if k in (8, 9) and k_next == 7 and (c_next + k_next - k) % OCTAVE != 0:
            found.append(ReducedKind.HIDDEN_FIFTH_FROM_SIXTH)
    if c_next == TRITONE or (c_next + k_next - k) % OCTAVE == TRITONE:
        found.append(ReducedKind.TRITONE)
    if (c_next + k_next) % OCTAVE == TRITONE or (k - c_next) % OCTAVE == TRITONE:
        found.append(ReducedKind.HIDDEN_TRITONE)
    return tuple(found)


def _label(r: ReducedProgression, labels: list[RuleLabel]) -> ReducedLabel:
    categories = {label.category for label in labels}
    if categories == {Category.INADMISSIBLE}:
        kinds = tuple(s for s in shapes(r.key) if s in INADMISSIBLE_SHAPES)
        if not kinds:
            logger.warning(f"Inadmissible reduced progression {r} matches no inadmissible shape")
        kind = kinds[0] if kinds else ReducedKind.NONE
        return ReducedLabel(Category.INADMISSIBLE, Refined.NOT_APPLICABLE, kind, kinds)

    if Category.GOOD in categories:
        if Category.INADMISSIBLE in categories:
            refined = Refined.AMBIGUOUS
        elif Category.BAD in categories:
            refined = Refined.GOOD_BAD
        else:
            refined = Refined.GOOD_GOOD
        return ReducedLabel(Category.GOOD, refined)

    found = []
    if any(
        label.category is Category.BAD and StrictKind.IMPERFECT_SIMILAR_SKIPS in label.violations
        for label in labels
    ):
        found.append(ReducedKind.PROJECTED_IMPERFECT)
    found.extend(s for s in shapes(r.key) if s is ReducedKind.HIDDEN_TRITONE)
    kinds = tuple(found)
    if not kinds:
        logger.warning(f"Bad reduced progression {r} matches no bad shape")
    kind = kinds[0] if kinds else ReducedKind.NONE
    return ReducedLabel(Category.BAD, Refined.NOT_APPLICABLE, kind, kinds)


@lru_cache(maxsize=None)
def _classify(key: Key) -> ReducedLabel:
    r = ReducedProgression(*key)
    labels = [label for _, label in _preimage_index().get(key, ())]
    if not labels:
        raise ConsistencyError(f"reduced progression {r} has no strict preimage")
    return _label(r, labels)


def classify_reduced(r: ReducedProgression) -> ReducedLabel:
    """Label a reduced progression from all of its strict preimages.

    Raises:
        ConsistencyError: If no strict representative projects onto ``r``.
    """
    return _classify(r.key)


def classify_all(
    flavor: Flavor = Flavor.NILPOTENT,
) -> list[tuple[ReducedProgression, ReducedLabel]]:
    """Every diatonic reduced progression with its label."""
    return [(r, classify_reduced(r)) for r in enumerate_reduced(flavor)]


def closed_form_category(key: Key) -> Category:
    """Category predicted by the derived rules of the reduced style.

    Inadmissible: tritones, parallel fifths, hidden fifths from a sixth and
    parallel unisons whose skip is not a fourth or fifth. Bad: hidden tritones
    and the single projected imperfect consonance by similar skips.
    """
    k, c_next, _ = key
    found = shapes(key)
    if (
        ReducedKind.TRITONE in found
        or ReducedKind.PARALLEL_FIFTH in found
        or ReducedKind.HIDDEN_FIFTH_FROM_SIXTH in found
    ):
        return Category.INADMISSIBLE
    if ReducedKind.PARALLEL_UNISON in found and c_next in INADMISSIBLE_UNISON_SKIPS:
        return Category.INADMISSIBLE
    if ReducedKind.HIDDEN_TRITONE in found or key == PROJECTED_IMPERFECT_KEY:
        return Category.BAD
    return Category.GOOD


@dataclass
class CrosscheckReport:
    """Agreement between preimage labels and the derived closed-form rules."""

    checked: int
    disagreements: list[dict[str, Any]]
    general_kinds: dict[str, bool]

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> dict[str, Any]:
        return {
            "checked": self.checked,
            "disagreements": self.disagreements,
            "general_kinds": self.general_kinds,
        }


def _broad_hidden_fifth(key: Key) -> bool:
    k, c_next, k_next = key
    return c_next != 0 and k_next == 7 and k != 7


def generality(rows: Iterable[tuple[ReducedProgression, ReducedLabel]]) -> dict[str, bool]:
    """Whether each projected rule is still inadmissible everywhere it applies.

    A rule keeps its generality when every reduced progression of its broad
    shape is inadmissible.
    """
    rows = list(rows)
    broad = {
        ReducedKind.PARALLEL_FIFTH.value: lambda key: ReducedKind.PARALLEL_FIFTH in shapes(key),
        ReducedKind.PARALLEL_UNISON.value: lambda key: ReducedKind.PARALLEL_UNISON in shapes(key),
        "hidden-5th": _broad_hidden_fifth,
        ReducedKind.TRITONE.value: lambda key: ReducedKind.TRITONE in shapes(key),
    }
    return {
        name: all(label.category is Category.INADMISSIBLE for r, label in rows if test(r.key))
        for name, test in broad.items()
    }


def derived_rule_crosscheck() -> CrosscheckReport:
    """Compare preimage-based labels with the closed-form rules on every progression."""
    rows = classify_all()
    disagreements = [
        {
            "progression": str(r),
            "preimage_category": label.category.value,
            "closed_form_category": closed_form_category(r.key).value,
        }
        for r, label in rows
        if closed_form_category(r.key) is not label.category
    ]
    if disagreements:
        logger.warning(f"{len(disagreements)} reduced progressions disagree with the derived rules")
    return CrosscheckReport(len(rows), disagreements, generality(rows))


@dataclass
class ReducedSummary:
    """Category, kind and refined totals of labelled reduced progressions."""

    total: int
    categories: dict[str, int]
    kinds: dict[str, int]
    refined: dict[str, int]
    repetitions: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "total": self.total,
            "categories": self.categories,
            "kinds": self.kinds,
            "refined": self.refined,
            "repetitions": self.repetitions,
        }


def summarize_reduced(rows: Iterable[tuple[ReducedProgression, ReducedLabel]]) -> ReducedSummary:
    """Totals over (progression, label) pairs; kinds are tallied with overlap."""
    rows = list(rows)
    categories = Counter(label.category for _, label in rows)
    refined = Counter(label.refined for _, label in rows)
    kinds = {
        kind.value: sum(1 for _, label in rows if kind in label.kinds)
        for kind in INADMISSIBLE_SHAPES + BAD_SHAPES
    }
    return ReducedSummary(
        total=len(rows),
        categories={c.value: categories.get(c, 0) for c in Category},
        kinds=kinds,
        refined={
            r.value: refined.get(r, 0) for r in Refined if r is not Refined.NOT_APPLICABLE
        },
        repetitions=sum(1 for r, _ in rows if r.is_repetition),
    )


def reduced_row(r: ReducedProgression, label: ReducedLabel) -> dict[str, Any]:
    """Report row with a fixed key order."""
    return {
        "k": r.k,
        "c_next": r.c_next,
        "k_next": r.k_next,
        "category": label.category.value,
        "kind": label.kind.value,
        "refined": label.refined.value,
        "kinds": ";".join(kind.value for kind in label.kinds),
    }


def reduced_from_row(row: Mapping[str, Any]) -> tuple[ReducedProgression, ReducedLabel]:
    """Rebuild a (progression, label) pair from an emitted report row."""
    kinds = tuple(ReducedKind(v) for v in str(row.get("kinds") or "").split(";") if v)
    label = ReducedLabel(
        Category(row["category"]), Refined(row["refined"]), ReducedKind(row["kind"]), kinds
    )
    return ReducedProgression(int(row["k"]), int(row["c_next"]), int(row["k_next"])), label
