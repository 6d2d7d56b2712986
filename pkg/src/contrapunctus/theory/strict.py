"""Strict-style progression rules over integer pitch space.

A progression (c + kx, c' + k'x) is stored as the four pitches (c, d, c', d')
with d = c + k and d' = c' + k'. Every rule is written in terms of differences,
so classification is translation invariant and the representatives with c = 0
describe the whole style.

Labels carry a primary kind (first broken clause in table order) and the full
tuple of broken clauses. Table totals tally clauses, so a progression that is
both a tritone and a too-large skip counts under both rows.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from contrapunctus.enums import BAD_KINDS, INADMISSIBLE_KINDS, Category, StrictKind
from contrapunctus.errors import PreliminaryRuleError

logger = logging.getLogger(__name__)

OCTAVE = 12
TRITONE = 6
CONSONANCES_UP_TO_TENTH = (0, 3, 4, 7, 8, 9, 12, 15, 16)
PERFECT = (0, 7, 12)
IMPERFECT = (3, 4, 8, 9, 15, 16)
DIATONIC = frozenset({0, 2, 4, 5, 7, 9, 11})
MAX_VOICE_MOVE = 12

# Table rows: the unison repetition shares the parallel eights/unisons row.
TABLE_ONE_ROWS: tuple[tuple[str, tuple[StrictKind, ...]], ...] = (
    ("parallel fifths", (StrictKind.PARALLEL_FIFTH,)),
    ("parallel eights and unisons", (StrictKind.PARALLEL_OCTAVE, StrictKind.UNISON_REPETITION)),
    ("hidden fifths", (StrictKind.HIDDEN_FIFTH,)),
    ("hidden eights and unisons", (StrictKind.HIDDEN_OCTAVE,)),
    ("tritones", (StrictKind.TRITONE,)),
    ("too large skips", (StrictKind.TOO_LARGE_SKIP,)),
    ("imp. cons. by sim. skips", (StrictKind.IMPERFECT_SIMILAR_SKIPS,)),
    ("hidden tritones", (StrictKind.HIDDEN_TRITONE,)),
)


@dataclass(frozen=True, order=True)
class StrictProgression:
    """Two successive voice pairs (c, d) -> (c', d') in pitch space Z."""

    c: int
    d: int
    c_next: int
    d_next: int

    @classmethod
    def from_intervals(cls, k: int, c_next: int, k_next: int, c: int = 0) -> StrictProgression:
        """Build (c + kx, c' + k'x)."""
        return cls(c, c + k, c_next, c_next + k_next)

    @property
    def k(self) -> int:
        return self.d - self.c

    @property
    def k_next(self) -> int:
        return self.d_next - self.c_next

    @property
    def cantus_move(self) -> int:
        return self.c_next - self.c

    @property
    def discantus_move(self) -> int:
        return self.d_next - self.d

    @property
    def similar_motion(self) -> bool:
        """Both voices move in the same direction."""
        return self.cantus_move * self.discantus_move > 0

    @property
    def pitches(self) -> tuple[int, int, int, int]:
        return self.c, self.d, self.c_next, self.d_next

    def translated(self, t: int) -> StrictProgression:
        return StrictProgression(self.c + t, self.d + t, self.c_next + t, self.d_next + t)

    def canonical(self) -> StrictProgression:
        """The translation representative with c = 0."""
        return self.translated(-self.c)


@dataclass(frozen=True)
class RuleLabel:
    """Strict-style verdict of a progression."""

    category: Category
    kind: StrictKind = StrictKind.NONE
    violations: tuple[StrictKind, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if (self.kind is StrictKind.NONE) != (self.category is Category.GOOD):
            raise ValueError(f"kind {self.kind.value} inconsistent with {self.category.value}")


def diatonically_embeddable(
    p: StrictProgression,
    scale: frozenset[int] = DIATONIC,
    n: int = OCTAVE,
) -> bool:
    """Whether some transposition puts all four pitch classes in the scale."""
    return occurs_in_scale(p.pitches, scale, n)


def occurs_in_scale(pitches: Iterable[int], scale: frozenset[int], n: int = OCTAVE) -> bool:
    """Whether some translate of the pitch-class set lies inside ``scale``."""
    classes = {x % n for x in pitches}
    return any(all((x + t) % n in scale for x in classes) for t in range(n))


def check_preliminary(p: StrictProgression, scale: frozenset[int] = DIATONIC) -> None:
    """Enforce the preliminary rules.

    Raises:
        PreliminaryRuleError: Naming the first rule the progression breaks.
    """
    for name, k in (("first", p.k), ("second", p.k_next)):
        if k not in CONSONANCES_UP_TO_TENTH:
            raise PreliminaryRuleError(
                f"consonances up to the tenth: {name} interval {k} not in "
                f"{list(CONSONANCES_UP_TO_TENTH)}"
            )
    for voice, move in (("cantus firmus", p.cantus_move), ("discantus", p.discantus_move)):
        if abs(move) > MAX_VOICE_MOVE:
            raise PreliminaryRuleError(
                f"maximum change of a voice: {voice} moves {move}, more than an octave"
            )
    if not diatonically_embeddable(p, scale):
        raise PreliminaryRuleError(
            f"diatonic scale: pitches {p.pitches} fit no transposition of the scale"
        )


def _within(low: int, move: int, high: int) -> bool:
    return low < abs(move) < high


def violations(p: StrictProgression) -> tuple[StrictKind, ...]:
    """Every progression rule the progression breaks, in table order."""
    k, k2 = p.k, p.k_next
    dc, dd = p.cantus_move, p.discantus_move
    found: list[StrictKind] = []

    if k == 0 and k2 == 0 and dc == 0:
        found.append(StrictKind.UNISON_REPETITION)
    if k == k2 and dc != 0:
        if k == 7:
            found.append(StrictKind.PARALLEL_FIFTH)
        elif k in (0, OCTAVE):
            found.append(StrictKind.PARALLEL_OCTAVE)
    if k != k2 and p.similar_motion:
        if k2 == 7:
            found.append(StrictKind.HIDDEN_FIFTH)
        elif k2 in (0, OCTAVE):
            found.append(StrictKind.HIDDEN_OCTAVE)
    if abs(dc) == TRITONE or abs(dd) == TRITONE:
        found.append(StrictKind.TRITONE)
    if _within(7, dc, OCTAVE) or _within(7, dd, OCTAVE):
        found.append(StrictKind.TOO_LARGE_SKIP)

    if (
        k2 in IMPERFECT
        and p.similar_motion
        and abs(dc) > 2
        and abs(dd) > 2
        and (_within(5, dc, OCTAVE) or _within(5, dd, OCTAVE))
    ):
        found.append(StrictKind.IMPERFECT_SIMILAR_SKIPS)
    if (p.d_next - p.c) % OCTAVE == TRITONE or (p.d - p.c_next) % OCTAVE == TRITONE:
        found.append(StrictKind.HIDDEN_TRITONE)
    return tuple(found)


def classify_strict(p: StrictProgression, scale: frozenset[int] = DIATONIC) -> RuleLabel:
    """Label a progression inadmissible, bad or good.

    Raises:
        PreliminaryRuleError: If the progression is outside the strict style.
    """
    check_preliminary(p, scale)
    broken = violations(p)
    for kind in broken:
        if kind in INADMISSIBLE_KINDS:
            return RuleLabel(Category.INADMISSIBLE, kind, broken)
    for kind in broken:
        if kind in BAD_KINDS:
            return RuleLabel(Category.BAD, kind, broken)
    return RuleLabel(Category.GOOD, StrictKind.NONE, broken)


@lru_cache(maxsize=1)
def _representatives() -> tuple[tuple[StrictProgression, RuleLabel], ...]:
    rows = []
    for k in CONSONANCES_UP_TO_TENTH:
        for c_next in range(-MAX_VOICE_MOVE, MAX_VOICE_MOVE + 1):
            for k_next in CONSONANCES_UP_TO_TENTH:
                p = StrictProgression.from_intervals(k, c_next, k_next)
                if abs(p.discantus_move) > MAX_VOICE_MOVE or not diatonically_embeddable(p):
                    continue
                rows.append((p, classify_strict(p)))
    logger.info(f"Enumerated {len(rows)} strict-style representatives")
    return tuple(rows)


def enumerate_strict_representatives() -> list[tuple[StrictProgression, RuleLabel]]:
    """All strict progressions with c = 0, ordered by (k, c', k'), with labels."""
    return list(_representatives())


@dataclass
class StrictSummary:
    """Aggregate counts of a set of labelled strict progressions."""

    total: int
    categories: dict[str, int]
    kinds: dict[str, int]

    def to_dict(self) -> dict[str, Any]:
        return {"total": self.total, "categories": self.categories, "kinds": self.kinds}


def summarize_strict(labels: Iterable[RuleLabel]) -> StrictSummary:
    """Category totals and per-row clause tallies.

    Inadmissible rows tally inadmissible progressions, bad rows tally bad ones.
    """
    labels = list(labels)
    categories = Counter(label.category for label in labels)
    kinds: dict[str, int] = {}
    for row, members in TABLE_ONE_ROWS:
        scope = Category.BAD if members[0] in BAD_KINDS else Category.INADMISSIBLE
        kinds[row] = sum(
            1
            for label in labels
            if label.category is scope and any(m in label.violations for m in members)
        )
    return StrictSummary(
        total=len(labels),
        categories={c.value: categories.get(c, 0) for c in Category},
        kinds=kinds,
    )


def strict_row(p: StrictProgression, label: RuleLabel) -> dict[str, Any]:
    """Report row with a fixed key order."""
    return {
        "c": p.c,
        "d": p.d,
        "c_next": p.c_next,
        "d_next": p.d_next,
        "k": p.k,
        "k_next": p.k_next,
        "category": label.category.value,
        "kind": label.kind.value,
        "violations": ";".join(v.value for v in label.violations),
    }


def label_from_row(row: Mapping[str, Any]) -> RuleLabel:
    """Rebuild a label from an emitted report row."""
    raw = str(row.get("violations") or "")
    broken = tuple(StrictKind(v) for v in raw.split(";") if v)
    return RuleLabel(Category(row["category"]), StrictKind(row["kind"]), broken)
