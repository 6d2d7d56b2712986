"""Tests for the strict-style rules and their enumeration."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contrapunctus.enums import Category, StrictKind
from contrapunctus.errors import PreliminaryRuleError
from contrapunctus.theory.strict import (
    RuleLabel,
    StrictProgression,
    check_preliminary,
    classify_strict,
    diatonically_embeddable,
    enumerate_strict_representatives,
    label_from_row,
    strict_row,
    summarize_strict,
    violations,
)


def prog(k: int, c_next: int, k_next: int) -> StrictProgression:
    return StrictProgression.from_intervals(k, c_next, k_next)


class TestStrictProgression:
    """Tests for StrictProgression."""

    def test_intervals_and_moves(self) -> None:
        """Derived intervals and voice moves."""
        p = prog(4, 2, 7)
        assert p.pitches == (0, 4, 2, 9)
        assert (p.k, p.k_next) == (4, 7)
        assert (p.cantus_move, p.discantus_move) == (2, 5)
        assert p.similar_motion

    def test_oblique_is_not_similar(self) -> None:
        """A held voice is not similar motion."""
        assert not prog(3, 0, 4).similar_motion

    def test_canonical(self) -> None:
        """Translation representative with c = 0."""
        assert StrictProgression(5, 12, 7, 14).canonical() == StrictProgression(0, 7, 2, 9)


class TestPreliminaryRules:
    """Tests for check_preliminary."""

    def test_interval_beyond_tenth(self) -> None:
        """A second is not a consonance."""
        with pytest.raises(PreliminaryRuleError, match="consonances up to the tenth"):
            check_preliminary(prog(2, 0, 3))

    def test_voice_moves_more_than_an_octave(self) -> None:
        """A thirteen-semitone leap is outside the style."""
        with pytest.raises(PreliminaryRuleError, match="maximum change of a voice"):
            check_preliminary(prog(0, 13, 0))

    def test_not_diatonic(self) -> None:
        """A diminished seventh chord fits no diatonic scale."""
        p = prog(3, 6, 3)
        assert not diatonically_embeddable(p)
        with pytest.raises(PreliminaryRuleError, match="diatonic scale"):
            check_preliminary(p)


class TestViolations:
    """Tests for the progression rules."""

    def test_parallel_fifths(self) -> None:
        """7 -> 7 with a moving cantus firmus."""
        label = classify_strict(prog(7, 2, 7))
        assert label == RuleLabel(
            Category.INADMISSIBLE, StrictKind.PARALLEL_FIFTH, (StrictKind.PARALLEL_FIFTH,)
        )

    def test_unison_repetition(self) -> None:
        """Repeating a unison."""
        assert violations(prog(0, 0, 0)) == (StrictKind.UNISON_REPETITION,)

    def test_hidden_fifth(self) -> None:
        """Similar motion into a fifth."""
        assert violations(prog(4, 2, 7)) == (StrictKind.HIDDEN_FIFTH,)

    def test_tritone_and_imperfect_skips_overlap(self) -> None:
        """A tritone leap in similar motion into a third breaks two clauses."""
        label = classify_strict(prog(4, 6, 3))
        assert label.category is Category.INADMISSIBLE
        assert label.kind is StrictKind.TRITONE
        assert label.violations == (StrictKind.TRITONE, StrictKind.IMPERFECT_SIMILAR_SKIPS)

    def test_too_large_skip(self) -> None:
        """A leap of a sixth."""
        label = classify_strict(prog(7, 9, 3))
        assert label.kind is StrictKind.TOO_LARGE_SKIP
        assert StrictKind.IMPERFECT_SIMILAR_SKIPS in label.violations

    def test_hidden_tritone_is_bad(self) -> None:
        """A cross relation of a tritone only makes a progression bad."""
        label = classify_strict(prog(4, -1, 7))
        assert label == RuleLabel(
            Category.BAD, StrictKind.HIDDEN_TRITONE, (StrictKind.HIDDEN_TRITONE,)
        )

    def test_good(self) -> None:
        """Contrary steps from a third to a fifth."""
        assert classify_strict(prog(3, -2, 7)) == RuleLabel(Category.GOOD)

    def test_label_consistency(self) -> None:
        """A good label has no kind, other labels need one."""
        with pytest.raises(ValueError):
            RuleLabel(Category.GOOD, StrictKind.PARALLEL_FIFTH)
        with pytest.raises(ValueError):
            RuleLabel(Category.BAD)

    @given(
        st.sampled_from(enumerate_strict_representatives()),
        st.integers(-24, 24),
    )
    def test_translation_invariant(
        self, row: tuple[StrictProgression, RuleLabel], t: int
    ) -> None:
        """Labels depend only on differences of pitches."""
        p, label = row
        assert classify_strict(p.translated(t)) == label


class TestEnumeration:
    """Tests for the strict-style table."""

    def test_representatives_are_canonical(self) -> None:
        """Every representative starts at c = 0 and respects the preliminary rules."""
        rows = enumerate_strict_representatives()
        assert all(p.c == 0 for p, _ in rows)
        for p, _ in rows:
            check_preliminary(p)

    def test_table_totals(self) -> None:
        """1057 progressions: 671 inadmissible, 64 bad, 322 good."""
        summary = summarize_strict(label for _, label in enumerate_strict_representatives())
        assert summary.total == 1057
        assert summary.categories == {"inadmissible": 671, "bad": 64, "good": 322}

    def test_kind_rows(self) -> None:
        """Per-rule tallies, counted with overlap."""
        summary = summarize_strict(label for _, label in enumerate_strict_representatives())
        assert summary.kinds == {
            "parallel fifths": 22,
            "parallel eights and unisons": 49,
            "hidden fifths": 88,
            "hidden eights and unisons": 128,
            "tritones": 170,
            "too large skips": 434,
            "imp. cons. by sim. skips": 38,
            "hidden tritones": 26,
        }

    def test_row_rebuilds_label(self) -> None:
        """An emitted row carries the whole label."""
        p = prog(4, 6, 3)
        label = classify_strict(p)
        row = strict_row(p, label)
        assert row["violations"] == "tritone;imp-cons-similar-skips"
        assert label_from_row(row) == label
