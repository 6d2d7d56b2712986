"""Tests comparing the closed-form search with brute force."""

import pytest

from contrapunctus.enums import LocalityStrategy, Variant, VerdictValue
from contrapunctus.errors import DissonanceError
from contrapunctus.model.counterpoint import CounterpointWorld, contrapuntal_symmetries, search
from contrapunctus.model.oracle import oracle_successors, oracle_verdict, oracle_verdicts
from contrapunctus.theory.dichotomy import Dichotomy
from contrapunctus.theory.reduction import ReducedProgression


class TestOracle:
    """Tests for the brute-force oracle."""

    def test_dissonance_rejected(self) -> None:
        with pytest.raises(DissonanceError):
            oracle_successors(6)

    @pytest.mark.parametrize("variant", list(Variant))
    @pytest.mark.parametrize("k", [0, 3, 4, 7, 8, 9])
    def test_matches_closed_form(self, variant: Variant, k: int) -> None:
        """Same maximizers and same successor union as the closed-form search."""
        symmetries, successors = oracle_successors(k, variant)
        assert symmetries == contrapuntal_symmetries(k, variant)
        assert {x.pair for x in successors} == set(search(k, variant).successors)

    @pytest.mark.parametrize("k", [0, 7])
    def test_fiberwise_matches_closed_form(self, k: int) -> None:
        variant, strategy = Variant.LOCAL_GLOBAL_IDEMPOTENT, LocalityStrategy.FIBERWISE
        symmetries, _ = oracle_successors(k, variant, strategy)
        assert symmetries == contrapuntal_symmetries(k, variant, strategy=strategy)

    @pytest.mark.parametrize("variant", list(Variant))
    def test_other_modulus(self, variant: Variant) -> None:
        """Closed forms and brute force agree in Z6 as well."""
        world = CounterpointWorld(6, Dichotomy.from_lists([0, 1, 3], [2, 4, 5], 6), None)
        for k in world.consonances:
            symmetries, _ = oracle_successors(k, variant, world=world)
            assert symmetries == contrapuntal_symmetries(k, variant, world)

    def test_oracle_verdict(self) -> None:
        assert oracle_verdict(ReducedProgression(7, 2, 7)) is VerdictValue.FORBIDDEN
        assert oracle_verdict(ReducedProgression(4, 0, 4)) is VerdictValue.NON_POLARIZED


@pytest.mark.slow
class TestVariations:
    """Tests relating the second, third and fourth variations."""

    @pytest.mark.parametrize(
        "variant", [Variant.LOCAL_GLOBAL_NILPOTENT, Variant.LOCAL_GLOBAL_IDEMPOTENT]
    )
    def test_fiberwise_equals_global(self, variant: Variant) -> None:
        """Weighting successors by their fiber gives the global verdicts."""
        fiberwise = oracle_verdicts(variant, LocalityStrategy.FIBERWISE)
        assert fiberwise == oracle_verdicts(variant, LocalityStrategy.GLOBAL)

    def test_rings_differ_on_one_progression(self) -> None:
        """The local-global variants only disagree on (0t, 6 + 0t)."""
        nil = oracle_verdicts(Variant.LOCAL_GLOBAL_NILPOTENT)
        idem = oracle_verdicts(Variant.LOCAL_GLOBAL_IDEMPOTENT)
        assert sorted(k for k in nil if nil[k] is not idem[k]) == [(0, 6, 0)]
        assert nil[(0, 6, 0)] is VerdictValue.FORBIDDEN
        assert idem[(0, 6, 0)] is VerdictValue.NON_POLARIZED
