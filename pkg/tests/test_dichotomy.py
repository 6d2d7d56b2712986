"""Tests for dichotomies, polarities and the polarization test."""

import pytest

from contrapunctus.algebra.dual import DualNumber, DualSymmetry
from contrapunctus.enums import Flavor
from contrapunctus.errors import DichotomyError, DissonanceError, FlavorMismatchError
from contrapunctus.theory.dichotomy import (
    STANDARD,
    Dichotomy,
    deformed_condition,
    fiber,
    is_polarized,
    local_polarity,
    local_polarity_candidates,
    polarity_search,
    verify_local_uniqueness,
)

NIL, IDEM = Flavor.NILPOTENT, Flavor.IDEMPOTENT


class TestDichotomy:
    """Tests for Dichotomy validation."""

    def test_standard(self) -> None:
        """The standard partition of Z12."""
        assert STANDARD.sorted_consonances == [0, 3, 4, 7, 8, 9]
        assert STANDARD.is_consonant(15)
        assert not STANDARD.is_consonant(6)
        assert len(STANDARD.consonant_lift) == 72

    def test_overlap_rejected(self) -> None:
        """K and D must be disjoint."""
        with pytest.raises(DichotomyError, match="disjoint"):
            Dichotomy.from_lists([0, 1], [1, 2], 4)

    def test_cover_rejected(self) -> None:
        """K and D must cover Zn."""
        with pytest.raises(DichotomyError, match="cover"):
            Dichotomy.from_lists([0], [1], 4)

    def test_unequal_sizes_rejected(self) -> None:
        """K and D must have the same size."""
        with pytest.raises(DichotomyError, match="equal size"):
            Dichotomy.from_lists([0, 1, 2], [3], 4)

    def test_out_of_range_rejected(self) -> None:
        """Residues must lie in [0, n)."""
        with pytest.raises(DichotomyError, match="out of range"):
            Dichotomy.from_lists([0, 5], [2, 3], 4)

    def test_bad_modulus_rejected(self) -> None:
        """A modulus below 2 is a dichotomy error."""
        with pytest.raises(DichotomyError):
            Dichotomy.from_lists([], [], 1)


class TestPolarity:
    """Tests for polarity search."""

    def test_standard_polarity_is_unique(self) -> None:
        """e^2 5 is the only symmetry swapping K and D."""
        assert [str(p) for p in polarity_search(STANDARD)] == ["e^2*5"]
        assert STANDARD.is_strong
        assert str(STANDARD.polarity) == "e^2*5"

    def test_non_strong_dichotomy(self) -> None:
        """{0, 1} in Z4 has two polarities."""
        dich = Dichotomy.from_lists([0, 1], [2, 3], 4)
        assert len(polarity_search(dich)) == 2
        assert not dich.is_strong
        with pytest.raises(DichotomyError, match="not strong"):
            _ = dich.polarity

    @pytest.mark.parametrize("flavor", [NIL, IDEM])
    @pytest.mark.parametrize("z", range(12))
    def test_local_polarity_closed_form(self, flavor: Flavor, z: int) -> None:
        """p^z = e^{8z + 2t} 5 in both rings."""
        assert local_polarity(z, flavor) == DualSymmetry.of(8 * z, 2, 5, 0, flavor)

    def test_fiber(self) -> None:
        """The fiber over z is z + Zn t."""
        assert fiber(14) == frozenset((2, y) for y in range(12))

    @pytest.mark.slow
    @pytest.mark.parametrize("flavor", [NIL, IDEM])
    @pytest.mark.parametrize("z", [0, 5])
    def test_local_polarity_unique(self, flavor: Flavor, z: int) -> None:
        """Only p^z keeps the fiber at z and swaps K[t] and D[t]."""
        assert local_polarity_candidates(z, flavor) == [local_polarity(z, flavor)]
        assert verify_local_uniqueness(z, flavor)


class TestPolarization:
    """Tests for is_polarized."""

    @pytest.mark.parametrize("flavor", [NIL, IDEM])
    @pytest.mark.parametrize("k", [0, 3, 4, 7, 8, 9])
    def test_repetition_is_not_polarized(self, flavor: Flavor, k: int) -> None:
        """A progression to itself cannot be split between g(D[t]) and g(K[t])."""
        x = DualNumber.of(0, k, flavor)
        assert not is_polarized(x, x).polarized

    def test_tritone_unison_depends_on_flavor(self) -> None:
        """(0t, 6 + 0t) is polarized only in the nilpotent ring."""
        nil = is_polarized(DualNumber.of(0, 0, NIL), DualNumber.of(6, 0, NIL))
        idem = is_polarized(DualNumber.of(0, 0, IDEM), DualNumber.of(6, 0, IDEM))
        assert nil.polarized
        assert not idem.polarized

    @pytest.mark.parametrize("flavor", [NIL, IDEM])
    def test_closed_characterization(self, flavor: Flavor) -> None:
        """Over all of K x Z12 x K, only repetitions fail to polarize, plus the
        tritone parallelisms in the idempotent ring."""
        consonances = STANDARD.sorted_consonances
        for k in consonances:
            for c_next in range(12):
                for k_next in consonances:
                    repetition = c_next == 0 and k == k_next
                    tritone_parallel = c_next == 6 and k == k_next
                    expected = not repetition
                    if flavor is IDEM:
                        expected = expected and not tritone_parallel
                    result = is_polarized(
                        DualNumber.of(0, k, flavor), DualNumber.of(c_next, k_next, flavor)
                    )
                    assert result.polarized is expected, (k, c_next, k_next)
                    assert (result.witness is not None) is expected

    def test_witness(self) -> None:
        """The witness g has xi in g(D[t]) and eta in g(K[t])."""
        xi, eta = DualNumber.of(0, 7), DualNumber.of(2, 9)
        result = is_polarized(xi, eta)
        assert result.polarized and result.witness is not None
        g = result.witness
        assert eta.pair in g.image(STANDARD.consonant_lift)
        assert xi.pair in g.image(STANDARD.dissonant_lift)

    def test_dissonance_rejected(self) -> None:
        """Both members must be consonant."""
        with pytest.raises(DissonanceError):
            is_polarized(DualNumber.of(0, 1), DualNumber.of(0, 0))

    def test_flavor_mismatch(self) -> None:
        """Both members must share a ring."""
        with pytest.raises(FlavorMismatchError):
            is_polarized(DualNumber.of(0, 0, NIL), DualNumber.of(2, 3, IDEM))


class TestDeformedCondition:
    """Tests for deformed_condition."""

    @pytest.mark.parametrize("flavor", [NIL, IDEM])
    def test_identity_satisfies_every_fiber(self, flavor: Flavor) -> None:
        """p^z already swaps K[t] and D[t]."""
        identity = DualSymmetry.identity(flavor)
        assert all(deformed_condition(identity, z) for z in range(12))

    def test_translation_breaks_condition(self) -> None:
        """e^{t} moves K[t] to K + 1, which p^0 does not send to D + 1."""
        g = DualSymmetry.of(0, 1, 1, 0)
        # 5(K + 1) + 2 = D + 5, not D + 1
        assert not deformed_condition(g, 0)
