"""Consonance/dissonance dichotomies and their polarity symmetries.

A dichotomy {K, D} of Zn is *strong* when exactly one affine symmetry p maps K
onto D. For the standard dichotomy of Z12 that symmetry is e^2 5. Its lift to
Zn[t] gives, for every cantus firmus z, the local polarity
p^z = e^z o e^{a t} b o e^{-z}, which is the only fiber-preserving symmetry that
sends K[t] to D[t].

Closed characterizations (which progressions are polarized, which symmetries
satisfy the deformed-partition condition) are never assumed here: everything is
decided by exhaustive search, and the tests compare against the closed forms.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property, lru_cache

from contrapunctus.algebra.dual import (
    DualNumber,
    DualSymmetry,
    Pair,
    compose_dual,
    enumerate_dual_symmetries,
    invert_dual,
    lift,
)
from contrapunctus.algebra.ring import (
    DEFAULT_MODULUS,
    AffineSymmetry,
    check_modulus,
    enumerate_symmetries,
)
from contrapunctus.enums import Flavor
from contrapunctus.errors import (
    DichotomyError,
    DissonanceError,
    FlavorMismatchError,
    ModulusError,
)

logger = logging.getLogger(__name__)

STANDARD_CONSONANCES = (0, 3, 4, 7, 8, 9)
STANDARD_DISSONANCES = (1, 2, 5, 6, 10, 11)


@dataclass(frozen=True)
class Dichotomy:
    """A partition of Zn into consonances K and dissonances D."""

    consonances: frozenset[int]
    dissonances: frozenset[int]
    modulus: int = DEFAULT_MODULUS

    def __post_init__(self) -> None:
        n = self.modulus
        try:
            check_modulus(n)
        except ModulusError as e:
            raise DichotomyError(str(e)) from e
        out_of_range = sorted(r for r in self.consonances | self.dissonances if not 0 <= r < n)
        if out_of_range:
            raise DichotomyError(f"residues out of range [0, {n}): {out_of_range}")
        overlap = self.consonances & self.dissonances
        if overlap:
            raise DichotomyError(f"K and D must be disjoint; both contain {sorted(overlap)}")
        missing = set(range(n)) - self.consonances - self.dissonances
        if missing:
            raise DichotomyError(f"K and D must cover Z{n}; missing {sorted(missing)}")
        if len(self.consonances) != len(self.dissonances):
            raise DichotomyError(
                f"K and D must have equal size; got |K|={len(self.consonances)}, "
                f"|D|={len(self.dissonances)}"
            )

    @classmethod
    def from_lists(
        cls,
        consonances: Iterable[int],
        dissonances: Iterable[int],
        n: int = DEFAULT_MODULUS,
    ) -> Dichotomy:
        """Build a dichotomy from integer lists (not reduced mod n)."""
        return cls(frozenset(consonances), frozenset(dissonances), n)

    @classmethod
    def standard(cls) -> Dichotomy:
        """The consonance/dissonance partition of Z12."""
        return cls.from_lists(STANDARD_CONSONANCES, STANDARD_DISSONANCES)

    def is_consonant(self, k: int) -> bool:
        return k % self.modulus in self.consonances

    @property
    def sorted_consonances(self) -> list[int]:
        return sorted(self.consonances)

    @cached_property
    def consonant_lift(self) -> frozenset[Pair]:
        """K[t] as (base, delta) pairs."""
        return lift(self.consonances, self.modulus)

    @cached_property
    def dissonant_lift(self) -> frozenset[Pair]:
        """D[t] as (base, delta) pairs."""
        return lift(self.dissonances, self.modulus)

    @cached_property
    def polarities(self) -> tuple[AffineSymmetry, ...]:
        return tuple(polarity_search(self))

    @property
    def is_strong(self) -> bool:
        """Whether exactly one symmetry swaps K and D."""
        return len(self.polarities) == 1

    @property
    def polarity(self) -> AffineSymmetry:
        """The unique polarity symmetry.

        Raises:
            DichotomyError: If the dichotomy is not strong.
        """
        if not self.is_strong:
            raise DichotomyError(
                f"dichotomy K={sorted(self.consonances)} is not strong: "
                f"{len(self.polarities)} symmetries map K onto D"
            )
        return self.polarities[0]


STANDARD = Dichotomy.standard()


def polarity_search(dich: Dichotomy) -> list[AffineSymmetry]:
    """All symmetries p of Zn with p(K) = D, in (a, b) order."""
    found = [
        p
        for p in enumerate_symmetries(dich.modulus)
        if p.image(dich.consonances) == dich.dissonances
    ]
    logger.debug(f"Polarity search on K={sorted(dich.consonances)}: {len(found)} found")
    return found


def local_polarity(
    z: int,
    flavor: Flavor = Flavor.NILPOTENT,
    dich: Dichotomy = STANDARD,
) -> DualSymmetry:
    """The local polarity p^z = e^z o e^{a t} b o e^{-z} at cantus firmus z.

    For the standard dichotomy this is e^{8z + 2t} 5 in both flavors.

    Raises:
        DichotomyError: If the dichotomy has no unique polarity.
    """
    n = dich.modulus
    p = dich.polarity
    core = DualSymmetry.of(0, p.translate.value, p.scale.value, 0, flavor, n)
    shift = DualSymmetry.translation(z, flavor, n)
    return compose_dual(compose_dual(shift, core), invert_dual(shift))


def fiber(z: int, n: int = DEFAULT_MODULUS) -> frozenset[Pair]:
    """The fiber z + Zn t."""
    return frozenset((z % n, y) for y in range(n))


def local_polarity_candidates(
    z: int,
    flavor: Flavor = Flavor.NILPOTENT,
    dich: Dichotomy = STANDARD,
) -> list[DualSymmetry]:
    """Every symmetry of Zn[t] that keeps the fiber at z and sends K[t] to D[t]."""
    n = dich.modulus
    z = z % n
    found = []
    for g in enumerate_dual_symmetries(n, flavor):
        # a bijection sends the whole fiber to the fiber over c*z + u
        if g.apply_pair(z, 0)[0] != z:
            continue
        if g.image(dich.consonant_lift) == dich.dissonant_lift:
            found.append(g)
    return found


def verify_local_uniqueness(
    z: int,
    flavor: Flavor = Flavor.NILPOTENT,
    dich: Dichotomy = STANDARD,
) -> bool:
    """Whether exactly one fiber-preserving symmetry sends K[t] onto D[t]."""
    candidates = local_polarity_candidates(z, flavor, dich)
    logger.debug(f"Local uniqueness at z={z} ({flavor.value}): {len(candidates)} candidates")
    return len(candidates) == 1


@dataclass(frozen=True)
class Polarization:
    """Result of a polarization test."""

    polarized: bool
    witness: DualSymmetry | None = None


def is_polarized(xi: DualNumber, eta: DualNumber, dich: Dichotomy = STANDARD) -> Polarization:
    """Whether some g has xi in g(D[t]) and eta in g(K[t]).

    Raises:
        DissonanceError: If either interval is dissonant.
    """
    for x in (xi, eta):
        if not dich.is_consonant(x.delta.value):
            raise DissonanceError(f"{x.delta.value} is not a consonance")
    if xi.flavor is not eta.flavor:
        raise FlavorMismatchError("progression members must share a flavor")
    return _polarization(xi.pair, eta.pair, xi.flavor, dich)


@lru_cache(maxsize=4096)
def _polarization(xi: Pair, eta: Pair, flavor: Flavor, dich: Dichotomy) -> Polarization:
    # xi in g(D), eta in g(K)  <=>  f = g^-1 sends xi into D[t] and eta into K[t]
    for f in enumerate_dual_symmetries(dich.modulus, flavor):
        if f.apply_pair(*xi)[1] not in dich.dissonances:
            continue
        if f.apply_pair(*eta)[1] in dich.consonances:
            return Polarization(True, invert_dual(f))
    return Polarization(False)


def deformed_condition(g: DualSymmetry, z: int, dich: Dichotomy = STANDARD) -> bool:
    """Whether p^z sends g(K[t]) exactly onto g(D[t])."""
    return _deformed(g, z % dich.modulus, dich)


@lru_cache(maxsize=65536)
def _deformed(g: DualSymmetry, z: int, dich: Dichotomy) -> bool:
    p_z = local_polarity(z, g.flavor, dich)
    return p_z.image(g.image(dich.consonant_lift)) == g.image(dich.dissonant_lift)
