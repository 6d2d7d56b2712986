"""Brute-force recomputation of the contrapuntal search.

Nothing here uses the closed forms of ``model.counterpoint``: membership is
tested on direct images, the deformed-partition condition by comparing sets,
and the maximized quantity by counting the intersection itself.
"""

from __future__ import annotations

import logging
from functools import lru_cache

from contrapunctus.algebra.dual import DualNumber, DualSymmetry, Pair, enumerate_dual_symmetries
from contrapunctus.enums import LocalityStrategy, Variant, VerdictValue
from contrapunctus.errors import DissonanceError
from contrapunctus.model.counterpoint import STANDARD_WORLD, CounterpointWorld
from contrapunctus.theory.dichotomy import deformed_condition, is_polarized
from contrapunctus.theory.reduction import ReducedProgression

logger = logging.getLogger(__name__)


def _direct_successors(h: DualSymmetry, world: CounterpointWorld) -> frozenset[Pair]:
    lifted = world.dichotomy.consonant_lift
    return h.image(lifted) & lifted


def _passes(
    h: DualSymmetry, k: int, world: CounterpointWorld, strategy: LocalityStrategy
) -> bool:
    if (0, k) not in h.image(world.dichotomy.dissonant_lift):
        return False
    if strategy is LocalityStrategy.GLOBAL:
        return all(deformed_condition(h, z, world.dichotomy) for z in range(world.modulus))
    return deformed_condition(h, 0, world.dichotomy)


def _oracle_score(h: DualSymmetry, world: CounterpointWorld, strategy: LocalityStrategy) -> int:
    successors = _direct_successors(h, world)
    if strategy is LocalityStrategy.FIBERWISE:
        return sum(1 for z, _ in successors if deformed_condition(h, z, world.dichotomy))
    return len(successors)


@lru_cache(maxsize=None)
def _oracle(
    k: int, variant: Variant, world: CounterpointWorld, strategy: LocalityStrategy
) -> tuple[tuple[DualSymmetry, ...], frozenset[Pair]]:
    scored = [
        (h, _oracle_score(h, world, strategy))
        for h in enumerate_dual_symmetries(world.modulus, variant.flavor, zero_u=True)
        if _passes(h, k, world, strategy)
    ]
    if not scored:
        logger.warning(f"Oracle found no admissible symmetry for k={k} ({variant.value})")
        return (), frozenset()
    top = max(score for _, score in scored)
    best = tuple(h for h, score in scored if score == top)
    successors = frozenset[Pair]().union(*(_direct_successors(h, world) for h in best))
    logger.debug(f"Oracle k={k} {variant.value}/{strategy.value}: {len(best)} maximizers at {top}")
    return best, successors


def oracle_successors(
    k: int,
    variant: Variant = Variant.CLASSICAL,
    strategy: LocalityStrategy | None = None,
    world: CounterpointWorld = STANDARD_WORLD,
) -> tuple[list[DualSymmetry], frozenset[DualNumber]]:
    """Contrapuntal symmetries of k t and their successor union, by exhaustive search.

    Args:
        k: Consonant interval.
        variant: Model variant.
        strategy: Locality strategy; defaults to the variant's own.
        world: Modulus, dichotomy and scale.

    Returns:
        The maximizing symmetries in (v, c, d) order and the admitted successors.

    Raises:
        DissonanceError: If k is a dissonance.
    """
    if not world.dichotomy.is_consonant(k):
        raise DissonanceError(f"{k % world.modulus} is not a consonance")
    best, pairs = _oracle(k % world.modulus, variant, world, strategy or variant.locality)
    n = world.modulus
    return list(best), frozenset(DualNumber.from_pair(p, variant.flavor, n) for p in pairs)


def oracle_verdict(
    prog: ReducedProgression,
    variant: Variant = Variant.CLASSICAL,
    strategy: LocalityStrategy | None = None,
    world: CounterpointWorld = STANDARD_WORLD,
) -> VerdictValue:
    """Verdict value from the exhaustive search alone."""
    prog = prog.with_flavor(variant.flavor)
    if not is_polarized(prog.first, prog.second, world.dichotomy).polarized:
        return VerdictValue.NON_POLARIZED
    _, successors = oracle_successors(prog.k, variant, strategy, world)
    if prog.second in successors:
        return VerdictValue.ALLOWED
    return VerdictValue.FORBIDDEN


def oracle_verdicts(
    variant: Variant = Variant.CLASSICAL,
    strategy: LocalityStrategy | None = None,
    world: CounterpointWorld = STANDARD_WORLD,
) -> dict[tuple[int, int, int], VerdictValue]:
    """Oracle verdict of every progression of the world, keyed by (k, c', k')."""
    return {
        p.key: oracle_verdict(p, variant, strategy, world)
        for p in world.progressions(variant.flavor)
    }
