"""Contrapuntal symmetries, admitted successors and verdicts.

For a consonance k t the search ranges over the fiber group H of symmetries
h = e^{vt}(c + dt) and keeps those that

1. put k t in h(D[t]): v in k - c'D, with c' = c (nilpotent) or c + d (idempotent);
2. satisfy the deformed-partition condition at the fiber 0, which for a polarity
   e^a b reads b*v + a = c'*a + v (the local-global variants add b*d = d, i.e. the
   condition at every fiber);
3. maximize |h(K[t]) ∩ K[t]|.

Condition 2 is used in closed form only when local uniqueness holds for the
world's dichotomy; otherwise the deformed-partition condition is decided by set
comparison. ``model.oracle`` recomputes everything without the formulas.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from typing import Any

from contrapunctus.algebra.dual import (
    DualNumber,
    DualSymmetry,
    Pair,
    enumerate_dual_symmetries,
)
from contrapunctus.algebra.ring import AffineSymmetry, check_modulus
from contrapunctus.enums import Flavor, LocalityStrategy, Variant, VerdictValue
from contrapunctus.errors import (
    ConfigError,
    ConsistencyError,
    DichotomyError,
    DissonanceError,
    FlavorMismatchError,
    InvalidSymmetryError,
    ModulusError,
)
from contrapunctus.theory.dichotomy import (
    STANDARD,
    Dichotomy,
    deformed_condition,
    is_polarized,
    verify_local_uniqueness,
)
from contrapunctus.theory.reduction import ReducedProgression, enumerate_reduced
from contrapunctus.theory.strict import DIATONIC, occurs_in_scale
from contrapunctus.utils.parallel import ParallelSearchExecutor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CounterpointWorld:
    """Modulus, strong dichotomy and optional scale the model runs in."""

    modulus: int = 12
    dichotomy: Dichotomy = STANDARD
    scale: frozenset[int] | None = DIATONIC

    def __post_init__(self) -> None:
        check_modulus(self.modulus)
        if self.dichotomy.modulus != self.modulus:
            raise DichotomyError(
                f"dichotomy lives in Z{self.dichotomy.modulus}, world in Z{self.modulus}"
            )
        if self.scale is not None:
            bad = sorted(x for x in self.scale if not 0 <= x < self.modulus)
            if bad:
                raise ConfigError(f"scale residues out of range [0, {self.modulus}): {bad}")
        # raises DichotomyError for a dichotomy without a unique polarity
        _ = self.dichotomy.polarity

    @classmethod
    def standard(cls) -> CounterpointWorld:
        return cls()

    @property
    def is_standard(self) -> bool:
        """Z12 with the standard dichotomy and the diatonic scale."""
        return self.modulus == 12 and self.dichotomy == STANDARD and self.scale == DIATONIC

    @property
    def polarity(self) -> AffineSymmetry:
        return self.dichotomy.polarity

    @cached_property
    def consonances(self) -> tuple[int, ...]:
        return tuple(self.dichotomy.sorted_consonances)

    def closed_form_valid(self, flavor: Flavor) -> bool:
        """Whether local uniqueness holds, so condition 2 is a linear identity."""
        return _local_uniqueness(self, flavor)

    def progressions(self, flavor: Flavor = Flavor.NILPOTENT) -> list[ReducedProgression]:
        """Progressions (k t, c' + k' t) the verdict tables run over."""
        if self.is_standard:
            return enumerate_reduced(flavor)
        n = self.modulus
        return [
            ReducedProgression(k, c_next, k_next, flavor, n)
            for k in self.consonances
            for c_next in range(n)
            for k_next in self.consonances
            if self.scale is None
            or occurs_in_scale((0, k, c_next, c_next + k_next), self.scale, n)
        ]


STANDARD_WORLD = CounterpointWorld()


@lru_cache(maxsize=None)
def _local_uniqueness(world: CounterpointWorld, flavor: Flavor) -> bool:
    return verify_local_uniqueness(0, flavor, world.dichotomy)


def effective_scale(h: DualSymmetry) -> int:
    """The factor acting on intervals: c (nilpotent) or c + d (idempotent)."""
    _, _, c, d = h.coefficients
    if h.flavor is Flavor.IDEMPOTENT:
        return (c + d) % h.modulus
    return c


def alternation_condition(h: DualSymmetry, k: int, world: CounterpointWorld) -> bool:
    """Condition 1: v lies in k - c'D."""
    n = world.modulus
    _, v, _, _ = h.coefficients
    ce = effective_scale(h)
    return any((k - ce * y - v) % n == 0 for y in world.dichotomy.dissonances)


def fiber_condition(h: DualSymmetry, z: int, world: CounterpointWorld) -> bool:
    """The deformed-partition condition for h at the fiber z.

    Closed form: b*v + a = c'*a + v + (1 - b) * d * c^-1 * z for the polarity e^a b.
    """
    if not world.closed_form_valid(h.flavor):
        return deformed_condition(h, z, world.dichotomy)
    n = world.modulus
    a, b = world.polarity.translate.value, world.polarity.scale.value
    _, v, c, d = h.coefficients
    ce = effective_scale(h)
    w = pow(c, -1, n) * z
    return (b * v + a - ce * a - v - (1 - b) * d * w) % n == 0


def global_condition(h: DualSymmetry, world: CounterpointWorld) -> bool:
    """The deformed-partition condition at every fiber."""
    if not world.closed_form_valid(h.flavor):
        return all(deformed_condition(h, z, world.dichotomy) for z in range(world.modulus))
    b = world.polarity.scale.value
    d = h.coefficients[3]
    return fiber_condition(h, 0, world) and (b * d - d) % world.modulus == 0


def cardinality_formula(h: DualSymmetry, world: CounterpointWorld = STANDARD_WORLD) -> int:
    """|h(K[t]) ∩ K[t]| as rho * sum_i |K_i| |K_{(c i + v) mod rho}|, rho = gcd(d, n).

    The same expression holds for both flavors since c + d = c mod rho.
    """
    n = world.modulus
    _, v, c, d = h.coefficients
    rho = gcd(d, n)
    classes = Counter(k % rho for k in world.consonances)
    return rho * sum(classes[i] * classes[(c * i + v) % rho] for i in range(rho))


def _require_fiber_group(h: DualSymmetry) -> None:
    if not h.in_fiber_group:
        raise InvalidSymmetryError(
            f"successor sets are defined for symmetries e^{{vt}}(c+dt) with u = 0; got {h}"
        )


def successor_pairs(h: DualSymmetry, world: CounterpointWorld = STANDARD_WORLD) -> frozenset[Pair]:
    """Disjoint union over r of c r + ((c'K + v + d r) ∩ K) t, as pairs.

    Raises:
        InvalidSymmetryError: If h is not in H.
        ConsistencyError: If the union differs from the direct image h(K[t]) ∩ K[t].
    """
    _require_fiber_group(h)
    return _successor_pairs(h, world)


@lru_cache(maxsize=None)
def _successor_pairs(h: DualSymmetry, world: CounterpointWorld) -> frozenset[Pair]:
    n = world.modulus
    _, v, c, d = h.coefficients
    ce = effective_scale(h)
    cons = world.dichotomy.consonances
    pairs = frozenset(
        ((c * r) % n, k2)
        for r in range(n)
        for k2 in {(ce * k + v + d * r) % n for k in cons} & cons
    )
    direct = h.image(world.dichotomy.consonant_lift) & world.dichotomy.consonant_lift
    if pairs != direct:
        raise ConsistencyError(
            f"successor formula for {h} gives {len(pairs)} elements, direct image {len(direct)}"
        )
    return pairs


def successor_set(
    h: DualSymmetry, world: CounterpointWorld = STANDARD_WORLD
) -> frozenset[DualNumber]:
    """h(K[t]) ∩ K[t] as dual numbers."""
    n = world.modulus
    return frozenset(DualNumber.from_pair(p, h.flavor, n) for p in successor_pairs(h, world))


@dataclass(frozen=True)
class SymmetrySearch:
    """Contrapuntal symmetries of k t and the successors they admit."""

    k: int
    variant: Variant
    strategy: LocalityStrategy
    symmetries: tuple[DualSymmetry, ...]
    score: int
    candidates: int
    successors: frozenset[Pair] = field(default_factory=frozenset)

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "variant": self.variant.value,
            "strategy": self.strategy.value,
            "symmetries": [str(h) for h in self.symmetries],
            "score": self.score,
            "candidates": self.candidates,
            "successors": [f"{b}+{y}" for b, y in sorted(self.successors)],
        }


def _check_consonance(k: int, world: CounterpointWorld) -> int:
    if not world.dichotomy.is_consonant(k):
        raise DissonanceError(f"{k % world.modulus} is not a consonance")
    return k % world.modulus


def _score(h: DualSymmetry, world: CounterpointWorld, strategy: LocalityStrategy) -> int:
    if strategy is LocalityStrategy.FIBERWISE:
        n = world.modulus
        good_fibers = {z for z in range(n) if fiber_condition(h, z, world)}
        return sum(1 for z, _ in successor_pairs(h, world) if z in good_fibers)
    return cardinality_formula(h, world)


def _admissible(
    h: DualSymmetry, k: int, world: CounterpointWorld, strategy: LocalityStrategy
) -> bool:
    if not alternation_condition(h, k, world):
        return False
    if strategy is LocalityStrategy.GLOBAL:
        return global_condition(h, world)
    return fiber_condition(h, 0, world)


@lru_cache(maxsize=None)
def _search(
    k: int, variant: Variant, world: CounterpointWorld, strategy: LocalityStrategy
) -> SymmetrySearch:
    best: list[DualSymmetry] = []
    best_score = -1
    candidates = 0
    for h in enumerate_dual_symmetries(world.modulus, variant.flavor, zero_u=True):
        if not _admissible(h, k, world, strategy):
            continue
        candidates += 1
        score = _score(h, world, strategy)
        if score > best_score:
            best, best_score = [h], score
        elif score == best_score:
            best.append(h)

    for h in best:
        size = len(successor_pairs(h, world))
        if strategy is not LocalityStrategy.FIBERWISE and size != best_score:
            raise ConsistencyError(
                f"cardinality formula gives {best_score} for {h}, successor set has {size}"
            )
    successors = frozenset[Pair]().union(*(successor_pairs(h, world) for h in best))
    logger.debug(
        f"k={k} {variant.value}/{strategy.value}: {candidates} candidates, "
        f"{len(best)} maximizers at {best_score}, {len(successors)} successors"
    )
    return SymmetrySearch(
        k, variant, strategy, tuple(best), best_score, candidates, successors
    )


def search(
    k: int,
    variant: Variant = Variant.CLASSICAL,
    world: CounterpointWorld = STANDARD_WORLD,
    strategy: LocalityStrategy | None = None,
) -> SymmetrySearch:
    """Run the contrapuntal-symmetry search for the consonance k t.

    Args:
        k: Interval, must be a consonance.
        variant: Model variant; fixes the ring flavor and default locality.
        world: Modulus, dichotomy and scale.
        strategy: Overrides the variant's locality strategy.

    Returns:
        All maximizers (ties kept) and the union of their successor sets.

    Raises:
        DissonanceError: If k is a dissonance.
    """
    k = _check_consonance(k, world)
    return _search(k, variant, world, strategy or variant.locality)


def contrapuntal_symmetries(
    k: int,
    variant: Variant = Variant.CLASSICAL,
    world: CounterpointWorld = STANDARD_WORLD,
    strategy: LocalityStrategy | None = None,
) -> list[DualSymmetry]:
    """Every contrapuntal symmetry of k t in H, ordered by (v, c, d)."""
    return list(search(k, variant, world, strategy).symmetries)


def admitted_successors(
    xi: DualNumber,
    variant: Variant = Variant.CLASSICAL,
    world: CounterpointWorld = STANDARD_WORLD,
    strategy: LocalityStrategy | None = None,
) -> frozenset[DualNumber]:
    """e^z applied to the successors of k t, for xi = z + k t.

    Raises:
        DissonanceError: If xi is not a contrapuntal consonance.
        FlavorMismatchError: If xi is not in the variant's ring.
        ModulusError: If xi and the world have different moduli.
    """
    if xi.flavor is not variant.flavor:
        raise FlavorMismatchError(
            f"{variant.value} works over the {variant.flavor.value} ring, "
            f"got a {xi.flavor.value} interval"
        )
    n = world.modulus
    if xi.modulus != n:
        raise ModulusError(f"modulus mismatch: Z{xi.modulus} and Z{n}")
    z, k = xi.pair
    result = search(k, variant, world, strategy)
    return frozenset(
        DualNumber.of(b + z, y, variant.flavor, n) for b, y in result.successors
    )


@dataclass(frozen=True)
class Verdict:
    """The model's decision on a progression."""

    value: VerdictValue
    witnesses: tuple[DualSymmetry, ...] = ()

    def __post_init__(self) -> None:
        if self.value is VerdictValue.ALLOWED and not self.witnesses:
            raise ValueError("an allowed progression needs at least one witness")


def verdict(
    prog: ReducedProgression,
    variant: Variant = Variant.CLASSICAL,
    world: CounterpointWorld = STANDARD_WORLD,
    strategy: LocalityStrategy | None = None,
) -> Verdict:
    """Allowed, forbidden or non-polarized.

    Raises:
        DissonanceError: If either member of the progression is dissonant.
    """
    prog = prog.with_flavor(variant.flavor)
    for k in (prog.k, prog.k_next):
        _check_consonance(k, world)
    if not is_polarized(prog.first, prog.second, world.dichotomy).polarized:
        return Verdict(VerdictValue.NON_POLARIZED)
    result = search(prog.k, variant, world, strategy)
    target = (prog.c_next, prog.k_next)
    witnesses = tuple(h for h in result.symmetries if target in successor_pairs(h, world))
    if witnesses:
        return Verdict(VerdictValue.ALLOWED, witnesses)
    return Verdict(VerdictValue.FORBIDDEN)


def all_verdicts(
    variant: Variant = Variant.CLASSICAL,
    world: CounterpointWorld = STANDARD_WORLD,
    strategy: LocalityStrategy | None = None,
    jobs: int = 1,
) -> list[tuple[ReducedProgression, Verdict]]:
    """Verdicts on every progression of the world, in (k, c', k') order.

    The per-k searches are independent and run on up to ``jobs`` workers.
    """
    searches(variant, world, strategy, jobs)
    rows = [(p, verdict(p, variant, world, strategy)) for p in world.progressions(variant.flavor)]
    logger.info(f"Computed {len(rows)} verdicts for {variant.value}")
    return rows


def searches(
    variant: Variant = Variant.CLASSICAL,
    world: CounterpointWorld = STANDARD_WORLD,
    strategy: LocalityStrategy | None = None,
    jobs: int = 1,
) -> list[SymmetrySearch]:
    """The search for every consonance, in ascending k."""
    with ParallelSearchExecutor(jobs) as executor:
        return executor.map(lambda k: search(k, variant, world, strategy), world.consonances)


def summarize_verdicts(verdicts: Iterable[Verdict]) -> dict[str, int]:
    """Verdict totals in allowed/forbidden/non-polarized order."""
    counts = Counter(v.value for v in verdicts)
    return {value.value: counts.get(value, 0) for value in VerdictValue}


def verdict_row(prog: ReducedProgression, result: Verdict) -> dict[str, Any]:
    """Report row with a fixed key order."""
    return {
        "k": prog.k,
        "c_next": prog.c_next,
        "k_next": prog.k_next,
        "verdict": result.value.value,
        "witnesses": ";".join(str(h) for h in result.witnesses),
    }


def search_row(result: SymmetrySearch) -> dict[str, Any]:
    """Flat report row for one consonance."""
    return {
        "k": result.k,
        "variant": result.variant.value,
        "strategy": result.strategy.value,
        "symmetries": ";".join(str(h) for h in result.symmetries),
        "score": result.score,
        "successor_count": len(result.successors),
        "successors": ";".join(f"{b}+{y}" for b, y in sorted(result.successors)),
    }
