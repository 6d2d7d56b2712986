"""The invariant suite behind ``contrapunctus verify``.

Every check recomputes a reference count or an equivalence between two
independent computations. Checks are independent and may run in parallel.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

from contrapunctus.algebra.dual import DualSymmetry, enumerate_dual_symmetries
from contrapunctus.enums import Flavor, LocalityStrategy, Semantics, Variant, VerdictValue
from contrapunctus.model.compare import match_metrics, rule_recovery, trivial_metrics
from contrapunctus.model.counterpoint import (
    STANDARD_WORLD,
    all_verdicts,
    cardinality_formula,
    contrapuntal_symmetries,
    fiber_condition,
    successor_pairs,
    summarize_verdicts,
)
from contrapunctus.model.oracle import oracle_successors, oracle_verdicts
from contrapunctus.theory.dichotomy import (
    STANDARD,
    deformed_condition,
    is_polarized,
    local_polarity,
    local_polarity_candidates,
    polarity_search,
)
from contrapunctus.theory.reduction import (
    classify_all,
    derived_rule_crosscheck,
    enumerate_reduced,
    summarize_reduced,
)
from contrapunctus.theory.strict import enumerate_strict_representatives, summarize_strict
from contrapunctus.utils.parallel import ParallelSearchExecutor

logger = logging.getLogger(__name__)

EXPECTED_STRICT = {
    "total": 1057,
    "categories": {"inadmissible": 671, "bad": 64, "good": 322},
    "kinds": {
        "parallel fifths": 22,
        "parallel eights and unisons": 49,
        "hidden fifths": 88,
        "hidden eights and unisons": 128,
        "tritones": 170,
        "too large skips": 434,
        "imp. cons. by sim. skips": 38,
        "hidden tritones": 26,
    },
}

EXPECTED_REDUCED = {
    "total": 287,
    "categories": {"inadmissible": 74, "bad": 23, "good": 190},
    "kinds": {
        "parallel-5th": 10,
        "parallel-unison": 9,
        "hidden-5th-from-6th": 13,
        "tritone": 45,
        "proj-imp-cons": 1,
        "hidden-tritone": 22,
    },
    "refined": {"good-good": 4, "good-bad": 16, "ambiguous": 170},
    "repetitions": 6,
}

EXPECTED_VERDICTS = {
    Variant.CLASSICAL: {"allowed": 250, "forbidden": 31, "non-polarized": 6},
    Variant.IDEMPOTENT: {"allowed": 240, "forbidden": 40, "non-polarized": 7},
    Variant.LOCAL_GLOBAL_NILPOTENT: {"allowed": 235, "forbidden": 46, "non-polarized": 6},
    Variant.LOCAL_GLOBAL_IDEMPOTENT: {"allowed": 235, "forbidden": 45, "non-polarized": 7},
}

EXPECTED_METRICS: dict[tuple[Variant, Semantics], tuple[int, int]] = {
    (Variant.CLASSICAL, Semantics.ORIGINAL): (203, 61),
    (Variant.CLASSICAL, Semantics.STARRED): (222, 42),
    (Variant.CLASSICAL, Semantics.REFINED): (25, 55),
    (Variant.IDEMPOTENT, Semantics.ORIGINAL): (198, 65),
    (Variant.IDEMPOTENT, Semantics.REFINED): (27, 52),
    (Variant.LOCAL_GLOBAL_NILPOTENT, Semantics.ORIGINAL): (196, 70),
    (Variant.LOCAL_GLOBAL_NILPOTENT, Semantics.REFINED): (29, 53),
}


@dataclass
class CheckResult:
    """Outcome of one invariant check."""

    name: str
    passed: bool
    detail: str = ""


Check = Callable[[], tuple[bool, str]]


def _compare(actual: object, expected: object) -> tuple[bool, str]:
    if actual == expected:
        return True, "ok"
    return False, f"expected {expected}, got {actual}"


def check_strict_table() -> tuple[bool, str]:
    labels = [label for _, label in enumerate_strict_representatives()]
    return _compare(summarize_strict(labels).to_dict(), EXPECTED_STRICT)


def check_reduced_table() -> tuple[bool, str]:
    return _compare(summarize_reduced(classify_all()).to_dict(), EXPECTED_REDUCED)


def check_reduced_crosscheck() -> tuple[bool, str]:
    report = derived_rule_crosscheck()
    expected_generality = {
        "parallel-5th": True,
        "parallel-unison": False,
        "hidden-5th": False,
        "tritone": True,
    }
    if not report.ok:
        return False, f"{len(report.disagreements)} disagreements"
    return _compare(report.general_kinds, expected_generality)


def check_polarity() -> tuple[bool, str]:
    found = [str(p) for p in polarity_search(STANDARD)]
    return _compare(found, ["e^2*5"])


def check_local_polarity() -> tuple[bool, str]:
    for flavor in Flavor:
        for z in range(12):
            candidates = local_polarity_candidates(z, flavor)
            expected = DualSymmetry.of(8 * z, 2, 5, 0, flavor)
            if candidates != [expected] or local_polarity(z, flavor) != expected:
                return False, f"z={z} {flavor.value}: {[str(c) for c in candidates]}"
    return True, "24 fibers"


def check_polarization() -> tuple[bool, str]:
    counts = {}
    for flavor in Flavor:
        counts[flavor.value] = sum(
            1 for p in enumerate_reduced(flavor) if not is_polarized(p.first, p.second).polarized
        )
    return _compare(counts, {"nilpotent": 6, "idempotent": 7})


def check_successor_formula() -> tuple[bool, str]:
    checked = 0
    for flavor in Flavor:
        for h in enumerate_dual_symmetries(12, flavor, zero_u=True):
            # successor_pairs raises ConsistencyError if the formula misses the direct image
            size = len(successor_pairs(h))
            if cardinality_formula(h) != size:
                return False, f"cardinality formula disagrees for {h}"
            checked += 1
    return _compare(checked, 576 + 192)


def check_condition_two() -> tuple[bool, str]:
    for flavor in Flavor:
        for h in enumerate_dual_symmetries(12, flavor, zero_u=True):
            if fiber_condition(h, 0, STANDARD_WORLD) != deformed_condition(h, 0):
                return False, f"closed form disagrees with set comparison for {h}"
    return True, "768 symmetries"


def check_oracle() -> tuple[bool, str]:
    for variant in Variant:
        for k in STANDARD_WORLD.consonances:
            hichert = contrapuntal_symmetries(k, variant)
            oracle, _ = oracle_successors(k, variant)
            if hichert != oracle:
                return False, f"{variant.value} k={k}: {len(hichert)} vs {len(oracle)}"
    return True, "4 variants x 6 consonances"


def check_verdicts() -> tuple[bool, str]:
    actual = {
        variant: summarize_verdicts(v for _, v in all_verdicts(variant)) for variant in Variant
    }
    return _compare(actual, EXPECTED_VERDICTS)


def check_variations() -> tuple[bool, str]:
    for variant in (Variant.LOCAL_GLOBAL_NILPOTENT, Variant.LOCAL_GLOBAL_IDEMPOTENT):
        fiberwise = oracle_verdicts(variant, LocalityStrategy.FIBERWISE)
        global_ = oracle_verdicts(variant, LocalityStrategy.GLOBAL)
        if fiberwise != global_:
            diff = [k for k in fiberwise if fiberwise[k] is not global_[k]]
            return False, f"{variant.value}: second and third variations differ on {diff}"
    nil = oracle_verdicts(Variant.LOCAL_GLOBAL_NILPOTENT)
    idem = oracle_verdicts(Variant.LOCAL_GLOBAL_IDEMPOTENT)
    diff = sorted(k for k in nil if nil[k] is not idem[k])
    if diff != [(0, 6, 0)]:
        return False, f"nilpotent and idempotent differ on {diff}"
    if (nil[(0, 6, 0)], idem[(0, 6, 0)]) != (VerdictValue.FORBIDDEN, VerdictValue.NON_POLARIZED):
        return False, "parallel unison by tritone skip has the wrong verdicts"
    return True, "ok"


def check_metrics() -> tuple[bool, str]:
    actual = {
        key: tuple(match_metrics(*key).to_dict().values()) for key in EXPECTED_METRICS
    }
    if actual != EXPECTED_METRICS:
        return False, f"got {actual}"
    return _compare(trivial_metrics().to_dict(), {"matches": 101, "mismatches": 0})


def check_rule_recovery() -> tuple[bool, str]:
    classical = rule_recovery(Variant.CLASSICAL)
    idempotent = rule_recovery(Variant.IDEMPOTENT)
    if 7 not in classical.parallel_prohibited or 0 in classical.parallel_prohibited:
        return False, f"classical parallel prohibitions {classical.parallel_prohibited}"
    if classical.distinguished_skips != {6: VerdictValue.FORBIDDEN.value}:
        return False, f"classical skips {classical.distinguished_skips}"
    if idempotent.distinguished_skips.get(6) != VerdictValue.NON_POLARIZED.value:
        return False, f"idempotent skips {idempotent.distinguished_skips}"
    return True, "ok"


CHECKS: dict[str, Check] = {
    "strict-table": check_strict_table,
    "reduced-table": check_reduced_table,
    "reduced-crosscheck": check_reduced_crosscheck,
    "polarity-uniqueness": check_polarity,
    "local-polarity": check_local_polarity,
    "polarization": check_polarization,
    "successor-formula": check_successor_formula,
    "condition-two": check_condition_two,
    "oracle-equivalence": check_oracle,
    "verdict-totals": check_verdicts,
    "variation-equivalence": check_variations,
    "match-metrics": check_metrics,
    "rule-recovery": check_rule_recovery,
}


def run_checks(jobs: int = 1, names: list[str] | None = None) -> list[CheckResult]:
    """Run the named checks (all by default), in registry order.

    A check that raises is reported as failed with the exception text.
    """
    selected = [name for name in CHECKS if names is None or name in names]
    with ParallelSearchExecutor(jobs) as executor:
        outcomes = executor.run_all(lambda name: CHECKS[name](), selected)
    results = []
    for outcome in outcomes:
        if outcome.value is None:
            results.append(CheckResult(outcome.task, False, outcome.error or "failed"))
        else:
            passed, detail = outcome.value
            results.append(CheckResult(outcome.task, passed, detail))
        logger.info(f"Check {outcome.task}: {'PASS' if results[-1].passed else 'FAIL'}")
    return results
