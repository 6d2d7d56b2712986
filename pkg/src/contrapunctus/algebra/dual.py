"""Dual-number rings Zn[t] and their affine symmetry groups.

Two product rules share one implementation, selected by ``Flavor``:

- nilpotent (t^2 = 0): (a + bt)(a' + b't) = aa' + (ab' + a'b)t
- idempotent (t^2 = t): (a + bt)(a' + b't) = aa' + (ab' + a'b + bb')t

A contrapuntal interval "cantus firmus z, interval k" is the element z + kt.
A symmetry e^{u+vt}(c+dt) acts as x -> (c + dt)x + (u + vt).

Exhaustive searches work on (base, delta) integer pairs; DualNumber and
DualSymmetry are the public, validated faces of the same arithmetic.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from contrapunctus.algebra.ring import DEFAULT_MODULUS, Residue, check_modulus, unit_values
from contrapunctus.enums import Flavor
from contrapunctus.errors import FlavorMismatchError, InvalidSymmetryError, ModulusError

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


def mul_pair(x: Pair, y: Pair, flavor: Flavor, n: int) -> Pair:
    """Product of two ring elements given as (base, delta) pairs."""
    a, b = x
    a2, b2 = y
    delta = a * b2 + a2 * b
    if flavor is Flavor.IDEMPOTENT:
        delta += b * b2
    return (a * a2) % n, delta % n


def is_unit_pair(c: int, d: int, flavor: Flavor, n: int) -> bool:
    """Whether c + dt is invertible in Zn[t]."""
    if gcd(c, n) != 1:
        return False
    if flavor is Flavor.IDEMPOTENT:
        return gcd((c + d) % n, n) == 1
    return True


def inverse_pair(c: int, d: int, flavor: Flavor, n: int) -> Pair:
    """Inverse of the unit c + dt."""
    if not is_unit_pair(c, d, flavor, n):
        raise InvalidSymmetryError(f"{c}+{d}{flavor.symbol} is not a unit mod {n}")
    c_inv = pow(c, -1, n)
    if flavor is Flavor.NILPOTENT:
        return c_inv, (-c_inv * c_inv * d) % n
    # Zn[x] is Zn x Zn through a + bx -> (a, a + b)
    cd_inv = pow((c + d) % n, -1, n)
    return c_inv, (cd_inv - c_inv) % n


def lift(values: Iterable[int], n: int) -> frozenset[Pair]:
    """The set Y[t] = {r + yt | r in Zn, y in Y} as pairs."""
    ys = {y % n for y in values}
    return frozenset((r, y) for r in range(n) for y in ys)


@dataclass(frozen=True, order=True)
class DualNumber:
    """An element base + delta*t of Zn[t]."""

    base: Residue
    delta: Residue
    flavor: Flavor = Flavor.NILPOTENT

    def __post_init__(self) -> None:
        if self.base.modulus != self.delta.modulus:
            raise ModulusError("base and delta must share a modulus")

    @classmethod
    def of(
        cls,
        base: int,
        delta: int,
        flavor: Flavor = Flavor.NILPOTENT,
        n: int = DEFAULT_MODULUS,
    ) -> DualNumber:
        """Build base + delta*t from integers."""
        return cls(Residue(base, n), Residue(delta, n), flavor)

    @classmethod
    def from_pair(cls, pair: Pair, flavor: Flavor, n: int) -> DualNumber:
        return cls.of(pair[0], pair[1], flavor, n)

    @property
    def modulus(self) -> int:
        return self.base.modulus

    @property
    def pair(self) -> Pair:
        """(base, delta) as plain integers."""
        return self.base.value, self.delta.value

    def _check(self, other: DualNumber) -> None:
        if other.flavor is not self.flavor:
            raise FlavorMismatchError(
                f"cannot combine {self.flavor.value} and {other.flavor.value} values"
            )
        if other.modulus != self.modulus:
            raise ModulusError(f"modulus mismatch: Z{self.modulus} and Z{other.modulus}")

    def __add__(self, other: DualNumber) -> DualNumber:
        self._check(other)
        return DualNumber(self.base + other.base, self.delta + other.delta, self.flavor)

    def __mul__(self, other: DualNumber) -> DualNumber:
        return mul(self, other)

    def __str__(self) -> str:
        return f"{self.base.value}+{self.delta.value}{self.flavor.symbol}"


def mul(x: DualNumber, y: DualNumber) -> DualNumber:
    """Ring product under the shared flavor.

    Raises:
        FlavorMismatchError: If the flavors differ.
        ModulusError: If the moduli differ.
    """
    x._check(y)
    return DualNumber.from_pair(mul_pair(x.pair, y.pair, x.flavor, x.modulus), x.flavor, x.modulus)


def transport_pair(cantus: int, discantus: int, n: int = DEFAULT_MODULUS) -> DualNumber:
    """Map a (cantus, discantus) pair of Zn x Zn to the idempotent interval c + (d - c)x."""
    return DualNumber.of(cantus, discantus - cantus, Flavor.IDEMPOTENT, n)


def untransport(x: DualNumber) -> Pair:
    """Inverse of ``transport_pair``: c + kx -> (c, c + k)."""
    if x.flavor is not Flavor.IDEMPOTENT:
        raise FlavorMismatchError("only idempotent intervals come from voice pairs")
    return x.base.value, (x.base.value + x.delta.value) % x.modulus


@dataclass(frozen=True, order=True)
class DualSymmetry:
    """The symmetry e^{u+vt}(c+dt) of Zn[t].

    Valid only if c + dt is a unit: c a unit (nilpotent), c and c + d units
    (idempotent).
    """

    u: Residue
    v: Residue
    c: Residue
    d: Residue
    flavor: Flavor = Flavor.NILPOTENT

    def __post_init__(self) -> None:
        n = self.u.modulus
        if not all(r.modulus == n for r in (self.v, self.c, self.d)):
            raise ModulusError("symmetry components must share a modulus")
        if not is_unit_pair(self.c.value, self.d.value, self.flavor, n):
            if self.flavor is Flavor.IDEMPOTENT:
                reason = "c and c+d must be units"
            else:
                reason = "c must be a unit"
            raise InvalidSymmetryError(
                f"invalid {self.flavor.value} symmetry "
                f"(c={self.c.value}, d={self.d.value}) mod {n}: {reason}"
            )

    @classmethod
    def of(
        cls,
        u: int,
        v: int,
        c: int,
        d: int,
        flavor: Flavor = Flavor.NILPOTENT,
        n: int = DEFAULT_MODULUS,
    ) -> DualSymmetry:
        """Build e^{u+vt}(c+dt) from integers."""
        return cls(Residue(u, n), Residue(v, n), Residue(c, n), Residue(d, n), flavor)

    @classmethod
    def identity(cls, flavor: Flavor = Flavor.NILPOTENT, n: int = DEFAULT_MODULUS) -> DualSymmetry:
        return cls.of(0, 0, 1, 0, flavor, n)

    @classmethod
    def translation(
        cls, z: int, flavor: Flavor = Flavor.NILPOTENT, n: int = DEFAULT_MODULUS
    ) -> DualSymmetry:
        """The cantus-firmus translation e^z."""
        return cls.of(z, 0, 1, 0, flavor, n)

    @property
    def modulus(self) -> int:
        return self.u.modulus

    @property
    def coefficients(self) -> tuple[int, int, int, int]:
        """(u, v, c, d) as plain integers."""
        return self.u.value, self.v.value, self.c.value, self.d.value

    @property
    def in_fiber_group(self) -> bool:
        """Whether the symmetry belongs to H, i.e. u = 0."""
        return self.u.value == 0

    def apply_pair(self, x: int, y: int) -> Pair:
        """Apply to the element x + yt given as integers."""
        n = self.modulus
        u, v, c, d = self.coefficients
        delta = c * y + d * x + v
        if self.flavor is Flavor.IDEMPOTENT:
            delta += d * y
        return (c * x + u) % n, delta % n

    def image(self, pairs: Iterable[Pair]) -> frozenset[Pair]:
        """Image of a set of (base, delta) pairs."""
        return frozenset(self.apply_pair(x, y) for x, y in pairs)

    def __call__(self, x: DualNumber) -> DualNumber:
        return apply_dual(self, x)

    def __str__(self) -> str:
        u, v, c, d = self.coefficients
        t = self.flavor.symbol
        return f"e^{{{u}+{v}{t}}}({c}+{d}{t})"


def _check_same(g: DualSymmetry, flavor: Flavor, n: int) -> None:
    if g.flavor is not flavor:
        raise FlavorMismatchError(
            f"cannot combine {g.flavor.value} and {flavor.value} values"
        )
    if g.modulus != n:
        raise ModulusError(f"modulus mismatch: Z{g.modulus} and Z{n}")


def apply_dual(g: DualSymmetry, x: DualNumber) -> DualNumber:
    """Evaluate (c + dt)x + (u + vt).

    Raises:
        FlavorMismatchError: If g and x use different products.
        ModulusError: If the moduli differ.
    """
    _check_same(g, x.flavor, x.modulus)
    return DualNumber.from_pair(g.apply_pair(*x.pair), x.flavor, x.modulus)


def compose_dual(g1: DualSymmetry, g2: DualSymmetry) -> DualSymmetry:
    """The composite g1 o g2 (apply g2 first).

    C1(C2 x + U2) + U1 = (C1 C2) x + (C1 U2 + U1).
    """
    _check_same(g1, g2.flavor, g2.modulus)
    n, flavor = g1.modulus, g1.flavor
    u1, v1, c1, d1 = g1.coefficients
    u2, v2, c2, d2 = g2.coefficients
    c, d = mul_pair((c1, d1), (c2, d2), flavor, n)
    cu, cv = mul_pair((c1, d1), (u2, v2), flavor, n)
    return DualSymmetry.of(cu + u1, cv + v1, c, d, flavor, n)


def invert_dual(g: DualSymmetry) -> DualSymmetry:
    """Inverse symmetry: y -> C^-1 y - C^-1 U."""
    n, flavor = g.modulus, g.flavor
    u, v, c, d = g.coefficients
    ci, di = inverse_pair(c, d, flavor, n)
    iu, iv = mul_pair((ci, di), (u, v), flavor, n)
    return DualSymmetry.of(-iu, -iv, ci, di, flavor, n)


@lru_cache(maxsize=None)
def _dual_symmetries(n: int, flavor: Flavor, zero_u: bool) -> tuple[DualSymmetry, ...]:
    us = (0,) if zero_u else tuple(range(n))
    group = tuple(
        DualSymmetry.of(u, v, c, d, flavor, n)
        for u in us
        for v in range(n)
        for c in unit_values(n)
        for d in range(n)
        if is_unit_pair(c, d, flavor, n)
    )
    logger.debug(f"Enumerated {len(group)} {flavor.value} symmetries of Z{n} (zero_u={zero_u})")
    return group


def enumerate_dual_symmetries(
    n: int = DEFAULT_MODULUS,
    flavor: Flavor = Flavor.NILPOTENT,
    zero_u: bool = False,
) -> list[DualSymmetry]:
    """All symmetries of Zn[t], sorted by (u, v, c, d).

    Args:
        n: Modulus.
        flavor: Product rule.
        zero_u: Restrict to the fiber group H (u = 0).

    Returns:
        The symmetries as a fresh list.
    """
    check_modulus(n)
    return list(_dual_symmetries(n, flavor, zero_u))
