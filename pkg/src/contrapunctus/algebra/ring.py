"""Exact arithmetic in Zn and the affine symmetry group of Zn.

A symmetry e^a b acts on Zn as r -> b*r + a with b a unit. Values are immutable;
searches that run over whole groups use the integer fast paths (``map_int``) so
they do not allocate a Residue per step.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from contrapunctus.errors import InvalidSymmetryError, ModulusError

logger = logging.getLogger(__name__)

DEFAULT_MODULUS = 12


def check_modulus(n: int) -> int:
    """Validate a modulus.

    Args:
        n: Candidate modulus.

    Returns:
        The modulus unchanged.

    Raises:
        ModulusError: If n < 2.
    """
    if n < 2:
        raise ModulusError(f"invalid modulus {n}: must be at least 2")
    return n


@dataclass(frozen=True, order=True)
class Residue:
    """An integer modulo ``modulus``, canonicalized to [0, modulus)."""

    value: int
    modulus: int = DEFAULT_MODULUS

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ModulusError(f"invalid modulus {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other: Residue | int) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusError(
                    f"modulus mismatch: Z{self.modulus} and Z{other.modulus}"
                )
            return other.value
        return other

    def __add__(self, other: Residue | int) -> Residue:
        return Residue(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Residue | int) -> Residue:
        return Residue(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other: int) -> Residue:
        return Residue(other - self.value, self.modulus)

    def __mul__(self, other: Residue | int) -> Residue:
        return Residue(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> Residue:
        return Residue(-self.value, self.modulus)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)

    @property
    def is_unit(self) -> bool:
        """Whether the residue is invertible."""
        return gcd(self.value, self.modulus) == 1

    def inverse(self) -> Residue:
        """Multiplicative inverse.

        Raises:
            InvalidSymmetryError: If the residue is not a unit.
        """
        if not self.is_unit:
            raise InvalidSymmetryError(f"{self.value} is not a unit mod {self.modulus}")
        return Residue(pow(self.value, -1, self.modulus), self.modulus)


def units(n: int) -> list[Residue]:
    """Residues coprime to n, ascending.

    Args:
        n: Modulus, at least 2.

    Returns:
        The group of units of Zn.
    """
    check_modulus(n)
    return [Residue(b, n) for b in unit_values(n)]


@lru_cache(maxsize=None)
def unit_values(n: int) -> tuple[int, ...]:
    """Integer representatives of the units of Zn."""
    check_modulus(n)
    return tuple(b for b in range(1, n) if gcd(b, n) == 1)


@dataclass(frozen=True, order=True)
class AffineSymmetry:
    """The symmetry e^a b of Zn: r -> b*r + a."""

    translate: Residue
    scale: Residue

    def __post_init__(self) -> None:
        if self.translate.modulus != self.scale.modulus:
            raise ModulusError("translate and scale must share a modulus")
        if not self.scale.is_unit:
            raise InvalidSymmetryError(
                f"scale {self.scale.value} is not a unit mod {self.scale.modulus}"
            )

    @classmethod
    def of(cls, a: int, b: int, n: int = DEFAULT_MODULUS) -> AffineSymmetry:
        """Build e^a b over Zn from integers."""
        return cls(Residue(a, n), Residue(b, n))

    @classmethod
    def identity(cls, n: int = DEFAULT_MODULUS) -> AffineSymmetry:
        """The identity e^0 1."""
        return cls.of(0, 1, n)

    @property
    def modulus(self) -> int:
        return self.scale.modulus

    def map_int(self, r: int) -> int:
        """Apply to a plain integer, reducing mod n."""
        return (self.scale.value * r + self.translate.value) % self.modulus

    def image(self, values: Iterable[int]) -> frozenset[int]:
        """Image of a set of integer residues."""
        return frozenset(self.map_int(r) for r in values)

    def __call__(self, r: Residue) -> Residue:
        return apply(self, r)

    def __str__(self) -> str:
        return f"e^{self.translate.value}*{self.scale.value}"


def apply(s: AffineSymmetry, r: Residue) -> Residue:
    """Evaluate s at r.

    Raises:
        ModulusError: If s and r live in different rings.
    """
    if s.modulus != r.modulus:
        raise ModulusError(f"modulus mismatch: Z{s.modulus} and Z{r.modulus}")
    return Residue(s.map_int(r.value), s.modulus)


def compose(s1: AffineSymmetry, s2: AffineSymmetry) -> AffineSymmetry:
    """The composite s1 o s2 (apply s2 first).

    b1(b2 r + a2) + a1 = (b1 b2) r + (b1 a2 + a1).
    """
    if s1.modulus != s2.modulus:
        raise ModulusError(f"modulus mismatch: Z{s1.modulus} and Z{s2.modulus}")
    return AffineSymmetry(s1.scale * s2.translate + s1.translate, s1.scale * s2.scale)


def invert(s: AffineSymmetry) -> AffineSymmetry:
    """Inverse symmetry: r -> b^-1 (r - a)."""
    b_inv = s.scale.inverse()
    return AffineSymmetry(-(b_inv * s.translate), b_inv)


@lru_cache(maxsize=None)
def _symmetries(n: int) -> tuple[AffineSymmetry, ...]:
    return tuple(
        AffineSymmetry.of(a, b, n) for a in range(n) for b in unit_values(n)
    )


def enumerate_symmetries(n: int = DEFAULT_MODULUS) -> list[AffineSymmetry]:
    """All affine symmetries of Zn, ordered lexicographically by (a, b)."""
    check_modulus(n)
    return list(_symmetries(n))
