"""Rationals modulo 1: the additive model of roots of unity.

A value p/q in [0, 1) stands for the root of unity exp(2*pi*i*p/q); addition
here corresponds to multiplication of roots.  Keeping values reduced makes
equality decidable, which everything downstream relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class QZ:
    """A reduced fraction p/q with 0 <= p < q, under addition mod 1."""

    numerator: int = 0
    denominator: int = 1

    def __post_init__(self) -> None:
        if self.denominator < 1:
            raise ValueError("denominator must be positive")
        if not 0 <= self.numerator < self.denominator:
            raise ValueError("value must lie in [0, 1)")
        if math.gcd(self.numerator, self.denominator) != 1 and self.numerator != 0:
            raise ValueError("fraction must be in lowest terms")
        if self.numerator == 0 and self.denominator != 1:
            raise ValueError("zero is stored as 0/1")

    @staticmethod
    def of(numerator: int, denominator: int = 1) -> "QZ":
        """Build the class of numerator/denominator, reduced into [0, 1)."""
        f = Fraction(numerator, denominator) % 1
        return QZ(f.numerator, f.denominator)

    @staticmethod
    def from_fraction(value: Fraction) -> "QZ":
        f = value % 1
        return QZ(f.numerator, f.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def is_zero(self) -> bool:
        return self.numerator == 0

    def __add__(self, other: "QZ") -> "QZ":
        return QZ.from_fraction(self.as_fraction() + other.as_fraction())

    def __sub__(self, other: "QZ") -> "QZ":
        return QZ.from_fraction(self.as_fraction() - other.as_fraction())

    def __neg__(self) -> "QZ":
        return QZ.from_fraction(-self.as_fraction())

    def scaled(self, factor: int) -> "QZ":
        """Integer multiple, i.e. the root of unity raised to ``factor``."""
        return QZ.from_fraction(self.as_fraction() * factor)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


ZERO = QZ()
