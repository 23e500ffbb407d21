"""Enclosure carriers: a rational center plus a rational radius.

Radii always over-approximate; any propagation that produces one of these
values is responsible for rounding its error bound upward.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact.matrix import QMatrix, QVector


@dataclass(frozen=True)
class BallMatrix:
    """All matrices within Frobenius distance `radius` of `center`."""

    center: QMatrix
    radius: Fraction

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError("radius must be non-negative")

    def contains(self, M: QMatrix) -> bool:
        """Exact membership test (squared comparison, no square roots)."""
        return (M - self.center).frob_norm_sq() <= self.radius * self.radius


@dataclass(frozen=True)
class BallVector:
    """All vectors within Euclidean distance `radius` of `center`."""

    center: QVector
    radius: Fraction

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError("radius must be non-negative")

    def contains(self, v: QVector) -> bool:
        return (v - self.center).norm_sq() <= self.radius * self.radius


@dataclass(frozen=True)
class BallScalar:
    """The interval [center - radius, center + radius]."""

    center: Fraction
    radius: Fraction

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError("radius must be non-negative")

    def contains(self, value: Fraction) -> bool:
        return abs(value - self.center) <= self.radius

    def contains_sqrt(self, radicand: Fraction) -> bool:
        """Exact test of sqrt(radicand) in the interval, for radicand >= 0."""
        if radicand < 0:
            raise ValueError("negative radicand")
        lo = self.center - self.radius
        hi = self.center + self.radius
        if hi < 0:
            return False
        if lo > 0 and lo * lo > radicand:
            return False
        return radicand <= hi * hi
