"""Truth-degree arithmetic on [0, 1]: t-norms, their dual t-conorms, and
iterated composition."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional


class TNorm(str, enum.Enum):
    PRODUCT = "product"
    GOEDEL = "goedel"
    LUKASIEWICZ = "lukasiewicz"


def check_degree(x: float, what: str = "degree") -> float:
    """Return ``x`` as a float, raising ``ValueError`` unless it lies in [0, 1]."""
    x = float(x)
    if not 0.0 <= x <= 1.0:  # also rejects NaN
        raise ValueError(f"{what} {x!r} is outside [0, 1]")
    return x


@dataclass(frozen=True)
class DegreeAlgebra:
    """A t-norm together with its De Morgan dual t-conorm.

    The identity and annihilator laws are applied before any floating
    arithmetic, so ``tnorm(1, x) == x`` and ``tconorm(0, x) == x`` hold
    bit-for-bit. The engine relies on this to recognise silent steps.
    """

    kind: TNorm = TNorm.PRODUCT

    def __post_init__(self):
        object.__setattr__(self, "kind", TNorm(self.kind))

    def tnorm(self, a: float, b: float) -> float:
        if a == 1.0:
            return b
        if b == 1.0:
            return a
        if a == 0.0 or b == 0.0:
            return 0.0
        if self.kind is TNorm.PRODUCT:
            return a * b
        if self.kind is TNorm.GOEDEL:
            return min(a, b)
        return max(0.0, a + b - 1.0)

    def tconorm(self, a: float, b: float) -> float:
        if a == 0.0:
            return b
        if b == 0.0:
            return a
        if a == 1.0 or b == 1.0:
            return 1.0
        if self.kind is TNorm.PRODUCT:
            return a + b - a * b
        if self.kind is TNorm.GOEDEL:
            return max(a, b)
        return min(1.0, a + b)

    def fold_tnorm(self, xs: Iterable[float]) -> float:
        """Left fold of the t-norm; the empty fold is 1."""
        acc = 1.0
        for x in xs:
            acc = self.tnorm(acc, x)
        return acc

    def fold_tconorm(self, xs: Iterable[float]) -> float:
        """Left fold of the t-conorm; the empty fold is 0."""
        acc = 0.0
        for x in xs:
            acc = self.tconorm(acc, x)
        return acc

    def min_power_steps(self, start: float, k: float, target: float,
                        cap: int) -> Optional[int]:
        """Least ``i >= 0`` such that ``start * k * ... * k`` (i factors of k)
        is ``<= target``.

        Returns ``None`` when no ``i <= cap`` works, which happens when the
        composition stalls at a fixed point above ``target`` (Goedel with
        ``min(start, k) > target``, ``k == 1``, or ``target == 0`` under the
        product t-norm).
        """
        if cap < 1:
            raise ValueError("cap must be at least 1")
        value = start
        for i in range(cap + 1):
            if value <= target:
                return i
            nxt = self.tnorm(value, k)
            if nxt == value:
                return None
            value = nxt
        return None

    def __str__(self) -> str:
        return self.kind.value


PRODUCT = DegreeAlgebra(TNorm.PRODUCT)
GOEDEL = DegreeAlgebra(TNorm.GOEDEL)
LUKASIEWICZ = DegreeAlgebra(TNorm.LUKASIEWICZ)


def tnorm(alg: DegreeAlgebra, a: float, b: float) -> float:
    return alg.tnorm(a, b)


def tconorm(alg: DegreeAlgebra, a: float, b: float) -> float:
    return alg.tconorm(a, b)


def fold_tnorm(alg: DegreeAlgebra, xs: Iterable[float]) -> float:
    return alg.fold_tnorm(xs)


def min_power_steps(alg: DegreeAlgebra, d_prime: float, k: float, d: float,
                    cap: int = 10_000) -> Optional[int]:
    return alg.min_power_steps(d_prime, k, d, cap)
