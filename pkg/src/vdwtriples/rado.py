"""Single-equation Rado criterion.

``sum(c_i * x_i) = 0`` has a monochromatic solution under every finite
coloring iff some nonempty subset of the nonzero coefficients sums to zero.

Every (a,b)-triple solves ``(2a - b) x - 2 y + z = 0``, so the criterion is a
necessary condition for (a,b) to be regular.  Only that direction is used:
the equation's solutions need not have d >= 1, so a true verdict says nothing
about the triples themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import FamilyParams

__all__ = ["LinearEquation", "triple_equation", "rado_condition", "regularity_necessary"]


@dataclass(frozen=True)
class LinearEquation:
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if not any(self.coefficients):
            raise ValueError("an equation needs at least one nonzero coefficient")

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients, 1):
            if c:
                terms.append(f"{c:+d}*x{i}")
        return " ".join(terms).lstrip("+") + " = 0"


def triple_equation(params: FamilyParams) -> LinearEquation:
    """Coefficients of x, y, z in the relation every (a,b)-triple satisfies."""
    return LinearEquation((2 * params.a - params.b, -2, 1))


def rado_condition(eq: LinearEquation) -> bool:
    nonzero = [c for c in eq.coefficients if c]
    return any(
        sum(subset) == 0
        for size in range(1, len(nonzero) + 1)
        for subset in combinations(nonzero, size)
    )


def regularity_necessary(params: FamilyParams) -> bool:
    return rado_condition(triple_equation(params))
