"""Constructive uniform approximation on the unit interval.

Two constructions: the square-root iteration (a monotone polynomial scheme
converging to sqrt from below) and the normalized kernel polynomial
P_n(x) = Q_n(x) / (2 J_n) with Q_n(x) the integral of f(u) (1-(u-x)^2)^n
over [0,1] and J_n the integral of (1-v^2)^n. The kernel mass ratio
J*_n/J_n (tail above a cutoff, over the whole mass) is bounded by
(n+1)(1-delta^2)^n, which is what drives uniform convergence on interior
subintervals.
"""

import math
from dataclasses import dataclass

from .errors import FormatError, ValidationError


@dataclass(frozen=True)
class GridFunction:
    grid: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(float(x) for x in self.grid))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.grid) != len(self.values):
            raise FormatError("grid and values must have equal length")
        if any(not 0.0 <= x <= 1.0 for x in self.grid):
            raise FormatError("grid points must lie in [0, 1]")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise FormatError("grid must be strictly increasing")


def sqrt_iteration(n: int, grid) -> GridFunction:
    """n steps of f <- f + (t - f^2)/2 from f = 0, evaluated on the grid.

    Each iterate is squeezed between the previous one and sqrt(t).
    """
    if n < 0:
        raise ValidationError("iteration count must be nonnegative")
    grid = tuple(float(x) for x in grid)
    vals = [0.0] * len(grid)
    for _ in range(n):
        vals = [v + 0.5 * (t - v * v) for t, v in zip(grid, vals)]
    return GridFunction(grid, tuple(vals))


def simpson(f, a: float, b: float, panels: int) -> float:
    """Composite Simpson rule; `panels` must be even and at least 2."""
    if panels < 2 or panels % 2:
        raise ValidationError("Simpson quadrature needs an even panel count >= 2")
    h = (b - a) / panels
    acc = f(a) + f(b)
    for i in range(1, panels):
        acc += f(a + i * h) * (4 if i % 2 else 2)
    return acc * h / 3.0


BUILTIN_FUNCTIONS = {
    "abs-half": lambda x: abs(x - 0.5),
    "sin-scaled": lambda x: math.sin(math.pi * x),
    "square": lambda x: x * x,
    "sqrt": math.sqrt,
}


def named_function(name: str):
    """Resolve a built-in: a known name, `constant:<c>`, or `poly:c0,c1,...`."""
    if name in BUILTIN_FUNCTIONS:
        return BUILTIN_FUNCTIONS[name]
    if name.startswith("constant:"):
        c = float(name.split(":", 1)[1])
        return lambda x: c
    if name.startswith("poly:"):
        coeffs = [float(v) for v in name.split(":", 1)[1].split(",")]
        return polynomial(coeffs)
    raise FormatError(f"unknown function {name!r}")


def polynomial(coeffs):
    coeffs = tuple(float(c) for c in coeffs)

    def ev(x):
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    return ev


def kernel_mass(n: int, panels: int = 2048, lower: float = 0.0) -> float:
    return simpson(lambda v: (1.0 - v * v) ** n, lower, 1.0, panels)


@dataclass(frozen=True)
class KernelPolynomial:
    """Evaluator for the degree-2n kernel polynomial of a function."""

    f: object
    n: int
    panels: int
    j_value: float

    def __call__(self, x: float) -> float:
        n = self.n
        f = self.f
        q = simpson(lambda u: f(u) * (1.0 - (u - x) ** 2) ** n, 0.0, 1.0, self.panels)
        return q / (2.0 * self.j_value)


def weierstrass_polynomial(f, n: int, panels: int = 2048) -> KernelPolynomial:
    if n < 1:
        raise ValidationError("degree parameter must be at least 1")
    return KernelPolynomial(f, n, panels, kernel_mass(n, panels))


@dataclass(frozen=True)
class RatioReport:
    ratio: float
    bound: float


def kernel_ratio(n: int, delta: float, panels: int = 2048) -> RatioReport:
    """Tail-to-total kernel mass ratio and its closed-form bound."""
    if not 0.0 < delta < 1.0:
        raise ValidationError("delta must lie strictly between 0 and 1")
    if n < 1:
        raise ValidationError("degree parameter must be at least 1")
    ratio = kernel_mass(n, panels, lower=delta) / kernel_mass(n, panels)
    bound = (n + 1) * (1.0 - delta * delta) ** n
    return RatioReport(ratio, bound)
