"""Membership function shapes: trapezoids, two-term Gaussians, crisp label sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DefinitionError


def gauss2_sum(x, alpha1, beta1, gamma1, alpha2, beta2, gamma2):
    """Unclamped sum of two Gaussian bumps.

    alpha1 * exp(-(x - beta1)^2 / gamma1^2) + alpha2 * exp(-(x - beta2)^2 / gamma2^2)

    Shared by Gauss2 evaluation (which clamps the result into [0, 1]) and by
    the least-squares fitter (which needs the raw differentiable model).
    """
    x = np.asarray(x, dtype=float)
    return alpha1 * np.exp(-((x - beta1) ** 2) / gamma1**2) + alpha2 * np.exp(
        -((x - beta2) ** 2) / gamma2**2
    )


@dataclass(frozen=True)
class Trapezoid:
    """Piecewise-linear trapezoid with breakpoints a <= b <= c <= d.

    Degenerate edges (a == b, c == d) give vertical shoulders, so left and
    right shoulder shapes and rectangles are all expressible.  Breakpoints
    may lie outside the owning variable's domain; only in-domain values are
    ever evaluated.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if not (self.a <= self.b <= self.c <= self.d):
            raise DefinitionError(
                "trapezoid breakpoints must satisfy a <= b <= c <= d, got "
                f"({self.a}, {self.b}, {self.c}, {self.d})"
            )

    def __call__(self, x):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros_like(arr)
        out[(arr >= self.b) & (arr <= self.c)] = 1.0
        if self.b > self.a:
            rising = (arr > self.a) & (arr < self.b)
            out[rising] = (arr[rising] - self.a) / (self.b - self.a)
        if self.d > self.c:
            falling = (arr > self.c) & (arr < self.d)
            out[falling] = (self.d - arr[falling]) / (self.d - self.c)
        if np.ndim(x) == 0:
            return float(out[0])
        return out


@dataclass(frozen=True)
class Gauss2:
    """Sum of two Gaussian bumps, clamped into [0, 1].

    degree(x) = clamp(alpha1 * exp(-(x - beta1)^2 / gamma1^2)
                      + alpha2 * exp(-(x - beta2)^2 / gamma2^2), 0, 1)

    The raw sum can exceed 1 where the bumps overlap (and can go negative
    when a fitted alpha is negative), so evaluation always clamps.  The
    alphas are dimensionless; betas and gammas are in domain units, with
    gammas strictly positive.
    """

    alpha1: float
    beta1: float
    gamma1: float
    alpha2: float
    beta2: float
    gamma2: float

    def __post_init__(self):
        if not (self.gamma1 > 0 and self.gamma2 > 0):
            raise DefinitionError(
                f"gauss2 widths must be positive, got gamma1={self.gamma1}, "
                f"gamma2={self.gamma2}"
            )

    def __call__(self, x):
        raw = gauss2_sum(
            x, self.alpha1, self.beta1, self.gamma1, self.alpha2, self.beta2, self.gamma2
        )
        clipped = np.clip(raw, 0.0, 1.0)
        if np.ndim(x) == 0:
            return float(clipped)
        return clipped


@dataclass(frozen=True)
class CrispLabel:
    """Exact-match membership over a finite catalog of discrete codes.

    Degree is 1 for codes in ``levels`` and 0 for every other code; used for
    nominal and ordinal variables whose domain is a code list.
    """

    levels: frozenset

    def __init__(self, levels):
        object.__setattr__(self, "levels", frozenset(levels))
        if not self.levels:
            raise DefinitionError("crisp label needs at least one matching level")

    def __call__(self, x):
        return 1.0 if x in self.levels else 0.0


MembershipFunction = Union[Trapezoid, Gauss2, CrispLabel]


def eval_membership(mf: MembershipFunction, x) -> float:
    """Degree of a single domain value under a membership function.

    The caller is responsible for domain checking (see
    :func:`lingmap.variables.fuzzify`); this evaluates the bare shape.
    """
    return float(mf(x))
