"""Nonlinear potentials: polynomial double well and logarithmic Flory-Huggins.

Each potential carries the data the bound-preserving analysis needs: the
positive root ``beta`` of the reaction term f = -F' (the invariant-region
bound), the Lipschitz bound ``f_lip`` of f on [-beta, beta], and the
stabilization constant ``kappa`` which must dominate f_lip.  With kappa at
least f_lip, the stabilized reaction xi -> f(xi) + kappa*xi is nondecreasing
on [-beta, beta] and bounded there by kappa*beta, which is the whole content
of the bound-preservation argument on the nonlinear side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "PotentialDomainError",
    "Potential",
    "StabilizedBoundReport",
    "double_well",
    "flory_huggins",
    "default_params",
    "f_eval",
    "fprime_eval",
    "F_eval",
    "check_stabilized_bound",
]

DOUBLE_WELL = "double-well"
FLORY_HUGGINS = "flory-huggins"


class PotentialDomainError(ValueError):
    """Field value outside the open domain of a logarithmic potential.

    Raised instead of clamping: a logarithmic potential evaluated at or
    beyond +-1 means the discrete bound principle has already been lost,
    and that must surface loudly rather than be masked.
    """


@dataclass(frozen=True)
class Potential:
    """Free-energy density F with reaction term f = -F' and its bounds."""

    kind: str
    beta: float
    kappa: float
    f_lip: float
    theta: float = 0.0
    theta_c: float = 0.0


@dataclass(frozen=True)
class StabilizedBoundReport:
    passed: bool
    max_abs: float
    bound: float


def double_well() -> Potential:
    """Quartic double well F = (x^2-1)^2/4, f = x - x^3, beta = 1, |f'| <= 2."""
    return Potential(kind=DOUBLE_WELL, beta=1.0, kappa=2.0, f_lip=2.0)


def flory_huggins(theta: float = 0.8, theta_c: float = 1.6) -> Potential:
    """Logarithmic potential with mixing temperature theta below critical theta_c.

    beta is the positive root of f on (0, 1), located by root bracketing to
    1e-13; f_lip is the maximum of |f'| over a dense sampling of [-beta, beta]
    (the maximum sits at the endpoints, which the sampling includes).  The
    default stabilization constant is f_lip itself.
    """
    if not 0.0 < theta < theta_c:
        raise ValueError(f"need 0 < theta < theta_c, got theta={theta}, theta_c={theta_c}")

    def f(x: float) -> float:
        return 0.5 * theta * (np.log1p(-x) - np.log1p(x)) + theta_c * x

    beta = float(brentq(f, 1e-9, 1.0 - 1e-14, xtol=1e-13, rtol=8.9e-16))
    xs = np.linspace(-beta, beta, 200_001)
    f_lip = float(np.max(np.abs(theta_c - theta / (1.0 - xs ** 2))))
    return Potential(
        kind=FLORY_HUGGINS,
        beta=beta,
        kappa=f_lip,
        f_lip=f_lip,
        theta=float(theta),
        theta_c=float(theta_c),
    )


def default_params(kind: str) -> Potential:
    if kind == DOUBLE_WELL:
        return double_well()
    if kind == FLORY_HUGGINS:
        return flory_huggins()
    raise ValueError(f"unknown potential kind {kind!r}")


def _check_domain(p: Potential, x: np.ndarray) -> None:
    if p.kind == FLORY_HUGGINS and np.any(np.abs(x) >= 1.0):
        worst = float(np.max(np.abs(x)))
        raise PotentialDomainError(
            f"logarithmic potential evaluated at |x| = {worst} >= 1"
        )


def f_eval(p: Potential, x):
    """Reaction term f(x) = -F'(x), elementwise."""
    arr = np.asarray(x, dtype=float)
    _check_domain(p, arr)
    if p.kind == DOUBLE_WELL:
        out = arr - arr ** 3
    else:
        out = 0.5 * p.theta * (np.log1p(-arr) - np.log1p(arr)) + p.theta_c * arr
    return out if isinstance(x, np.ndarray) else float(out)


def fprime_eval(p: Potential, x):
    """Derivative f'(x), elementwise."""
    arr = np.asarray(x, dtype=float)
    _check_domain(p, arr)
    if p.kind == DOUBLE_WELL:
        out = 1.0 - 3.0 * arr ** 2
    else:
        out = p.theta_c - p.theta / (1.0 - arr ** 2)
    return out if isinstance(x, np.ndarray) else float(out)


def F_eval(p: Potential, x):
    """Free-energy density F(x), elementwise."""
    arr = np.asarray(x, dtype=float)
    _check_domain(p, arr)
    if p.kind == DOUBLE_WELL:
        out = 0.25 * (arr ** 2 - 1.0) ** 2
    else:
        out = 0.5 * p.theta * (
            (1.0 + arr) * np.log1p(arr) + (1.0 - arr) * np.log1p(-arr)
        ) - 0.5 * p.theta_c * arr ** 2
    return out if isinstance(x, np.ndarray) else float(out)


def check_stabilized_bound(p: Potential, samples: int = 10_001) -> StabilizedBoundReport:
    """Verify |f(xi) + kappa*xi| <= kappa*beta on a uniform sampling of [-beta, beta]."""
    if samples < 1000:
        raise ValueError(f"need at least 1000 samples, got {samples}")
    xs = np.linspace(-p.beta, p.beta, samples)
    vals = np.abs(f_eval(p, xs) + p.kappa * xs)
    max_abs = float(np.max(vals))
    bound = p.kappa * p.beta
    return StabilizedBoundReport(passed=max_abs <= bound + 1e-12, max_abs=max_abs, bound=bound)
