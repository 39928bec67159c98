"""Point-pair joint detection densities and boson/fermion ratios.

Two ideal detectors sit at ``x - epsilon`` and ``x + epsilon``. With
``A = psi1(x-eps) * psi2(x+eps)`` and ``B = psi2(x-eps) * psi1(x+eps)``:

* distinguishable particles:  ``|A|^2 + |B|^2``
* identical bosons:           ``|A + B|^2``
* identical fermions:         ``|A - B|^2``

The contractual quantities are the ratios ``rho = identical / distinguishable``,
bounded in [0, 2] by the parallelogram law
``|A+B|^2 + |A-B|^2 = 2(|A|^2 + |B|^2)``, which also forces
``rho_boson + rho_fermion = 2`` at every point where the ratio is defined.

A ratio is *undefined* (returned as ``None``) when the distinguishable
denominator falls below ``DENOMINATOR_FLOOR`` -- e.g. deep in Gaussian tails
where the products underflow; this is deliberately distinct from NaN.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .wavefunctions import WaveFunction, derivative, evaluate

__all__ = [
    "Statistics",
    "DENOMINATOR_FLOOR",
    "amplitudes",
    "joint_density_point",
    "ratio_point",
    "RatioExpansion",
    "expand_ratio_at",
]

DENOMINATOR_FLOOR = 1e-300


class Statistics(enum.Enum):
    """Particle-exchange class of the pair."""

    BOSON = "boson"
    FERMION = "fermion"
    DISTINGUISHABLE = "distinguishable"


def amplitudes(
    psi1: WaveFunction, psi2: WaveFunction, x: float, epsilon: float
) -> tuple[complex, complex]:
    """The two detection amplitudes (direct, exchanged) at ``x -/+ epsilon``."""
    if not (epsilon > 0):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    a = evaluate(psi1, x - epsilon) * evaluate(psi2, x + epsilon)
    b = evaluate(psi2, x - epsilon) * evaluate(psi1, x + epsilon)
    return a, b


def joint_density_point(
    psi1: WaveFunction,
    psi2: WaveFunction,
    stats: Statistics,
    x: float,
    epsilon: float,
) -> float:
    """Joint detection density for the pair at ``x -/+ epsilon`` (unnormalized)."""
    a, b = amplitudes(psi1, psi2, x, epsilon)
    if stats is Statistics.DISTINGUISHABLE:
        return abs(a) ** 2 + abs(b) ** 2
    if stats is Statistics.BOSON:
        return abs(a + b) ** 2
    if stats is Statistics.FERMION:
        return abs(a - b) ** 2
    raise ValueError(f"unknown statistics {stats!r}")


def ratio_point(
    psi1: WaveFunction,
    psi2: WaveFunction,
    stats: Statistics,
    x: float,
    epsilon: float,
    floor: float = DENOMINATOR_FLOOR,
) -> float | None:
    """Identical-to-distinguishable density ratio at ``x``; ``None`` if undefined.

    ``stats`` must be BOSON or FERMION; the distinguishable ratio is 1 by
    construction and asking for it is rejected as a misuse.
    """
    if stats is Statistics.DISTINGUISHABLE:
        raise ValueError("ratio_point is defined for BOSON or FERMION only")
    a, b = amplitudes(psi1, psi2, x, epsilon)
    den = abs(a) ** 2 + abs(b) ** 2
    if den < floor:
        return None
    num = abs(a + b) ** 2 if stats is Statistics.BOSON else abs(a - b) ** 2
    return min(max(num / den, 0.0), 2.0)


@dataclass(frozen=True)
class RatioExpansion:
    """Boson ratio at a point where neither wave function vanishes.

    ``exact`` is the algebraically rearranged ratio
    ``2 - |f(eps) - f(-eps)|^2 / (|f(eps)|^2 + |f(-eps)|^2)`` for the product
    function ``f(s) = psi1(x0 - s) * psi2(x0 + s)``; it equals the direct
    ratio up to reassociation and is the authoritative value.

    Two second-order approximations accompany it: ``quadratic``, whose
    deficit ``2 eps^2 |f'(0)/f(0)|^2`` follows from the Taylor expansion of
    ``exact`` (agreement is O(eps^4)), and ``quadratic_small``, a commonly
    quoted variant with a 4x smaller deficit coefficient
    ``eps^2 |f'(0)/f(0)|^2 / 2``, retained for comparison. ``quadratic_fd``
    repeats ``quadratic`` with a central-difference derivative of step ``h``
    as a cross-check on the analytic one.
    """

    exact: float
    quadratic: float
    quadratic_small: float
    quadratic_fd: float
    f0: complex
    fprime: complex


def expand_ratio_at(
    psi1: WaveFunction,
    psi2: WaveFunction,
    x0: float,
    epsilon: float,
    h: float | None = None,
    floor: float = 1e-150,
) -> RatioExpansion:
    """Expand the boson ratio around ``x0`` via ``f(s) = psi1(x0-s) psi2(x0+s)``.

    Requires ``|f(0)| > floor``: at an amplitude zero the expansion does not
    apply (the ratio is governed by the zero laws instead) and a ValueError
    is raised.
    """
    if not (epsilon > 0):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if h is None:
        h = epsilon / 100.0
    if not (h > 0):
        raise ValueError(f"finite-difference step h must be positive, got {h}")

    def f(s: float) -> complex:
        return evaluate(psi1, x0 - s) * evaluate(psi2, x0 + s)

    f0 = f(0.0)
    if abs(f0) <= floor:
        raise ValueError(
            f"|f(0)| = {abs(f0):.3e} at x0 = {x0}: a wave function vanishes here, "
            "the smooth-point expansion does not apply"
        )
    fp = -derivative(psi1, x0) * evaluate(psi2, x0) + evaluate(psi1, x0) * derivative(psi2, x0)
    fp_fd = (f(h) - f(-h)) / (2.0 * h)

    fe, fme = f(epsilon), f(-epsilon)
    exact = 2.0 - abs(fe - fme) ** 2 / (abs(fe) ** 2 + abs(fme) ** 2)
    rate = abs(fp) ** 2 / abs(f0) ** 2
    rate_fd = abs(fp_fd) ** 2 / abs(f0) ** 2
    return RatioExpansion(
        exact=exact,
        quadratic=2.0 - 2.0 * epsilon**2 * rate,
        quadratic_small=2.0 - 0.5 * epsilon**2 * rate,
        quadratic_fd=2.0 - 2.0 * epsilon**2 * rate_fd,
        f0=f0,
        fprime=fp,
    )
