"""Finite-width two-particle detector.

Instead of two point detectors, a single detector of width ``2*epsilon``
centered at ``x`` registers both particles anywhere inside it. The joint
probabilities become double integrals over the square ``[x-eps, x+eps]^2``:

* numerator   ``iint |psi1(z) psi2(y) +/- psi2(z) psi1(y)|^2 dz dy``
* denominator ``iint |psi1(z) psi2(y)|^2 + |psi2(z) psi1(y)|^2 dz dy``

evaluated with a tensor-product Gauss-Legendre rule. For a simple zero of
one wave function against a locally constant partner the ratio has the
closed form ``(1 + 6u^2) / (1 + 3u^2)`` with ``u = (x - x0)/eps``
(:func:`ratio_finite_closed_form`), which serves as the exactness oracle:
the integrands are then polynomials and Gauss-Legendre reproduces them to
rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .joint import DENOMINATOR_FLOOR, Statistics
from .wavefunctions import WaveFunction

__all__ = ["QuadratureSpec", "gauss_legendre_rule", "ratio_finite", "ratio_finite_closed_form"]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor-product quadrature: ``nodes_per_axis`` Gauss-Legendre points per axis."""

    nodes_per_axis: int = 32
    rule: str = "gauss-legendre"

    def __post_init__(self):
        if self.rule != "gauss-legendre":
            raise ValueError(f"unsupported quadrature rule {self.rule!r}")
        if not (isinstance(self.nodes_per_axis, int) and self.nodes_per_axis >= 2):
            raise ValueError(f"nodes_per_axis must be an integer >= 2, got {self.nodes_per_axis!r}")


@lru_cache(maxsize=32)
def gauss_legendre_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]; cached and treated as immutable."""
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def ratio_finite(
    psi1: WaveFunction,
    psi2: WaveFunction,
    stats: Statistics,
    x: float,
    epsilon: float,
    quad: QuadratureSpec = QuadratureSpec(),
    floor: float = DENOMINATOR_FLOOR,
) -> float | None:
    """Finite-width detector ratio at ``x``; ``None`` when the denominator floors."""
    if stats is Statistics.DISTINGUISHABLE:
        raise ValueError("ratio_finite is defined for BOSON or FERMION only")
    if not (epsilon > 0):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    nodes, weights = gauss_legendre_rule(quad.nodes_per_axis)
    num_b, num_f, den = kernels.finite_grid(
        psi1, psi2, np.array([float(x)]), epsilon, nodes, weights
    )
    if den[0] < floor:
        return None
    num = num_b[0] if stats is Statistics.BOSON else num_f[0]
    return min(max(num / den[0], 0.0), 2.0)


def ratio_finite_closed_form(x: float, x0: float, epsilon: float) -> float:
    """Boson ratio of the wide detector near a simple zero: (1+6u^2)/(1+3u^2).

    ``u = (x - x0)/epsilon``. Equals 1 at the zero, stays >= 1 everywhere,
    and climbs to the bunching value 2 for ``|u| >> 1``.
    """
    if not (epsilon > 0):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    u2 = ((x - x0) / epsilon) ** 2
    return (1.0 + 6.0 * u2) / (1.0 + 3.0 * u2)
