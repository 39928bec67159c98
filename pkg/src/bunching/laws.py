"""Closed-form ratio laws near wave-function zeros and window averages.

Near a zero of order ``n`` of one wave function (the partner locally
constant) the boson ratio collapses onto generic laws in ``u = (x-x0)/eps``
that carry no trace of the wave functions' prefactors:

* ``n = 1``: the Lorentzian pair :func:`lorentzian_boson` /
  :func:`lorentzian_fermion` -- bosons dip to 0 at the zero, fermions peak
  at 2, and ``rho_B + rho_F = 2``.
* general ``n``: :func:`order_n_exact`, with far/near approximations
  :func:`order_n_far` and :func:`order_n_near` and the two neighborhood
  length scales ``eps/sqrt(2n)`` (rapid variation) and ``sqrt(2n)*eps``
  (slow recovery to 2) from :func:`length_scales`.

Averaging over a window ``delta_x`` (the mean spacing between adjacent
zeros) gives closed predictions. :func:`mean_ratio_prediction` returns the
quoted forms, including the ``sqrt(2n)``-scaled one for higher orders;
:func:`mean_ratio_integrated` returns the form obtained by actually
integrating the far-field deficit, which differs for n > 1. Both are kept
on purpose -- :func:`order_n_average_check` measures which one the numeric
average supports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .joint import Statistics

__all__ = [
    "lorentzian_boson",
    "lorentzian_fermion",
    "order_n_exact",
    "order_n_far",
    "order_n_near",
    "length_scales",
    "mean_ratio_prediction",
    "mean_ratio_integrated",
    "OrderNAverageCheck",
    "order_n_average_check",
]


def _check_eps_n(epsilon: float, n: int = 1) -> None:
    if not (epsilon > 0):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError(f"zero order n must be an integer >= 1, got {n!r}")


def lorentzian_boson(x, x0: float, epsilon: float):
    """Boson point-pair ratio near a simple zero: 2[1 - 1/(u^2 + 1)]."""
    _check_eps_n(epsilon)
    u2 = ((np.asarray(x, dtype=float) - x0) / epsilon) ** 2
    out = 2.0 * (1.0 - 1.0 / (u2 + 1.0))
    return out if out.ndim else float(out)


def lorentzian_fermion(x, x0: float, epsilon: float):
    """Fermion point-pair ratio near a simple zero: 2/(u^2 + 1)."""
    _check_eps_n(epsilon)
    u2 = ((np.asarray(x, dtype=float) - x0) / epsilon) ** 2
    out = 2.0 / (u2 + 1.0)
    return out if out.ndim else float(out)


def order_n_exact(x, x0: float, epsilon: float, n: int):
    """Boson ratio near an order-``n`` zero:
    ``|(u-1)^n + (u+1)^n|^2 / ((u-1)^{2n} + (u+1)^{2n})``, u = (x-x0)/eps.

    Evaluated with the largest power factored out, so it stays finite for
    large ``n`` and ``|u|``. At the zero itself the value is exactly 2 for
    even ``n`` and 0 for odd ``n``; at ``n = 1`` it reduces algebraically to
    the Lorentzian.
    """
    _check_eps_n(epsilon, n)
    u = (np.asarray(x, dtype=float) - x0) / epsilon
    m = np.maximum(np.abs(u - 1.0), np.abs(u + 1.0))
    p = (u - 1.0) / m
    q = (u + 1.0) / m
    num = (p**n + q**n) ** 2
    den = p ** (2 * n) + q ** (2 * n)
    out = num / den
    return out if out.ndim else float(out)


def order_n_far(x, x0: float, epsilon: float, n: int):
    """Far-side approximation (|x-x0| > eps) of the order-``n`` ratio:
    ``2 - (2n/(2n-1)) / (u^2/[n(2n-1)] + 1)``."""
    _check_eps_n(epsilon, n)
    u2 = ((np.asarray(x, dtype=float) - x0) / epsilon) ** 2
    out = 2.0 - (2.0 * n / (2.0 * n - 1.0)) / (u2 / (n * (2.0 * n - 1.0)) + 1.0)
    return out if out.ndim else float(out)


def order_n_near(x, x0: float, epsilon: float, n: int):
    """Near-zone approximation (|x-x0| < eps) of the order-``n`` ratio:
    ``[s + n(4n - s) u^2] / [2 + 2n(2n-1) u^2]`` with ``s = ((-1)^n + 1)^2``.

    For even ``n`` this is identically ``2(1 + n(n-1)u^2)/(1 + n(2n-1)u^2)``;
    for odd ``n`` it limits to ``2 n^2 u^2`` at the zero. The rational form
    (rather than those limits) is kept so the stated 2% agreement with
    :func:`order_n_exact` holds across the whole rapid-variation zone.
    """
    _check_eps_n(epsilon, n)
    u2 = ((np.asarray(x, dtype=float) - x0) / epsilon) ** 2
    s = float(((-1) ** n + 1) ** 2)
    out = (s + n * (4.0 * n - s) * u2) / (2.0 + 2.0 * n * (2.0 * n - 1.0) * u2)
    return out if out.ndim else float(out)


def length_scales(n: int, epsilon: float) -> tuple[float, float]:
    """The two scales of an order-``n`` zero neighborhood:
    ``(eps/sqrt(2n), sqrt(2n)*eps)``. Their product is eps^2."""
    _check_eps_n(epsilon, n)
    root = math.sqrt(2.0 * n)
    return epsilon / root, root * epsilon


def _check_window(epsilon: float, delta_x: float) -> None:
    if not (epsilon > 0):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not (delta_x > 0):
        raise ValueError(f"delta_x must be positive, got {delta_x}")


def mean_ratio_prediction(
    stats: Statistics, epsilon: float, delta_x: float, n: int = 1
) -> float:
    """Quoted window-averaged ratio over one zero spacing ``delta_x``.

    ``n = 1``: boson ``2(1 - pi eps/dx)``, fermion ``2 pi eps/dx`` (the
    integrated Lorentzian). ``n > 1``: deficit ``pi sqrt(2n) eps/dx``.
    Valid for ``eps << delta_x`` (not enforced).
    """
    _check_window(epsilon, delta_x)
    _check_eps_n(epsilon, n)
    if stats is Statistics.DISTINGUISHABLE:
        raise ValueError("mean ratio predictions apply to BOSON or FERMION only")
    if n == 1:
        deficit = 2.0 * math.pi * epsilon / delta_x
    else:
        deficit = math.pi * math.sqrt(2.0 * n) * epsilon / delta_x
    return 2.0 - deficit if stats is Statistics.BOSON else deficit


def mean_ratio_integrated(
    stats: Statistics, epsilon: float, delta_x: float, n: int = 1
) -> float:
    """Window-averaged ratio from integrating the far-field deficit exactly:
    deficit ``2 pi eps n^{3/2} / sqrt(2n-1) / delta_x`` (reduces to the
    Lorentzian result ``2 pi eps/dx`` at n = 1)."""
    _check_window(epsilon, delta_x)
    _check_eps_n(epsilon, n)
    if stats is Statistics.DISTINGUISHABLE:
        raise ValueError("mean ratio predictions apply to BOSON or FERMION only")
    deficit = 2.0 * math.pi * epsilon * n**1.5 / math.sqrt(2.0 * n - 1.0) / delta_x
    return 2.0 - deficit if stats is Statistics.BOSON else deficit


@dataclass(frozen=True)
class OrderNAverageCheck:
    """Numeric window average of the order-``n`` law vs both closed predictions.

    ``err_sqrt2n`` / ``err_integrated`` are the relative errors of the two
    predicted deficits against the numeric deficit; ``closer`` names the
    winning form and ``within_5pct`` every form within 5%.
    """

    n: int
    epsilon: float
    delta_x: float
    numeric: float
    sqrt2n_form: float
    integrated_form: float
    err_sqrt2n: float
    err_integrated: float
    closer: str
    within_5pct: tuple[str, ...]


def order_n_average_check(
    n: int, epsilon: float = 1.0, delta_x: float | None = None, points: int = 2_000_001
) -> OrderNAverageCheck:
    """Average :func:`order_n_exact` over a window centered on the zero and
    compare the deficit against the two closed forms."""
    _check_eps_n(epsilon, n)
    if delta_x is None:
        delta_x = 1000.0 * epsilon
    xs = np.linspace(-delta_x / 2.0, delta_x / 2.0, points)
    numeric = float(np.trapezoid(order_n_exact(xs, 0.0, epsilon, n), xs) / delta_x)
    sqrt2n = 2.0 - math.pi * math.sqrt(2.0 * n) * epsilon / delta_x
    integrated = mean_ratio_integrated(Statistics.BOSON, epsilon, delta_x, n)
    d_num = 2.0 - numeric
    err_s = abs((2.0 - sqrt2n) - d_num) / d_num
    err_i = abs((2.0 - integrated) - d_num) / d_num
    within = tuple(
        name for name, err in (("sqrt2n", err_s), ("integrated", err_i)) if err <= 0.05
    )
    return OrderNAverageCheck(
        n=n,
        epsilon=epsilon,
        delta_x=delta_x,
        numeric=numeric,
        sqrt2n_form=sqrt2n,
        integrated_form=integrated,
        err_sqrt2n=err_s,
        err_integrated=err_i,
        closer="integrated" if err_i <= err_s else "sqrt2n",
        within_5pct=within,
    )
