"""Single-particle wave functions on the detection screen.

Four closed-form families are supported:

* :class:`Gaussian`   -- ``(xi*pi)**-0.25 * exp(-(x-center)**2 / (2*xi**2))``
* :class:`Sinc`       -- ``sin(pi*(x-center)/xi) / (pi*(x-center)/xi)``
* :class:`MonomialZero` -- ``c * (x-x0)**n``, a zero of order ``n`` at ``x0``
* :class:`Constant`   -- ``c``

Amplitudes are complex throughout (the monomial and constant prefactors may
carry a phase); the Gaussian and sinc shapes are real. None of the families
is normalized to unit probability -- every quantity derived downstream is a
ratio, so overall constants cancel.

Zero finding has two routes: the analytic lattice per family (sinc zeros sit
at ``m*xi + center`` for nonzero integer ``m``) and a generic numeric
fallback that brackets sign changes (odd-order zeros) and |psi| minima
(even-order zeros) on a sampling grid, refines by bisection, and classifies
the order from the log-log slope of |psi| near the root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Gaussian",
    "Sinc",
    "MonomialZero",
    "Constant",
    "WaveFunction",
    "ZeroPoint",
    "evaluate",
    "derivative",
    "find_zeros",
    "find_zeros_numeric",
    "classify_zero_order",
    "intrinsic_scale",
    "far_field_source_width",
]

# sinc argument below which the quadratic series replaces sin(s)/s
_SINC_SERIES_CUTOFF = 1e-8


@dataclass(frozen=True)
class Gaussian:
    """Gaussian screen amplitude of width ``xi`` centered at ``center``."""

    xi: float
    center: float = 0.0

    def __post_init__(self):
        if not (self.xi > 0):
            raise ValueError(f"Gaussian requires xi > 0, got {self.xi}")


@dataclass(frozen=True)
class Sinc:
    """sin(pi*u/xi)/(pi*u/xi) screen amplitude, u = x - center.

    Zeros of order 1 at ``m*xi + center`` for every nonzero integer ``m``.
    """

    xi: float
    center: float = 0.0

    def __post_init__(self):
        if not (self.xi > 0):
            raise ValueError(f"Sinc requires xi > 0, got {self.xi}")


@dataclass(frozen=True)
class MonomialZero:
    """Local model of an order-``n`` zero: ``c * (x - x0)**n``."""

    c: complex
    x0: float
    n: int

    def __post_init__(self):
        if self.c == 0:
            raise ValueError("MonomialZero prefactor c must be nonzero")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"zero order n must be an integer >= 1, got {self.n!r}")


@dataclass(frozen=True)
class Constant:
    """Spatially constant amplitude ``c`` (no zeros)."""

    c: complex

    def __post_init__(self):
        if self.c == 0:
            raise ValueError("Constant amplitude must be nonzero")


WaveFunction = Gaussian | Sinc | MonomialZero | Constant


@dataclass(frozen=True)
class ZeroPoint:
    """An amplitude zero: location, multiplicity, and owning wave function (1 or 2)."""

    location: float
    order: int
    wf_index: int = 1


def _sinc(s: float) -> float:
    if abs(s) < _SINC_SERIES_CUTOFF:
        return 1.0 - s * s / 6.0
    return math.sin(s) / s


def _sinc_prime(s: float) -> float:
    # d/ds [sin(s)/s]; series -s/3 + s^3/30 near the removable singularity
    if abs(s) < _SINC_SERIES_CUTOFF:
        return -s / 3.0 + s**3 / 30.0
    return (s * math.cos(s) - math.sin(s)) / (s * s)


def evaluate(wf: WaveFunction, x: float) -> complex:
    """Complex amplitude of ``wf`` at position ``x``.

    Total on finite input; the sinc center returns exactly 1 (removable
    singularity handled by series).
    """
    if isinstance(wf, Gaussian):
        u = x - wf.center
        return complex((wf.xi * math.pi) ** -0.25 * math.exp(-u * u / (2.0 * wf.xi**2)))
    if isinstance(wf, Sinc):
        s = math.pi * (x - wf.center) / wf.xi
        return complex(_sinc(s))
    if isinstance(wf, MonomialZero):
        return wf.c * (x - wf.x0) ** wf.n
    if isinstance(wf, Constant):
        return complex(wf.c)
    raise TypeError(f"not a wave function: {wf!r}")


def derivative(wf: WaveFunction, x: float) -> complex:
    """Analytic d(psi)/dx at ``x`` (closed form for every family)."""
    if isinstance(wf, Gaussian):
        u = x - wf.center
        return evaluate(wf, x) * (-u / wf.xi**2)
    if isinstance(wf, Sinc):
        a = math.pi / wf.xi
        return complex(a * _sinc_prime(a * (x - wf.center)))
    if isinstance(wf, MonomialZero):
        if wf.n == 1:
            return wf.c
        return wf.c * wf.n * (x - wf.x0) ** (wf.n - 1)
    if isinstance(wf, Constant):
        return 0j
    raise TypeError(f"not a wave function: {wf!r}")


def intrinsic_scale(wf: WaveFunction) -> float | None:
    """Characteristic length of variation, if the family has one."""
    if isinstance(wf, (Gaussian, Sinc)):
        return wf.xi
    return None


def far_field_source_width(l: float, k: float, xi: float) -> float:
    """Source width sigma = l/(k*xi) mapping a screen scale ``xi`` back to the
    source plane at distance ``l`` for mean wave number ``k``."""
    if not (l > 0 and k > 0 and xi > 0):
        raise ValueError(f"l, k, xi must all be positive, got {(l, k, xi)}")
    return l / (k * xi)


def _check_interval_tol(interval: tuple[float, float], tol: float) -> tuple[float, float]:
    a, b = float(interval[0]), float(interval[1])
    if not (b > a):
        raise ValueError(f"interval must satisfy a < b, got {interval}")
    if not (tol > 0):
        raise ValueError(f"tol must be positive, got {tol}")
    return a, b


def find_zeros(
    wf: WaveFunction,
    interval: tuple[float, float],
    tol: float = 1e-12,
    wf_index: int = 1,
) -> list[ZeroPoint]:
    """Zeros of ``wf`` inside ``interval``, sorted ascending.

    Uses the analytic zero set of each family: the sinc lattice
    ``m*xi + center`` (m nonzero integer, order 1), the constructed monomial
    zero (order n), and the empty set for Gaussian/Constant. ``tol`` is
    validated for interface parity with :func:`find_zeros_numeric`, which
    must agree with this path.
    """
    a, b = _check_interval_tol(interval, tol)
    if isinstance(wf, (Gaussian, Constant)):
        return []
    if isinstance(wf, MonomialZero):
        if a <= wf.x0 <= b:
            return [ZeroPoint(wf.x0, wf.n, wf_index)]
        return []
    if isinstance(wf, Sinc):
        m_lo = math.ceil((a - wf.center) / wf.xi)
        m_hi = math.floor((b - wf.center) / wf.xi)
        return [
            ZeroPoint(m * wf.xi + wf.center, 1, wf_index)
            for m in range(m_lo, m_hi + 1)
            if m != 0
        ]
    raise TypeError(f"not a wave function: {wf!r}")


def find_zeros_numeric(
    wf: WaveFunction,
    interval: tuple[float, float],
    tol: float = 1e-12,
    wf_index: int = 1,
    samples: int | None = None,
) -> list[ZeroPoint]:
    """Generic zero finder: bracket-and-bisect, no family knowledge.

    Odd-order zeros are found from sign changes of the real amplitude shape;
    even-order zeros from bracketed minima of |psi| that certify as zeros
    (|psi| <= 1e-9 * max|psi| on the interval). Each candidate is refined to
    ``tol`` and classified with :func:`classify_zero_order`.
    """
    a, b = _check_interval_tol(interval, tol)
    scale = intrinsic_scale(wf) or (b - a) / 10.0
    if samples is None:
        samples = max(50, 10 * math.ceil((b - a) / scale))
    xs = np.linspace(a, b, samples + 1)

    # all families are (complex constant) x (real shape); divide the phase out
    phase = 1.0 + 0j
    if isinstance(wf, MonomialZero):
        phase = wf.c / abs(wf.c)
    elif isinstance(wf, Constant):
        phase = wf.c / abs(wf.c)
    vals = np.array([(evaluate(wf, float(x)) / phase).real for x in xs])
    mags = np.abs(vals)
    vmax = float(mags.max())
    if vmax == 0.0:
        raise ValueError("wave function vanished identically on the sampling grid")
    cert = 1e-9 * vmax

    def shape(x: float) -> float:
        return (evaluate(wf, x) / phase).real

    roots: list[float] = []

    # odd-order zeros: sign changes
    for i in range(samples):
        lo, hi = float(xs[i]), float(xs[i + 1])
        flo, fhi = vals[i], vals[i + 1]
        if flo == 0.0:
            roots.append(lo)
            continue
        if flo * fhi < 0.0:
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                fm = shape(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if flo * fm < 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            roots.append(0.5 * (lo + hi))
    if vals[-1] == 0.0:
        roots.append(float(xs[-1]))

    # even-order zeros: |psi| minima that touch (near) zero
    for i in range(1, samples):
        if mags[i] <= mags[i - 1] and mags[i] <= mags[i + 1] and mags[i] < 0.1 * vmax:
            lo, hi = float(xs[i - 1]), float(xs[i + 1])
            # bisect on the derivative sign of |shape| via central differences
            h = max(tol, (hi - lo) * 1e-9)
            d = lambda x: abs(shape(x + h)) - abs(shape(x - h))
            dlo, dhi = d(lo), d(hi)
            if dlo < 0.0 < dhi:
                while hi - lo > tol:
                    mid = 0.5 * (lo + hi)
                    if d(mid) < 0.0:
                        lo = mid
                    else:
                        hi = mid
                cand = 0.5 * (lo + hi)
                if abs(shape(cand)) <= cert and not any(abs(cand - r) <= 10 * tol for r in roots):
                    roots.append(cand)

    roots.sort()
    return [
        ZeroPoint(r, classify_zero_order(wf, r), wf_index)
        for r in roots
        if abs(evaluate(wf, r)) <= cert
    ]


def classify_zero_order(wf: WaveFunction, location: float) -> int:
    """Multiplicity of a zero from the slope of log|psi| vs log|x - location|.

    Samples two decades of offsets below scale/10 on both sides and rounds
    the fitted slope to the nearest integer.
    """
    scale = intrinsic_scale(wf) or 1.0
    ds = np.logspace(math.log10(scale / 1000.0), math.log10(scale / 10.0), 25)
    offs = np.concatenate([ds, -ds])
    mags = np.array([abs(evaluate(wf, location + float(d))) for d in offs])
    keep = mags > 0.0
    if not keep.any():
        raise ValueError(f"cannot classify zero at {location}: |psi| underflows nearby")
    slope = np.polyfit(np.log(np.abs(offs[keep])), np.log(mags[keep]), 1)[0]
    order = int(round(float(slope)))
    if order < 1:
        raise ValueError(
            f"point {location} does not look like a zero (fitted order {slope:.3f})"
        )
    return order
