"""Vectorized grid kernels with selectable backend.

The hot loops of the library live here: evaluating wave-function amplitudes
over grids, the point-pair joint densities, and the finite-width detector's
tensor-product double sums. Two interchangeable implementations exist:

* a pure-numpy path (this module), always available;
* numba ``@njit`` twins in :mod:`bunching._numba_kernels`.

Selection is by the ``BUNCHING_BACKEND`` environment variable
(``auto`` | ``numba`` | ``numpy``; default ``auto`` picks numba when it is
importable) or programmatically via :func:`set_backend`. Both paths follow
the same arithmetic; ``benchmarks/bench_backends.py`` compares their speed.

Wave functions are packed into a flat float64[6] record
``[family_code, order, a, b, re(c), im(c)]`` so the same data feeds both
backends.
"""

from __future__ import annotations

import os

import numpy as np

from .wavefunctions import Constant, Gaussian, MonomialZero, Sinc, WaveFunction

__all__ = [
    "pack",
    "eval_grid",
    "joint_grid",
    "finite_grid",
    "active_backend",
    "set_backend",
    "available_backends",
]

GAUSSIAN, SINC, MONOMIAL, CONSTANT = 0, 1, 2, 3

_SINC_SERIES_CUTOFF = 1e-8

_backend: str | None = None
_numba_mod = None


def _numba_kernels():
    global _numba_mod
    if _numba_mod is None:
        from . import _numba_kernels as mod

        _numba_mod = mod
    return _numba_mod


def available_backends() -> list[str]:
    out = ["numpy"]
    try:
        _numba_kernels()
        out.insert(0, "numba")
    except ImportError:
        pass
    return out


def set_backend(name: str) -> None:
    """Force the kernel backend ('numba', 'numpy', or 'auto')."""
    global _backend
    if name not in ("numba", "numpy", "auto"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba":
        _numba_kernels()  # raises ImportError if unavailable
    _backend = name if name != "auto" else None
    if name == "auto":
        _resolve()


def _resolve() -> str:
    global _backend
    if _backend is None:
        want = os.environ.get("BUNCHING_BACKEND", "auto").lower()
        if want == "numpy":
            _backend = "numpy"
        elif want == "numba":
            _numba_kernels()
            _backend = "numba"
        else:
            _backend = "numba" if "numba" in available_backends() else "numpy"
    return _backend


def active_backend() -> str:
    return _resolve()


def pack(wf: WaveFunction) -> np.ndarray:
    """Flatten a wave function into the float64[6] kernel record."""
    p = np.zeros(6)
    if isinstance(wf, Gaussian):
        p[0], p[2], p[3], p[4] = GAUSSIAN, wf.xi, wf.center, 1.0
    elif isinstance(wf, Sinc):
        p[0], p[2], p[3], p[4] = SINC, wf.xi, wf.center, 1.0
    elif isinstance(wf, MonomialZero):
        c = complex(wf.c)
        p[0], p[1], p[2], p[4], p[5] = MONOMIAL, wf.n, wf.x0, c.real, c.imag
    elif isinstance(wf, Constant):
        c = complex(wf.c)
        p[0], p[4], p[5] = CONSTANT, c.real, c.imag
    else:
        raise TypeError(f"not a wave function: {wf!r}")
    return p


# ---------------------------------------------------------------- numpy path


def _eval_np(p: np.ndarray, x: np.ndarray) -> np.ndarray:
    code = int(p[0])
    amp = complex(p[4], p[5])
    if code == GAUSSIAN:
        xi, c0 = p[2], p[3]
        u = x - c0
        return ((xi * np.pi) ** -0.25 * np.exp(-u * u / (2.0 * xi * xi))).astype(complex)
    if code == SINC:
        xi, c0 = p[2], p[3]
        s = np.pi * (x - c0) / xi
        small = np.abs(s) < _SINC_SERIES_CUTOFF
        safe = np.where(small, 1.0, s)
        out = np.where(small, 1.0 - s * s / 6.0, np.sin(safe) / safe)
        return out.astype(complex)
    if code == MONOMIAL:
        n = int(p[1])
        return amp * (x - p[2]) ** n
    if code == CONSTANT:
        return np.full(x.shape, amp)
    raise ValueError(f"unknown family code {code}")


def _joint_np(p1, p2, xs, eps):
    a = _eval_np(p1, xs - eps) * _eval_np(p2, xs + eps)
    b = _eval_np(p2, xs - eps) * _eval_np(p1, xs + eps)
    p_ni = np.abs(a) ** 2 + np.abs(b) ** 2
    p_b = np.abs(a + b) ** 2
    p_f = np.abs(a - b) ** 2
    return p_ni, p_b, p_f


def _finite_np(p1, p2, xs, eps, nodes, weights):
    # z_{mj} = x_m + eps * t_j ; physical weights carry the eps Jacobian
    z = xs[:, None] + eps * nodes[None, :]
    w = eps * weights
    a = _eval_np(p1, z)
    b = _eval_np(p2, z)
    prod = a[:, :, None] * b[:, None, :]  # psi1(z) psi2(y)
    swap = prod.transpose(0, 2, 1)  # psi2(z) psi1(y)
    ww = w[:, None] * w[None, :]
    num_b = np.einsum("jk,mjk->m", ww, np.abs(prod + swap) ** 2)
    num_f = np.einsum("jk,mjk->m", ww, np.abs(prod - swap) ** 2)
    den = np.einsum("jk,mjk->m", ww, np.abs(prod) ** 2 + np.abs(swap) ** 2)
    return num_b, num_f, den


# ------------------------------------------------------------------ dispatch


def eval_grid(wf: WaveFunction, xs: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Complex amplitudes of ``wf`` at every grid point."""
    xs = np.asarray(xs, dtype=float)
    if (backend or active_backend()) == "numba":
        return _numba_kernels().eval_grid(pack(wf), xs)
    return _eval_np(pack(wf), xs)


def joint_grid(
    psi1: WaveFunction,
    psi2: WaveFunction,
    xs: np.ndarray,
    eps: float,
    backend: str | None = None,
):
    """Point-pair joint densities over a grid.

    Returns ``(p_ni, p_boson, p_fermion)`` where the amplitudes are taken at
    ``x - eps`` and ``x + eps`` and combined incoherently, symmetrically and
    antisymmetrically respectively.
    """
    xs = np.asarray(xs, dtype=float)
    p1, p2 = pack(psi1), pack(psi2)
    if (backend or active_backend()) == "numba":
        return _numba_kernels().joint_grid(p1, p2, xs, float(eps))
    return _joint_np(p1, p2, xs, float(eps))


def finite_grid(
    psi1: WaveFunction,
    psi2: WaveFunction,
    xs: np.ndarray,
    eps: float,
    nodes: np.ndarray,
    weights: np.ndarray,
    backend: str | None = None,
):
    """Finite-width detector double integrals over a grid.

    For each grid point the symmetric/antisymmetric/incoherent integrands are
    integrated over the square ``[x-eps, x+eps]^2`` by the tensor product of
    the supplied one-dimensional rule (``nodes``/``weights`` on [-1, 1]).
    Returns ``(numerator_boson, numerator_fermion, denominator)``.
    """
    xs = np.asarray(xs, dtype=float)
    p1, p2 = pack(psi1), pack(psi2)
    if (backend or active_backend()) == "numba":
        return _numba_kernels().finite_grid(p1, p2, xs, float(eps), nodes, weights)
    return _finite_np(p1, p2, xs, float(eps), nodes, weights)
