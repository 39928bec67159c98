"""Numba @njit twins of the numpy kernels in :mod:`bunching.kernels`.

Importing this module requires numba; :mod:`bunching.kernels` guards the
import and falls back to its numpy path. The arithmetic mirrors the numpy
implementations branch for branch so both backends agree to rounding.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

GAUSSIAN, SINC, MONOMIAL, CONSTANT = 0, 1, 2, 3

_SINC_SERIES_CUTOFF = 1e-8


@njit(cache=True)
def _eval_one(p, x):
    code = int(p[0])
    if code == GAUSSIAN:
        xi = p[2]
        u = x - p[3]
        return complex((xi * np.pi) ** -0.25 * math.exp(-u * u / (2.0 * xi * xi)), 0.0)
    if code == SINC:
        s = np.pi * (x - p[3]) / p[2]
        if abs(s) < _SINC_SERIES_CUTOFF:
            return complex(1.0 - s * s / 6.0, 0.0)
        return complex(math.sin(s) / s, 0.0)
    if code == MONOMIAL:
        n = int(p[1])
        return complex(p[4], p[5]) * (x - p[2]) ** n
    # CONSTANT
    return complex(p[4], p[5])


@njit(cache=True)
def eval_grid(p, xs):
    out = np.empty(xs.shape[0], dtype=np.complex128)
    for i in range(xs.shape[0]):
        out[i] = _eval_one(p, xs[i])
    return out


@njit(cache=True)
def joint_grid(p1, p2, xs, eps):
    m = xs.shape[0]
    p_ni = np.empty(m)
    p_b = np.empty(m)
    p_f = np.empty(m)
    for i in range(m):
        a = _eval_one(p1, xs[i] - eps) * _eval_one(p2, xs[i] + eps)
        b = _eval_one(p2, xs[i] - eps) * _eval_one(p1, xs[i] + eps)
        p_ni[i] = abs(a) ** 2 + abs(b) ** 2
        p_b[i] = abs(a + b) ** 2
        p_f[i] = abs(a - b) ** 2
    return p_ni, p_b, p_f


@njit(cache=True)
def finite_grid(p1, p2, xs, eps, nodes, weights):
    m = xs.shape[0]
    q = nodes.shape[0]
    num_b = np.empty(m)
    num_f = np.empty(m)
    den = np.empty(m)
    a = np.empty(q, dtype=np.complex128)
    b = np.empty(q, dtype=np.complex128)
    w = eps * weights
    for i in range(m):
        for j in range(q):
            z = xs[i] + eps * nodes[j]
            a[j] = _eval_one(p1, z)
            b[j] = _eval_one(p2, z)
        sb = 0.0
        sf = 0.0
        sd = 0.0
        for j in range(q):
            for k in range(q):
                prod = a[j] * b[k]
                swap = b[j] * a[k]
                ww = w[j] * w[k]
                sb += ww * abs(prod + swap) ** 2
                sf += ww * abs(prod - swap) ** 2
                sd += ww * (abs(prod) ** 2 + abs(swap) ** 2)
        num_b[i] = sb
        num_f[i] = sf
        den[i] = sd
    return num_b, num_f, den
