"""Fixed-step RK4 kernel for the self-adaptive two-mode operator system.

State: two 4x4 complex matrices (a1, a2) plus a fixed reference vector v.
Right-hand side (all coefficients real; cim recomputed at every stage):

    cim = 2 Im <a1 v, a2 v>              # Im <v, (a1^+ a2 - a2^+ a1) v>
    w1  = w10 * (1 + alpha1 * lam * cim)
    w2  = w20 * (1 - alpha2 * lam * cim)
    da1 = -i (w1 a1 + lam a2)
    da2 = -i (w2 a2 + lam a1)
"""

from __future__ import annotations

import numpy as np
from numba import njit

STATUS_OK = 0
STATUS_UNSTABLE = 1

# Abort threshold on |entry| of either operator matrix.
ENTRY_LIMIT = 1.0e3


@njit(cache=True)
def _stage(a1, a2, v, w10, w20, a1l, a2l, lam, d1, d2):
    # coupling expectation <v, (a1^+ a2 - a2^+ a1) v> = 2i Im <a1 v, a2 v>
    acc = 0.0 + 0.0j
    for r in range(4):
        u1 = 0.0 + 0.0j
        u2 = 0.0 + 0.0j
        for c in range(4):
            u1 += a1[r, c] * v[c]
            u2 += a2[r, c] * v[c]
        acc += u1.conjugate() * u2
    cim = 2.0 * acc.imag
    w1 = w10 * (1.0 + a1l * cim)
    w2 = w20 * (1.0 - a2l * cim)
    for r in range(4):
        for c in range(4):
            d1[r, c] = -1j * (w1 * a1[r, c] + lam * a2[r, c])
            d2[r, c] = -1j * (w2 * a2[r, c] + lam * a1[r, c])
    return cim, w1, w2


@njit(cache=True)
def _observe(a1, a2, v, w10, w20, a1l, a2l, lam):
    # (n1, n2, cim, w1, w2, max_abs) at the current state
    acc = 0.0 + 0.0j
    n1 = 0.0
    n2 = 0.0
    for r in range(4):
        u1 = 0.0 + 0.0j
        u2 = 0.0 + 0.0j
        for c in range(4):
            u1 += a1[r, c] * v[c]
            u2 += a2[r, c] * v[c]
        acc += u1.conjugate() * u2
        n1 += (u1 * u1.conjugate()).real
        n2 += (u2 * u2.conjugate()).real
    cim = 2.0 * acc.imag
    w1 = w10 * (1.0 + a1l * cim)
    w2 = w20 * (1.0 - a2l * cim)
    max_abs = 0.0
    for r in range(4):
        for c in range(4):
            m1 = abs(a1[r, c])
            m2 = abs(a2[r, c])
            if m1 > max_abs:
                max_abs = m1
            if m2 > max_abs:
                max_abs = m2
            # NaN compares false everywhere; force the abort path
            if m1 != m1 or m2 != m2:
                max_abs = np.inf
    return n1, n2, cim, w1, w2, max_abs


@njit(cache=True)
def integrate_pair(a1_init, a2_init, v, w10, w20, lam, alpha1, alpha2,
                   step, n_steps, stride):
    """RK4-integrate the operator pair, recording every ``stride`` steps.

    Returns (status, n_rec, times, n1, n2, w1, w2, cim, frames1, frames2).
    Arrays are sized for the maximum record count; only the first n_rec
    entries are valid.  status != STATUS_OK means the run aborted at the
    last recorded sample (entry magnitude above ENTRY_LIMIT or non-finite).
    """
    a1 = a1_init.copy()
    a2 = a2_init.copy()
    n_rec_max = n_steps // stride + 2
    times = np.empty(n_rec_max)
    n1 = np.empty(n_rec_max)
    n2 = np.empty(n_rec_max)
    w1s = np.empty(n_rec_max)
    w2s = np.empty(n_rec_max)
    cims = np.empty(n_rec_max)
    frames1 = np.empty((n_rec_max, 4, 4), np.complex128)
    frames2 = np.empty((n_rec_max, 4, 4), np.complex128)

    k1a = np.empty((4, 4), np.complex128)
    k1b = np.empty((4, 4), np.complex128)
    k2a = np.empty((4, 4), np.complex128)
    k2b = np.empty((4, 4), np.complex128)
    k3a = np.empty((4, 4), np.complex128)
    k3b = np.empty((4, 4), np.complex128)
    k4a = np.empty((4, 4), np.complex128)
    k4b = np.empty((4, 4), np.complex128)
    t1 = np.empty((4, 4), np.complex128)
    t2 = np.empty((4, 4), np.complex128)

    a1l = alpha1 * lam
    a2l = alpha2 * lam
    half = 0.5 * step
    sixth = step / 6.0

    status = STATUS_OK
    rec = 0
    nv1, nv2, cim, w1, w2, max_abs = _observe(a1, a2, v, w10, w20, a1l, a2l, lam)
    times[rec] = 0.0
    n1[rec] = nv1
    n2[rec] = nv2
    w1s[rec] = w1
    w2s[rec] = w2
    cims[rec] = cim
    frames1[rec, :, :] = a1
    frames2[rec, :, :] = a2
    rec += 1

    for i in range(1, n_steps + 1):
        _stage(a1, a2, v, w10, w20, a1l, a2l, lam, k1a, k1b)
        for r in range(4):
            for c in range(4):
                t1[r, c] = a1[r, c] + half * k1a[r, c]
                t2[r, c] = a2[r, c] + half * k1b[r, c]
        _stage(t1, t2, v, w10, w20, a1l, a2l, lam, k2a, k2b)
        for r in range(4):
            for c in range(4):
                t1[r, c] = a1[r, c] + half * k2a[r, c]
                t2[r, c] = a2[r, c] + half * k2b[r, c]
        _stage(t1, t2, v, w10, w20, a1l, a2l, lam, k3a, k3b)
        for r in range(4):
            for c in range(4):
                t1[r, c] = a1[r, c] + step * k3a[r, c]
                t2[r, c] = a2[r, c] + step * k3b[r, c]
        _stage(t1, t2, v, w10, w20, a1l, a2l, lam, k4a, k4b)
        for r in range(4):
            for c in range(4):
                a1[r, c] += sixth * (
                    k1a[r, c] + 2.0 * k2a[r, c] + 2.0 * k3a[r, c] + k4a[r, c]
                )
                a2[r, c] += sixth * (
                    k1b[r, c] + 2.0 * k2b[r, c] + 2.0 * k3b[r, c] + k4b[r, c]
                )

        if i % stride == 0 or i == n_steps:
            nv1, nv2, cim, w1, w2, max_abs = _observe(
                a1, a2, v, w10, w20, a1l, a2l, lam
            )
            times[rec] = i * step
            n1[rec] = nv1
            n2[rec] = nv2
            w1s[rec] = w1
            w2s[rec] = w2
            cims[rec] = cim
            frames1[rec, :, :] = a1
            frames2[rec, :, :] = a2
            rec += 1
            if not (max_abs <= ENTRY_LIMIT):
                status = STATUS_UNSTABLE
                break

    return status, rec, times, n1, n2, w1s, w2s, cims, frames1, frames2
