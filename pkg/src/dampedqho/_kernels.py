"""Hot loops of the dense eigensolvers.

Every kernel exists twice: an explicit-loop version compiled by numba and a
numpy version that vectorizes the inner row/column updates.  The public
names at the bottom of the module are bound to one of the two according to
:data:`dampedqho._accel.HAVE_NUMBA`; both variants stay importable so tests
and the benchmark can compare them directly.

All kernels work in place on private copies made by the caller.
"""
from __future__ import annotations

import math

import numpy as np

from ._accel import HAVE_NUMBA, jit

_TINY = 1e-300


# ---------------------------------------------------------------------------
# Householder reduction to upper Hessenberg form
# ---------------------------------------------------------------------------


def _hessenberg_loop(h):
    n = h.shape[0]
    v = np.zeros(n, dtype=np.complex128)
    for k in range(n - 2):
        m = n - k - 1
        tail = 0.0
        for i in range(k + 2, n):
            tail += h[i, k].real ** 2 + h[i, k].imag ** 2
        if tail == 0.0:
            continue
        x0 = h[k + 1, k]
        xnorm = math.sqrt(tail + x0.real ** 2 + x0.imag ** 2)
        ax0 = abs(x0)
        phase = x0 / ax0 if ax0 > 0.0 else 1.0 + 0.0j
        alpha = -phase * xnorm
        v[0] = x0 - alpha
        for i in range(1, m):
            v[i] = h[k + 1 + i, k]
        vnorm = 0.0
        for i in range(m):
            vnorm += v[i].real ** 2 + v[i].imag ** 2
        vnorm = math.sqrt(vnorm)
        for i in range(m):
            v[i] /= vnorm
        # left: rows k+1.., columns k..
        for j in range(k, n):
            s = 0.0j
            for i in range(m):
                s += v[i].conjugate() * h[k + 1 + i, j]
            s *= 2.0
            for i in range(m):
                h[k + 1 + i, j] -= v[i] * s
        # right: all rows, columns k+1..
        for r in range(n):
            s = 0.0j
            for i in range(m):
                s += h[r, k + 1 + i] * v[i]
            s *= 2.0
            for i in range(m):
                h[r, k + 1 + i] -= s * v[i].conjugate()
        h[k + 1, k] = alpha
        for i in range(k + 2, n):
            h[i, k] = 0.0
    return h


def _hessenberg_numpy(h):
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k]
        tail = float(np.vdot(x[1:], x[1:]).real)
        if tail == 0.0:
            continue
        x0 = x[0]
        xnorm = math.sqrt(tail + abs(x0) ** 2)
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        alpha = -phase * xnorm
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        h[k + 1 :, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v.conj())
        h[k + 1, k] = alpha
        h[k + 2 :, k] = 0.0
    return h


# ---------------------------------------------------------------------------
# Shifted QR iteration on a complex Hessenberg matrix (eigenvalues only)
# ---------------------------------------------------------------------------


def _shift_py(a, b, c, d):
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    mu1 = d - b * c / (half + disc) if (half + disc) != 0 else d
    mu2 = d - b * c / (half - disc) if (half - disc) != 0 else d
    if abs(mu1 - d) <= abs(mu2 - d):
        return mu1
    return mu2


_wilkinson_shift = jit(_shift_py)


def _hqr_loop(h, tol, max_sweeps, anorm):
    n = h.shape[0]
    eig = np.zeros(n, dtype=np.complex128)
    cs = np.zeros(n, dtype=np.complex128)
    ss = np.zeros(n, dtype=np.complex128)
    hi = n - 1
    sweeps = 0
    its = 0
    converged = True
    while hi >= 0:
        lo = 0
        for k in range(hi, 0, -1):
            sub = abs(h[k, k - 1])
            scale = abs(h[k - 1, k - 1]) + abs(h[k, k])
            if scale == 0.0:
                scale = anorm
            if sub <= tol * scale or sub < _TINY:
                h[k, k - 1] = 0.0
                lo = k
                break
        if lo == hi:
            eig[hi] = h[hi, hi]
            hi -= 1
            its = 0
            continue
        if sweeps >= max_sweeps:
            converged = False
            for k in range(hi + 1):
                eig[k] = h[k, k]
            break
        sweeps += 1
        its += 1
        if its % 11 == 10:
            mu = h[hi, hi] + abs(h[hi, hi - 1].real)
            if hi - 2 >= lo:
                mu += abs(h[hi - 1, hi - 2].real)
        else:
            mu = _wilkinson_shift(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        for k in range(lo, hi + 1):
            h[k, k] -= mu
        for k in range(lo, hi):
            a = h[k, k]
            b = h[k + 1, k]
            r = math.sqrt(a.real ** 2 + a.imag ** 2 + b.real ** 2 + b.imag ** 2)
            if r == 0.0:
                c = 1.0 + 0.0j
                s = 0.0j
            else:
                c = a / r
                s = b / r
            cs[k] = c
            ss[k] = s
            cc = c.conjugate()
            sc = s.conjugate()
            for j in range(k, hi + 1):
                top = h[k, j]
                bot = h[k + 1, j]
                h[k, j] = cc * top + sc * bot
                h[k + 1, j] = -s * top + c * bot
        for k in range(lo, hi):
            c = cs[k]
            s = ss[k]
            cc = c.conjugate()
            sc = s.conjugate()
            last = k + 1 if k + 1 < hi else hi
            for i in range(lo, last + 1):
                left = h[i, k]
                right = h[i, k + 1]
                h[i, k] = left * c + right * s
                h[i, k + 1] = -left * sc + right * cc
        for k in range(lo, hi + 1):
            h[k, k] += mu
    return eig, converged, sweeps


def _hqr_numpy(h, tol, max_sweeps, anorm):
    n = h.shape[0]
    eig = np.zeros(n, dtype=np.complex128)
    hi = n - 1
    sweeps = 0
    its = 0
    converged = True
    while hi >= 0:
        lo = 0
        if hi > 0:
            idx = np.arange(hi, 0, -1)
            sub = np.abs(h[idx, idx - 1])
            scale = np.abs(h[idx - 1, idx - 1]) + np.abs(h[idx, idx])
            scale = np.where(scale == 0.0, anorm, scale)
            hit = np.flatnonzero((sub <= tol * scale) | (sub < _TINY))
            if hit.size:
                k = int(idx[hit[0]])
                h[k, k - 1] = 0.0
                lo = k
        if lo == hi:
            eig[hi] = h[hi, hi]
            hi -= 1
            its = 0
            continue
        if sweeps >= max_sweeps:
            converged = False
            eig[: hi + 1] = np.diag(h)[: hi + 1]
            break
        sweeps += 1
        its += 1
        if its % 11 == 10:
            mu = h[hi, hi] + abs(h[hi, hi - 1].real)
            if hi - 2 >= lo:
                mu += abs(h[hi - 1, hi - 2].real)
        else:
            mu = _shift_py(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        diag = np.arange(lo, hi + 1)
        h[diag, diag] -= mu
        rots = []
        for k in range(lo, hi):
            a = h[k, k]
            b = h[k + 1, k]
            r = math.hypot(abs(a), abs(b))
            if r == 0.0:
                c, s = 1.0 + 0.0j, 0.0j
            else:
                c, s = a / r, b / r
            rots.append((c, s))
            top = h[k, k : hi + 1].copy()
            bot = h[k + 1, k : hi + 1]
            h[k, k : hi + 1] = c.conjugate() * top + s.conjugate() * bot
            h[k + 1, k : hi + 1] = -s * top + c * bot
        for k, (c, s) in zip(range(lo, hi), rots):
            last = min(k + 1, hi)
            left = h[lo : last + 1, k].copy()
            right = h[lo : last + 1, k + 1]
            h[lo : last + 1, k] = left * c + right * s
            h[lo : last + 1, k + 1] = -left * s.conjugate() + right * c.conjugate()
        h[diag, diag] += mu
    return eig, converged, sweeps


# ---------------------------------------------------------------------------
# Hermitian -> real symmetric tridiagonal
# ---------------------------------------------------------------------------


def _tridiag_loop(a):
    n = a.shape[0]
    v = np.zeros(n, dtype=np.complex128)
    p = np.zeros(n, dtype=np.complex128)
    for k in range(n - 2):
        m = n - k - 1
        tail = 0.0
        for i in range(k + 2, n):
            tail += a[i, k].real ** 2 + a[i, k].imag ** 2
        if tail == 0.0:
            continue
        x0 = a[k + 1, k]
        xnorm = math.sqrt(tail + x0.real ** 2 + x0.imag ** 2)
        ax0 = abs(x0)
        phase = x0 / ax0 if ax0 > 0.0 else 1.0 + 0.0j
        alpha = -phase * xnorm
        v[0] = x0 - alpha
        for i in range(1, m):
            v[i] = a[k + 1 + i, k]
        vnorm = 0.0
        for i in range(m):
            vnorm += v[i].real ** 2 + v[i].imag ** 2
        vnorm = math.sqrt(vnorm)
        for i in range(m):
            v[i] /= vnorm
        for i in range(m):
            s = 0.0j
            for j in range(m):
                s += a[k + 1 + i, k + 1 + j] * v[j]
            p[i] = s
        kk = 0.0j
        for i in range(m):
            kk += v[i].conjugate() * p[i]
        for i in range(m):
            p[i] -= kk * v[i]
        for i in range(m):
            vi2 = 2.0 * v[i]
            pi2 = 2.0 * p[i]
            for j in range(m):
                a[k + 1 + i, k + 1 + j] -= vi2 * p[j].conjugate() + pi2 * v[j].conjugate()
        a[k + 1, k] = alpha
        a[k, k + 1] = alpha.conjugate()
        for i in range(k + 2, n):
            a[i, k] = 0.0
            a[k, i] = 0.0
    d = np.zeros(n)
    e = np.zeros(n)
    for i in range(n):
        d[i] = a[i, i].real
    for i in range(1, n):
        e[i] = abs(a[i, i - 1])
    return d, e


def _tridiag_numpy(a):
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1 :, k]
        tail = float(np.vdot(x[1:], x[1:]).real)
        if tail == 0.0:
            continue
        x0 = x[0]
        xnorm = math.sqrt(tail + abs(x0) ** 2)
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        alpha = -phase * xnorm
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        sub = a[k + 1 :, k + 1 :]
        p = sub @ v
        p -= np.vdot(v, p) * v
        sub -= 2.0 * (np.outer(v, p.conj()) + np.outer(p, v.conj()))
        a[k + 1, k] = alpha
        a[k, k + 1] = np.conj(alpha)
        a[k + 2 :, k] = 0.0
        a[k, k + 2 :] = 0.0
    d = np.diag(a).real.copy()
    e = np.zeros(n)
    e[1:] = np.abs(np.diag(a, -1))
    return d, e


# ---------------------------------------------------------------------------
# Implicit-shift QL on a real symmetric tridiagonal matrix
# ---------------------------------------------------------------------------


def _tql_loop(d, e, tol, max_iter):
    """Eigenvalues of the tridiagonal (d, e[1:]); ``e[i]`` couples i-1 and i.

    Returns the number of iterations spent, or -1 if ``max_iter`` was hit.
    """
    n = d.shape[0]
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    total = 0
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= tol * dd or abs(e[m]) < _TINY:
                    break
                m += 1
            if m == l:
                break
            if it >= max_iter:
                return -1
            it += 1
            total += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return total


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

hessenberg_numba = jit(_hessenberg_loop) if HAVE_NUMBA else None
hqr_numba = jit(_hqr_loop) if HAVE_NUMBA else None
tridiag_numba = jit(_tridiag_loop) if HAVE_NUMBA else None
tql_numba = jit(_tql_loop) if HAVE_NUMBA else None

if HAVE_NUMBA:
    hessenberg = hessenberg_numba
    hqr = hqr_numba
    tridiagonalize = tridiag_numba
    tql = tql_numba
else:
    hessenberg = _hessenberg_numpy
    hqr = _hqr_numpy
    tridiagonalize = _tridiag_numpy
    tql = _tql_loop

hessenberg_numpy = _hessenberg_numpy
hqr_numpy = _hqr_numpy
tridiag_numpy = _tridiag_numpy
tql_python = _tql_loop
