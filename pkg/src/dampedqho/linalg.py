"""Dense complex matrices and in-house eigensolvers.

Matrices are plain ``complex128`` numpy arrays.  Two solvers are provided:

* :func:`eig_general`: Householder reduction to Hessenberg form followed by
  Wilkinson-shifted QR with deflation, for arbitrary complex matrices;
* :func:`eig_hermitian`: Householder tridiagonalization followed by
  implicit-shift QL on the real symmetric tridiagonal core.

Both return a :class:`Spectrum` that carries trace-identity diagnostics so a
caller can judge the result without eigenvectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NonFiniteInput, NotHermitian

DEFAULT_TOL = 1e-12
HERMITIAN_DEFECT_MAX = 1e-10


def as_matrix(a) -> np.ndarray:
    """Validate and convert to a square, finite ``complex128`` array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteInput("matrix has NaN or Inf entries")
    return m


def sort_key(z: complex) -> tuple[float, float]:
    return (z.real, z.imag)


def canonical_sort(values) -> np.ndarray:
    """Sort ascending by real part, then imaginary part."""
    vals = np.asarray(values, dtype=np.complex128)
    order = np.lexsort((vals.imag, vals.real))
    return vals[order]


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    trace_defect: float
    trace2_defect: float
    converged: bool
    tol: float = DEFAULT_TOL
    sweeps: int = 0

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def lowest(self, count: int) -> np.ndarray:
        return self.eigenvalues[:count]


def _trace_defects(m: np.ndarray, eig: np.ndarray) -> tuple[float, float]:
    tr = np.trace(m)
    # trace(M @ M) without forming the product
    tr2 = np.sum(m * m.T)
    d1 = abs(np.sum(eig) - tr) / (1.0 + abs(tr))
    d2 = abs(np.sum(eig * eig) - tr2) / (1.0 + abs(tr2))
    return float(d1), float(d2)


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"DimensionMismatch: {a.shape} vs {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T.copy()


def frobenius_norm(a) -> float:
    m = np.asarray(a, dtype=np.complex128)
    return float(np.sqrt(np.sum(m.real ** 2 + m.imag ** 2)))


def hermiticity_defect(a) -> float:
    """``||A - A^H||_F / ||A||_F`` (0 for the zero matrix)."""
    m = as_matrix(a)
    return frobenius_norm(m - m.conj().T) / max(frobenius_norm(m), 1e-300)


def hessenberg_reduce(a) -> np.ndarray:
    """Unitarily similar upper-Hessenberg form (Householder reflections)."""
    m = as_matrix(a)
    return _kernels.hessenberg(m.copy())


def eig_general(a, tol: float = DEFAULT_TOL, max_sweeps: int | None = None) -> Spectrum:
    """All eigenvalues of a general complex matrix.

    Uses single-shift QR on the Hessenberg form.  A sweep budget overrun is
    reported through ``converged=False``; the diagonal left in the unconverged
    window is returned as-is so the caller can inspect it.
    """
    m = as_matrix(a)
    n = m.shape[0]
    if not 0.0 < tol <= 1e-4:
        raise ValueError("tol must lie in (0, 1e-4]")
    if max_sweeps is None:
        max_sweeps = 30 * n
    if max_sweeps < 1:
        raise ValueError("max_sweeps must be >= 1")
    anorm = frobenius_norm(m)
    h = _kernels.hessenberg(m.copy())
    eig, converged, sweeps = _kernels.hqr(h, float(tol), int(max_sweeps), max(anorm, 1e-300))
    eig = canonical_sort(eig)
    d1, d2 = _trace_defects(m, eig)
    return Spectrum(eig, d1, d2, bool(converged), tol, int(sweeps))


def eig_hermitian(a, tol: float = DEFAULT_TOL) -> Spectrum:
    m = as_matrix(a)
    defect = hermiticity_defect(m)
    if defect > HERMITIAN_DEFECT_MAX:
        raise NotHermitian(f"NotHermitian: hermiticity defect {defect:.3e} > {HERMITIAN_DEFECT_MAX:g}")
    n = m.shape[0]
    herm = 0.5 * (m + m.conj().T)
    d, e = _kernels.tridiagonalize(herm)
    iters = _kernels.tql(d, e, float(tol), 30 * max(n, 1))
    converged = iters >= 0
    eig = np.sort(d).astype(np.complex128)
    d1, d2 = _trace_defects(m, eig)
    return Spectrum(eig, d1, d2, converged, tol, max(int(iters), 0))


class ResidualCheck(NamedTuple):
    residual: float
    ok: bool


def inverse_iteration_residual(a, eigenvalue: complex, iterations: int = 4) -> ResidualCheck:
    """Residual ``||Av - lam v|| / ||A||_F`` of an eigenvector found by inverse iteration.

    The shift is pulled off the eigenvalue by ``1e-10 ||A||_F`` so the solve
    stays well posed; one retry with a further ``1e-12 ||A||_F`` nudge is made
    if the factorization is singular anyway.
    """
    m = as_matrix(a)
    n = m.shape[0]
    anorm = max(frobenius_norm(m), 1e-300)
    lam = complex(eigenvalue)
    eye = np.eye(n, dtype=np.complex128)
    rng = np.random.default_rng(12345)
    v0 = rng.normal(size=n) + 1j * rng.normal(size=n)
    v0 /= np.linalg.norm(v0)
    for nudge in (1e-10, 1e-10 + 1e-12):
        shift = lam + nudge * anorm
        try:
            v = v0
            for _ in range(iterations):
                w = np.linalg.solve(m - shift * eye, v)
                nrm = np.linalg.norm(w)
                if not math.isfinite(nrm) or nrm == 0.0:
                    raise np.linalg.LinAlgError("degenerate iterate")
                v = w / nrm
        except np.linalg.LinAlgError:
            continue
        res = np.linalg.norm(m @ v - lam * v) / anorm
        return ResidualCheck(float(res), True)
    return ResidualCheck(math.inf, False)
