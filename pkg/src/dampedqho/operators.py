"""Matrix representations of y, p and the damped-oscillator Hamiltonian.

Two discretizations are supported: a uniform position grid with Dirichlet
walls (finite differences) and a truncated oscillator (Fock) basis.  In the
Fock basis every product is formed at ``n_basis + pad`` and cropped, so the
retained matrix elements of ``y p``, ``p y``, ``p^2`` and ``y^2`` are exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .linalg import hermiticity_defect  # noqa: F401  (re-exported)
from .model import OrderingScheme, PhysParams, effective_frequency


@dataclass(frozen=True)
class Grid:
    half_width: float
    n_points: int

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")
        if self.n_points < 3:
            raise ValueError("n_points must be >= 3")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.n_points - 1)

    @property
    def nodes(self) -> np.ndarray:
        x = np.linspace(-self.half_width, self.half_width, self.n_points)
        # exact mirror symmetry about 0
        return 0.5 * (x - x[::-1])

    def refined(self) -> "Grid":
        """Same box, half the spacing; the old nodes are a subset of the new ones."""
        return Grid(self.half_width, 2 * self.n_points - 1)

    @classmethod
    def for_params(cls, params: PhysParams, n_points: int = 801) -> "Grid":
        """Box wide enough that the ground-state tail is below ~1e-13."""
        radicand = max(params.omega ** 2 - params.lambda_damp ** 2 / 4.0, 1e-6 * params.omega ** 2)
        if radicand <= 0:
            radicand = 1e-6
        omega_eff = math.sqrt(radicand)
        return cls(8.0 / math.sqrt(params.m * omega_eff / params.hbar), n_points)


@dataclass(frozen=True)
class FockBasis:
    n_basis: int
    omega_basis: float
    pad: int = 2

    def __post_init__(self):
        if self.n_basis < 2:
            raise ValueError("n_basis must be >= 2")
        if self.pad < 2:
            raise ValueError("pad must be >= 2")
        if not self.omega_basis > 0:
            raise ValueError("omega_basis must be positive")

    @classmethod
    def for_params(cls, params: PhysParams, n_basis: int = 128, omega_basis: float | None = None) -> "FockBasis":
        return cls(n_basis, params.omega if omega_basis is None else omega_basis)

    @property
    def padded(self) -> int:
        return self.n_basis + self.pad


Context = Union[Grid, FockBasis]


def _fock_y(basis: FockBasis, params: PhysParams) -> np.ndarray:
    size = basis.padded
    off = np.sqrt(params.hbar * np.arange(1, size) / (2.0 * params.m * basis.omega_basis))
    y = np.zeros((size, size), dtype=np.complex128)
    idx = np.arange(size - 1)
    y[idx, idx + 1] = off
    y[idx + 1, idx] = off
    return y


def _fock_p(basis: FockBasis, params: PhysParams) -> np.ndarray:
    size = basis.padded
    off = np.sqrt(params.m * params.hbar * basis.omega_basis * np.arange(1, size) / 2.0)
    p = np.zeros((size, size), dtype=np.complex128)
    idx = np.arange(size - 1)
    p[idx, idx + 1] = -1j * off
    p[idx + 1, idx] = 1j * off
    return p


def _crop(a: np.ndarray, n: int) -> np.ndarray:
    return np.ascontiguousarray(a[:n, :n])


def position_matrix(ctx: Context, params: PhysParams) -> np.ndarray:
    if isinstance(ctx, Grid):
        return np.diag(ctx.nodes).astype(np.complex128)
    return _crop(_fock_y(ctx, params), ctx.n_basis)


def momentum_matrix(ctx: Context, params: PhysParams) -> np.ndarray:
    """``-i hbar d/dy``: central difference on a grid, ladder operators in Fock space."""
    if isinstance(ctx, Grid):
        n = ctx.n_points
        c = params.hbar / (2.0 * ctx.spacing)
        p = np.zeros((n, n), dtype=np.complex128)
        idx = np.arange(n - 1)
        p[idx, idx + 1] = -1j * c
        p[idx + 1, idx] = 1j * c
        return p
    return _crop(_fock_p(ctx, params), ctx.n_basis)


def kinetic_matrix(ctx: Context, params: PhysParams) -> np.ndarray:
    """``p^2 / 2m``.  On a grid this is the 3-point stencil, not ``P @ P``."""
    if isinstance(ctx, Grid):
        n = ctx.n_points
        h2 = ctx.spacing ** 2
        t = np.zeros((n, n), dtype=np.complex128)
        idx = np.arange(n)
        t[idx, idx] = params.hbar ** 2 / (params.m * h2)
        t[idx[:-1], idx[:-1] + 1] = -params.hbar ** 2 / (2.0 * params.m * h2)
        t[idx[:-1] + 1, idx[:-1]] = -params.hbar ** 2 / (2.0 * params.m * h2)
        return t
    p = _fock_p(ctx, params)
    return _crop(p @ p, ctx.n_basis) / (2.0 * params.m)


def position_squared(ctx: Context, params: PhysParams) -> np.ndarray:
    if isinstance(ctx, Grid):
        return np.diag(ctx.nodes ** 2).astype(np.complex128)
    y = _fock_y(ctx, params)
    return _crop(y @ y, ctx.n_basis)


def coupling_matrix(ctx: Context, params: PhysParams, ordering: OrderingScheme) -> np.ndarray:
    """The ``lambda * (y p)`` term under the requested operator ordering."""
    lam = params.lambda_damp
    if isinstance(ctx, Grid):
        y = position_matrix(ctx, params)
        p = momentum_matrix(ctx, params)
        yp, py = y @ p, p @ y
    else:
        y = _fock_y(ctx, params)
        p = _fock_p(ctx, params)
        yp = _crop(y @ p, ctx.n_basis)
        py = _crop(p @ y, ctx.n_basis)
    if ordering is OrderingScheme.YP:
        return 0.5 * lam * yp
    if ordering is OrderingScheme.PY:
        return 0.5 * lam * py
    return 0.25 * lam * (yp + py)


def build_hamiltonian(ctx: Context, params: PhysParams, ordering: OrderingScheme) -> np.ndarray:
    """``p^2/2m + m omega^2 y^2 / 2`` plus the ordered damping coupling."""
    potential = 0.5 * params.m * params.omega ** 2 * position_squared(ctx, params)
    h = kinetic_matrix(ctx, params) + potential
    if params.lambda_damp != 0.0:
        h = h + coupling_matrix(ctx, params, ordering)
    return h


def parity_matrix(n: int) -> np.ndarray:
    """Reflection ``y -> -y`` on a symmetric grid of ``n`` nodes."""
    return np.eye(n, dtype=np.complex128)[::-1].copy()


def effective_grid(params: PhysParams, n_points: int = 801) -> Grid:
    return Grid.for_params(params, n_points)


__all__ = [
    "Context",
    "FockBasis",
    "Grid",
    "build_hamiltonian",
    "coupling_matrix",
    "effective_frequency",
    "effective_grid",
    "hermiticity_defect",
    "kinetic_matrix",
    "momentum_matrix",
    "parity_matrix",
    "position_matrix",
    "position_squared",
]
