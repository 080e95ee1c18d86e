"""Nikiforov-Uvarov reduction for hypergeometric-type equations.

Solves ``psi'' + (tau~/sigma) psi' + (sigma~/sigma**2) psi = 0`` where the
unknown energy enters ``sigma~`` through its constant term only::

    sigma~(y; E) = sigma_tilde_base(y) + energy_coeff * E

The pipeline is the textbook one: make the quadratic under the square root
of ``pi`` a perfect square (this fixes ``k``), pick the sign of ``pi`` whose
``tau = tau~ + 2 pi`` decreases, and equate ``lambda = k + pi'`` with
``lambda_n = -n tau' - n (n - 1) sigma'' / 2``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable

from .errors import DegenerateProblem, NoBoundStateBranch, NonAffineEnergy
from .model import PhysParams


@dataclass(frozen=True)
class ComplexPoly:
    """Polynomial with complex coefficients in ascending degree."""

    coeffs: tuple[complex, ...] = (0j,)

    def __post_init__(self):
        c = [complex(x) for x in self.coeffs] or [0j]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def of(cls, *coeffs: complex) -> "ComplexPoly":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports 0."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0j,)

    def coeff(self, i: int) -> complex:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0j

    def __add__(self, other) -> "ComplexPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ComplexPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "ComplexPoly":
        return self.scale(-1)

    def __sub__(self, other) -> "ComplexPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "ComplexPoly":
        return _as_poly(other) - self

    def scale(self, factor: complex) -> "ComplexPoly":
        return ComplexPoly(tuple(factor * c for c in self.coeffs))

    def __mul__(self, other) -> "ComplexPoly":
        if not isinstance(other, ComplexPoly):
            return self.scale(complex(other))
        out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ComplexPoly(tuple(out))

    __rmul__ = __mul__

    def derivative(self) -> "ComplexPoly":
        if len(self.coeffs) == 1:
            return ComplexPoly()
        return ComplexPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def __call__(self, y: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def __repr__(self) -> str:
        return f"ComplexPoly{self.coeffs}"


def _as_poly(x) -> ComplexPoly:
    return x if isinstance(x, ComplexPoly) else ComplexPoly((complex(x),))


Y = ComplexPoly.of(0, 1)


@dataclass(frozen=True)
class NUProblem:
    sigma: ComplexPoly
    tau_tilde: ComplexPoly
    sigma_tilde_base: ComplexPoly
    energy_coeff: complex
    name: str = ""

    def __post_init__(self):
        if self.sigma.degree > 2 or self.sigma.is_zero():
            raise ValueError("sigma must be a nonzero polynomial of degree <= 2")
        if self.tau_tilde.degree > 1:
            raise ValueError("tau_tilde must have degree <= 1")
        if self.sigma_tilde_base.degree > 2:
            raise ValueError("sigma_tilde_base must have degree <= 2")
        if self.energy_coeff == 0:
            raise ValueError("energy_coeff must be nonzero: the energy has to enter the equation")

    @property
    def half_drift(self) -> ComplexPoly:
        """``(sigma' - tau~) / 2``, the part of ``pi`` outside the square root."""
        return (self.sigma.derivative() - self.tau_tilde).scale(0.5)

    def radicand(self, k: complex, energy: complex) -> ComplexPoly:
        """``((sigma' - tau~)/2)^2 - sigma~ + k sigma`` at fixed ``k`` and ``E``."""
        c = self.half_drift
        return c * c - self.sigma_tilde_base - self.energy_coeff * energy + self.sigma.scale(k)


@dataclass(frozen=True)
class KRoot:
    """One solution ``k(E)`` of the perfect-square condition."""

    fn: Callable[[complex], complex] = field(compare=False)
    affine: tuple[complex, complex] | None = None

    def __call__(self, energy: complex) -> complex:
        if self.affine is not None:
            return self.affine[0] + self.affine[1] * energy
        return self.fn(energy)


def _quadratic_parts(problem: NUProblem):
    c = problem.half_drift
    u = c * c - problem.sigma_tilde_base
    v = problem.sigma
    return [u.coeff(i) for i in range(3)], [v.coeff(i) for i in range(3)], problem.energy_coeff


def discriminant_condition(problem: NUProblem) -> list[KRoot]:
    """All ``k`` making ``q1**2 - 4 q2 q0`` vanish, as functions of ``E``."""
    (u0, u1, u2), (v0, v1, v2), eps = _quadratic_parts(problem)
    if u2 == 0 and v2 == 0 and u1 == 0 and v1 == 0:
        raise DegenerateProblem("DegenerateProblem: radicand has no y-dependence, nothing to factor")

    # D(k, E) = A k^2 + B(E) k + C(E)
    a_k = v1 * v1 - 4 * v2 * v0

    def b_k(e):
        return 2 * u1 * v1 - 4 * (u2 * v0 + v2 * (u0 - eps * e))

    def c_k(e):
        return u1 * u1 - 4 * u2 * (u0 - eps * e)

    if a_k == 0 and v2 == 0:
        b = b_k(0)
        if b == 0:
            raise DegenerateProblem("DegenerateProblem: perfect-square condition does not involve k")
        k0 = -c_k(0) / b
        k1 = -4 * u2 * eps / b
        return [KRoot(fn=lambda e, k0=k0, k1=k1: k0 + k1 * e, affine=(k0, k1))]

    if a_k == 0:

        def linear(e):
            return -c_k(e) / b_k(e)

        return [KRoot(fn=linear)]

    def root(sign):
        def fn(e):
            b, c = b_k(e), c_k(e)
            return (-b + sign * cmath.sqrt(b * b - 4 * a_k * c)) / (2 * a_k)

        return fn

    return [KRoot(fn=root(+1)), KRoot(fn=root(-1))]


@dataclass(frozen=True)
class Branch:
    pi_poly: ComplexPoly
    tau: ComplexPoly
    alpha: complex

    @property
    def tau_slope(self) -> complex:
        return self.tau.coeff(1)


def select_branch(problem: NUProblem, k_root: KRoot, energy: complex = 0j) -> Branch:
    """Sign of ``pi`` for which ``Re tau' < 0``.

    When both signs qualify the steeper one wins.  ``energy`` only matters for
    non-affine roots; for constant ``sigma`` the branch does not depend on it.
    """
    k = k_root(energy)
    q = problem.radicand(k, energy)
    q0, q1, q2 = q.coeff(0), q.coeff(1), q.coeff(2)
    if q2 != 0:
        a = cmath.sqrt(q2)
        b = q1 / (2 * a)
    else:
        a = 0j
        b = cmath.sqrt(q0)
    root_poly = ComplexPoly.of(b, a)
    best = None
    for sign in (+1, -1):
        pi_poly = problem.half_drift + root_poly.scale(sign)
        tau = problem.tau_tilde + pi_poly.scale(2)
        slope = tau.coeff(1)
        if slope.real < 0 and (best is None or slope.real < best.tau_slope.real):
            best = Branch(pi_poly, tau, a)
    if best is None:
        raise NoBoundStateBranch(
            "NoBoundStateBranch: neither sign of pi gives Re(tau') < 0 "
            f"(sqrt(q2) = {a:.6g}); the problem has no normalizable polynomial solutions"
        )
    return best


def lambda_n(problem: NUProblem, branch: Branch, n: int) -> complex:
    return -n * branch.tau_slope - n * (n - 1) * problem.sigma.coeff(2)


@dataclass(frozen=True)
class NUSolution:
    k: tuple[complex, complex] | None
    pi_poly: ComplexPoly
    tau: ComplexPoly
    alpha: complex
    beta_note: tuple[complex, complex]
    lambda_affine: tuple[complex, complex] | None
    levels: tuple[complex, ...]


def _secant(f, e0, e1, tol=1e-12, max_iter=100):
    f0, f1 = f(e0), f(e1)
    for _ in range(max_iter):
        if f1 == f0:
            break
        e2 = e1 - f1 * (e1 - e0) / (f1 - f0)
        if abs(e2 - e1) <= tol * max(1.0, abs(e2)):
            return e2
        e0, f0 = e1, f1
        e1, f1 = e2, f(e2)
    raise NonAffineEnergy(
        "NonAffineEnergy: secant did not converge in 100 iterations; "
        "supply a better initial guess or restate the problem with affine energy dependence"
    )


def energy_levels(
    problem: NUProblem,
    n_max: int,
    guess: Callable[[int], complex] | None = None,
) -> list[complex]:
    """``E_n`` for ``n = 0..n_max``."""
    return list(solve(problem, n_max, guess).levels)


def solve(problem: NUProblem, n_max: int, guess: Callable[[int], complex] | None = None) -> NUSolution:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    roots = discriminant_condition(problem)
    (u0, _, _), _, eps = _quadratic_parts(problem)
    beta = (-u0, eps)
    if guess is None:
        guess = lambda n: n + 0.5  # noqa: E731

    first = roots[0]
    if first.affine is not None:
        branch = select_branch(problem, first)
        k0, k1 = first.affine
        lam0 = k0 + branch.pi_poly.derivative().coeff(0)
        lam1 = k1
        levels = tuple((lambda_n(problem, branch, n) - lam0) / lam1 for n in range(n_max + 1))
        return NUSolution((k0, k1), branch.pi_poly, branch.tau, branch.alpha, beta, (lam0, lam1), levels)

    last_error: Exception | None = None
    for root in roots:
        try:
            levels = []
            for n in range(n_max + 1):

                def mismatch(e, n=n, root=root):
                    br = select_branch(problem, root, e)
                    return root(e) + br.pi_poly.derivative().coeff(0) - lambda_n(problem, br, n)

                e0 = complex(guess(n))
                levels.append(_secant(mismatch, e0, e0 * (1 + 1e-3) + 1e-3))
            branch = select_branch(problem, root, levels[0])
            return NUSolution(None, branch.pi_poly, branch.tau, branch.alpha, beta, None, tuple(levels))
        except (NoBoundStateBranch, NonAffineEnergy, ZeroDivisionError) as exc:
            last_error = exc
    if isinstance(last_error, NoBoundStateBranch):
        raise last_error
    raise NonAffineEnergy(str(last_error) if last_error else "NonAffineEnergy: no root converged")


def reconstruction_defect(problem: NUProblem, solution: NUSolution) -> float:
    """Largest relative mismatch of ``k(E_n) + pi' = lambda_n`` over the levels."""
    roots = discriminant_condition(problem)
    worst = 0.0
    for n, e in enumerate(solution.levels):
        best = None
        for root in roots:
            try:
                br = select_branch(problem, root, e)
            except NoBoundStateBranch:
                continue
            lhs = root(e) + br.pi_poly.derivative().coeff(0)
            rhs = lambda_n(problem, br, n)
            err = abs(lhs - rhs) / max(1.0, abs(rhs))
            best = err if best is None else min(best, err)
        worst = max(worst, float("inf") if best is None else best)
    return worst


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

PRESETS = ("plain-ho", "damped-sym-corrected", "damped-sym-printed", "damped-naive")


def preset(name: str, params: PhysParams) -> NUProblem:
    """Ready-made problems in the position representation.

    ``damped-sym-corrected`` is the equation that actually follows from the
    symmetrized Hamiltonian (``+ i hbar lambda / 4`` inside the bracket);
    ``damped-sym-printed`` flips that sign; ``damped-naive`` drops the
    constant altogether (the ``y p`` ordering).
    """
    m, w, lam, hb = params.m, params.omega, params.lambda_damp, params.hbar
    eps = 2 * m / hb ** 2
    spring = ComplexPoly.of(0, 0, -(m * w / hb) ** 2)
    if name == "plain-ho":
        return NUProblem(ComplexPoly.of(1), ComplexPoly(), spring, eps, name)
    drift = ComplexPoly.of(0, 1j * m * lam / hb)
    constants = {
        "damped-sym-corrected": eps * (1j * hb * lam / 4),
        "damped-sym-printed": eps * (-1j * hb * lam / 4),
        "damped-naive": 0j,
    }
    if name not in constants:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return NUProblem(ComplexPoly.of(1), drift, spring + constants[name], eps, name)


def preset_guess(params: PhysParams) -> Callable[[int], complex]:
    return lambda n: params.hbar * params.omega * (n + 0.5)


def solve_preset(name: str, params: PhysParams, n_max: int) -> NUSolution:
    return solve(preset(name, params), n_max, preset_guess(params))
