"""Physical parameters, damping regimes and the closed-form spectrum."""
from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass

CRITICAL_RTOL = 1e-12


@dataclass(frozen=True)
class PhysParams:
    """Mass, bare frequency, damping rate and action quantum."""

    m: float = 1.0
    omega: float = 1.0
    lambda_damp: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("m", "omega", "lambda_damp", "hbar"):
            val = getattr(self, name)
            if not isinstance(val, (int, float)) or val != val or val in (float("inf"), float("-inf")):
                raise ValueError(f"{name} must be a finite real number, got {val!r}")
        if self.m <= 0 or self.hbar <= 0:
            raise ValueError("m and hbar must be positive")
        if self.omega < 0 or self.lambda_damp < 0:
            raise ValueError("omega and lambda_damp must be non-negative")

    def replace(self, **changes) -> "PhysParams":
        data = {
            "m": self.m,
            "omega": self.omega,
            "lambda_damp": self.lambda_damp,
            "hbar": self.hbar,
        }
        data.update(changes)
        return PhysParams(**data)

    def to_dict(self) -> dict:
        return {"m": self.m, "omega": self.omega, "lambda": self.lambda_damp, "hbar": self.hbar}


class OrderingScheme(enum.Enum):
    YP = "yp"
    PY = "py"
    SYMMETRIZED = "sym"

    @classmethod
    def parse(cls, text: str) -> "OrderingScheme":
        key = text.strip().lower()
        aliases = {"yp": cls.YP, "py": cls.PY, "sym": cls.SYMMETRIZED, "symmetrized": cls.SYMMETRIZED}
        if key not in aliases:
            raise ValueError(f"unknown ordering {text!r}; expected yp, py or sym")
        return aliases[key]


class Regime(enum.Enum):
    UNDERDAMPED = "Underdamped"
    CRITICAL = "Critical"
    OVERDAMPED = "Overdamped"


def regime_of(params: PhysParams) -> Regime:
    two_w = 2.0 * params.omega
    lam = params.lambda_damp
    gap = (two_w - lam) / max(two_w, lam, 1.0)
    if abs(gap) <= CRITICAL_RTOL:
        return Regime.CRITICAL
    return Regime.UNDERDAMPED if gap > 0 else Regime.OVERDAMPED


def effective_frequency(params: PhysParams) -> complex:
    """Principal square root of ``omega**2 - lambda**2 / 4``.

    Inside the critical tolerance band the radicand is clamped to zero so the
    classification and the value never disagree.
    """
    if regime_of(params) is Regime.CRITICAL:
        return 0j
    radicand = params.omega ** 2 - params.lambda_damp ** 2 / 4.0
    if radicand >= 0:
        return complex(radicand ** 0.5, 0.0)
    # cmath.sqrt of a negative real with +0 imaginary part is +i*sqrt(|x|)
    return cmath.sqrt(complex(radicand, 0.0))


def analytic_energy(params: PhysParams, n: int) -> complex:
    """``hbar * sqrt(omega^2 - lambda^2/4) * (n + 1/2)`` on the principal branch.

    For ``lambda > 2 omega`` this is a formula-level continuation only: the
    quantum problem has a continuous spectrum there.
    """
    if n < 0:
        raise ValueError("level index must be >= 0")
    return params.hbar * effective_frequency(params) * (n + 0.5)


def ordering_shift(params: PhysParams, ordering: OrderingScheme) -> complex:
    """Constant ``c`` with ``H(ordering) = H(SYMMETRIZED) + c``.

    From ``(lam/2) y p = lam (y p + p y)/4 + (lam/4) [y, p]`` and ``[y, p] = i hbar``.
    """
    quarter = params.hbar * params.lambda_damp / 4.0
    if ordering is OrderingScheme.YP:
        return complex(0.0, quarter)
    if ordering is OrderingScheme.PY:
        return complex(0.0, -quarter)
    return 0j
