import math

import pytest

from dampedqho.model import (
    OrderingScheme,
    PhysParams,
    Regime,
    analytic_energy,
    effective_frequency,
    ordering_shift,
    regime_of,
)


def test_undamped_ladder():
    p = PhysParams(m=2.0, omega=1.5, lambda_damp=0.0, hbar=0.7)
    for n in range(6):
        assert analytic_energy(p, n) == pytest.approx(0.7 * 1.5 * (n + 0.5))


def test_damped_frequency(unit):
    assert effective_frequency(unit) == pytest.approx(math.sqrt(0.75))
    assert analytic_energy(unit, 0) == pytest.approx(0.5 * math.sqrt(0.75))


@pytest.mark.parametrize(
    "lam,regime",
    [(0.0, Regime.UNDERDAMPED), (1.999, Regime.UNDERDAMPED), (2.0, Regime.CRITICAL), (2.0 + 1e-13, Regime.CRITICAL), (3.0, Regime.OVERDAMPED)],
)
def test_regimes(unit, lam, regime):
    assert regime_of(unit.replace(lambda_damp=lam)) is regime


def test_critical_is_exactly_zero(unit):
    crit = unit.replace(lambda_damp=2.0)
    assert all(analytic_energy(crit, n) == 0 for n in range(51))


def test_overdamped_principal_branch(unit):
    e = analytic_energy(unit.replace(lambda_damp=3.0), 0)
    assert e.real == 0.0
    assert e.imag == pytest.approx(0.5 * math.sqrt(1.25))


def test_ordering_shifts(unit):
    assert ordering_shift(unit, OrderingScheme.YP) == pytest.approx(0.25j)
    assert ordering_shift(unit, OrderingScheme.PY) == pytest.approx(-0.25j)
    assert ordering_shift(unit, OrderingScheme.SYMMETRIZED) == 0


@pytest.mark.parametrize("kw", [{"m": 0.0}, {"hbar": -1.0}, {"omega": -1.0}, {"lambda_damp": -0.1}, {"m": float("nan")}, {"omega": float("inf")}])
def test_invalid_params(kw):
    with pytest.raises(ValueError):
        PhysParams(**kw)


def test_negative_level(unit):
    with pytest.raises(ValueError):
        analytic_energy(unit, -1)


def test_ordering_parse():
    assert OrderingScheme.parse(" SYM ") is OrderingScheme.SYMMETRIZED
    assert OrderingScheme.parse("yp") is OrderingScheme.YP
    with pytest.raises(ValueError):
        OrderingScheme.parse("xy")


def test_to_dict_roundtrip(unit):
    d = unit.to_dict()
    assert d == {"m": 1.0, "omega": 1.0, "lambda": 1.0, "hbar": 1.0}
    assert unit.replace(lambda_damp=0.5).lambda_damp == 0.5
