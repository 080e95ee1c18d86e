import numpy as np
import pytest

from dampedqho import gauge
from dampedqho.errors import DimensionMismatch, NotUnitaryDiagonal
from dampedqho.model import OrderingScheme
from dampedqho.operators import FockBasis, Grid, build_hamiltonian


def test_completed_square_fock(unit):
    assert gauge.completed_square_defect(FockBasis(64, 1.0), unit) <= 1e-12


@pytest.mark.parametrize("lam", [0.0, 0.7, 1.9])
def test_completed_square_fock_lambdas(unit, lam):
    assert gauge.completed_square_defect(FockBasis(40, 1.0), unit.replace(lambda_damp=lam)) <= 1e-12


def test_completed_square_grid_smooth_converges(unit):
    d = [gauge.completed_square_defect(Grid(10.0, n), unit, measure="smooth") for n in (201, 401, 801)]
    assert d[0] > d[1] > d[2]
    assert 3.5 <= d[1] / d[2] <= 4.5


def test_completed_square_grid_frobenius_does_not_converge(unit):
    # P@P and the 3-point stencil differ at the grid scale; Frobenius sees it
    a = gauge.completed_square_defect(Grid(10.0, 201), unit)
    b = gauge.completed_square_defect(Grid(10.0, 401), unit)
    assert a > 0.5 and b > 0.5


def test_conjugate_validation(unit):
    g = Grid(5.0, 11)
    h = build_hamiltonian(g, unit, OrderingScheme.SYMMETRIZED)
    with pytest.raises(NotUnitaryDiagonal):
        gauge.conjugate(h, 2 * np.eye(11))
    with pytest.raises(NotUnitaryDiagonal):
        gauge.conjugate(h, np.ones((11, 11)))
    with pytest.raises(DimensionMismatch):
        gauge.conjugate(h, np.eye(5))


def test_conjugate_preserves_spectrum(unit):
    g = Grid(5.0, 31)
    h = build_hamiltonian(g, unit, OrderingScheme.SYMMETRIZED)
    u = gauge.gauge_phase(g, unit)
    assert np.allclose(gauge.conjugate(h, u), u @ h @ u.conj().T)
    a = np.linalg.eigvalsh(h)
    b = np.linalg.eigvalsh(gauge.conjugate(h, u))
    assert np.allclose(a, b)


def test_hermite_functions_orthonormal(unit):
    g = Grid(12.0, 801)
    v = gauge.hermite_functions(g.nodes, 6, unit, 1.0)
    gram = v.T @ v * g.spacing
    assert np.allclose(gram, np.eye(6), atol=1e-10)


@pytest.mark.parametrize("lam", [0.5, 1.0, 1.5])
def test_gauge_second_order(unit, lam):
    rep = gauge.gauge_equivalence_defect(Grid(10.0, 401), unit.replace(lambda_damp=lam))
    assert 1.8 <= rep.order <= 2.2
    assert 1.8 <= rep.smooth_order <= 2.2
    assert not rep.exact


def test_gauge_eigenvalues_lambda_one(unit):
    rep = gauge.gauge_equivalence_defect(Grid(10.0, 401), unit)
    assert rep.eig_relative_dev <= 5e-3


def test_gauge_undamped_is_exact(unit):
    rep = gauge.gauge_equivalence_defect(Grid(10.0, 101), unit.replace(lambda_damp=0.0))
    assert rep.exact and rep.order is None


@pytest.mark.parametrize("lam", [0.5, 1.0, 1.5])
def test_wrong_variant_stands_out_on_smooth_states(unit, lam):
    p = unit.replace(lambda_damp=lam)
    good = gauge.gauge_equivalence_defect(Grid(10.0, 401), p)
    bad = gauge.gauge_equivalence_defect(Grid(10.0, 401), p, "lambda-sq-over-2")
    assert bad.smooth_defect >= 1e-2
    assert bad.smooth_defect > 10 * good.smooth_defect
    assert abs(bad.smooth_order) < 0.5


def test_gauge_rejects_overdamped(unit):
    with pytest.raises(ValueError):
        gauge.gauge_equivalence_defect(Grid(10.0, 101), unit.replace(lambda_damp=2.0))
    with pytest.raises(ValueError):
        gauge.gauge_equivalence_defect(Grid(10.0, 101), unit, "lambda-over-3")
