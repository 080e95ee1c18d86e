import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dampedqho import _kernels, linalg
from dampedqho.errors import DimensionMismatch, NonFiniteInput, NotHermitian
from conftest import random_general, random_hermitian


def _match(ours, ref):
    ref = linalg.canonical_sort(ref)
    # pairwise nearest match is robust to ties in the real part
    return max(np.min(np.abs(ref - z)) for z in ours)


@pytest.mark.parametrize("n", [1, 2, 3, 10, 40])
def test_general_matches_numpy(rng, n):
    a = random_general(rng, n)
    spec = linalg.eig_general(a)
    assert spec.converged
    assert _match(spec.eigenvalues, np.linalg.eigvals(a)) < 1e-9
    assert spec.trace_defect < 1e-12 and spec.trace2_defect < 1e-12


@pytest.mark.parametrize("n", [1, 2, 5, 30, 64])
def test_hermitian_matches_numpy(rng, n):
    a = random_hermitian(rng, n)
    spec = linalg.eig_hermitian(a)
    assert spec.converged
    np.testing.assert_allclose(spec.eigenvalues.real, np.linalg.eigvalsh(a), atol=1e-10)
    assert np.all(spec.eigenvalues.imag == 0)


def test_general_and_hermitian_agree(rng):
    a = random_hermitian(rng, 50)
    g = linalg.eig_general(a).eigenvalues
    h = linalg.eig_hermitian(a).eigenvalues
    assert np.max(np.abs(g - h)) < 1e-9


def test_canonical_sort_ties():
    vals = linalg.canonical_sort([1 + 2j, 1 - 1j, 0.5 + 0j])
    assert list(vals) == [0.5, 1 - 1j, 1 + 2j]


def test_diagonal_and_jordan():
    assert list(linalg.eig_general(np.diag([3.0, 1.0, 2.0])).eigenvalues) == [1, 2, 3]
    j = np.array([[2.0, 1.0], [0.0, 2.0]])
    assert np.allclose(linalg.eig_general(j).eigenvalues, [2, 2])


def test_hessenberg_is_similar(rng):
    a = random_general(rng, 12)
    h = linalg.hessenberg_reduce(a)
    assert np.allclose(np.tril(h, -2), 0)
    assert np.trace(h) == pytest.approx(np.trace(a))
    assert linalg.frobenius_norm(h) == pytest.approx(linalg.frobenius_norm(a))


def test_nonconvergence_is_reported(rng):
    spec = linalg.eig_general(random_general(rng, 20), max_sweeps=1)
    assert not spec.converged


def test_input_validation():
    with pytest.raises(DimensionMismatch):
        linalg.eig_general(np.zeros((2, 3)))
    with pytest.raises(NonFiniteInput):
        linalg.eig_general(np.array([[np.nan]]))
    with pytest.raises(NotHermitian):
        linalg.eig_hermitian(np.array([[0, 1], [0, 0]]))
    with pytest.raises(DimensionMismatch):
        linalg.matmul(np.eye(2), np.eye(3))
    with pytest.raises(ValueError):
        linalg.eig_general(np.eye(2), tol=0.1)


def test_hermiticity_defect():
    assert linalg.hermiticity_defect(np.zeros((3, 3))) == 0.0
    assert linalg.hermiticity_defect(np.array([[0, 1j], [-1j, 0]])) == 0.0
    assert linalg.hermiticity_defect(np.array([[0, 1], [0, 0]])) == pytest.approx(np.sqrt(2))


def test_inverse_iteration(rng):
    a = random_hermitian(rng, 30)
    lam = linalg.eig_hermitian(a).eigenvalues[3]
    chk = linalg.inverse_iteration_residual(a, lam)
    assert chk.ok and chk.residual < 1e-8


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1, 12), seed=st.integers(0, 2 ** 31))
def test_trace_identities_property(n, seed):
    a = random_general(np.random.default_rng(seed), n)
    spec = linalg.eig_general(a)
    assert spec.converged
    assert spec.trace_defect < 1e-10 and spec.trace2_defect < 1e-10


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1, 12), seed=st.integers(0, 2 ** 31), shift=st.floats(-5, 5))
def test_shift_covariance_property(n, seed, shift):
    a = random_hermitian(np.random.default_rng(seed), n)
    base = linalg.eig_hermitian(a).eigenvalues
    moved = linalg.eig_hermitian(a + shift * np.eye(n)).eigenvalues
    assert np.allclose(moved, base + shift, atol=1e-9)


# kernel parity: compiled and numpy paths must agree to rounding

needs_numba = pytest.mark.skipif(_kernels.hqr_numba is None, reason="numba not active")


@needs_numba
def test_hessenberg_parity(rng):
    a = random_general(rng, 25)
    h1 = _kernels.hessenberg_numba(a.copy())
    h2 = _kernels.hessenberg_numpy(a.copy())
    assert np.allclose(h1, h2, atol=1e-12)


@needs_numba
def test_hqr_parity(rng):
    a = random_general(rng, 25)
    h = _kernels.hessenberg_numpy(a.copy())
    e1, c1, _ = _kernels.hqr_numba(h.copy(), 1e-12, 750, linalg.frobenius_norm(a))
    e2, c2, _ = _kernels.hqr_numpy(h.copy(), 1e-12, 750, linalg.frobenius_norm(a))
    assert c1 and c2
    assert np.max(np.abs(linalg.canonical_sort(e1) - linalg.canonical_sort(e2))) < 1e-10


@needs_numba
def test_tridiag_tql_parity(rng):
    a = random_hermitian(rng, 25)
    d1, e1 = _kernels.tridiag_numba(a.copy())
    d2, e2 = _kernels.tridiag_numpy(a.copy())
    assert np.allclose(d1, d2) and np.allclose(np.abs(e1), np.abs(e2))
    assert _kernels.tql_numba(d1, e1, 1e-12, 750) >= 0
    assert _kernels.tql_python(d2, e2, 1e-12, 750) >= 0
    assert np.allclose(np.sort(d1), np.sort(d2), atol=1e-10)
