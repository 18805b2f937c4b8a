import numpy as np
import pytest

from specialperiods import (
    AsymmetryError,
    DomainError,
    LatticeCharge,
    ModularMatrix,
    NotPositiveDefinite,
    modular_transform_charge,
    modular_transform_tau,
    random_modular_matrix,
    random_siegel_point,
    validate_period_matrix,
)


def test_genus_one_identity_imag():
    omega = validate_period_matrix([[1j]])
    assert omega.genus == 1
    assert omega.tau == 1j
    assert omega.imag_part[0, 0] == 1.0


def test_worked_genus_two_determinant():
    omega = validate_period_matrix([[1j, 0.5j], [0.5j, 2.5j]])
    # det of [[1, 0.5], [0.5, 2.5]] by hand
    assert np.linalg.det(omega.imag_part) == pytest.approx(2.25, abs=1e-14)


def test_indefinite_imag_rejected():
    # eigenvalues of [[1, 2], [2, 1]] are 3 and -1
    with pytest.raises(NotPositiveDefinite):
        validate_period_matrix([[1j, 2j], [2j, 1j]])


def test_asymmetry_detected_and_symmetrized():
    raw = np.array([[1j, 0.1 + 0.5j], [0.2 + 0.5j, 2j]])
    with pytest.raises(AsymmetryError):
        validate_period_matrix(raw, tol=1e-10)
    omega = validate_period_matrix(raw, tol=0.2)
    assert np.array_equal(omega.entries, omega.entries.T)


def test_imag_inverse_quality():
    omega = random_siegel_point(5, seed=3)
    defect = omega.imag_part @ omega.imag_inverse - np.eye(5)
    assert np.max(np.abs(defect)) < 1e-12


def test_entries_are_read_only():
    omega = validate_period_matrix([[1j]])
    with pytest.raises(ValueError):
        omega.entries[0, 0] = 0


def test_non_square_rejected():
    with pytest.raises(ValueError):
        validate_period_matrix(np.zeros((2, 3), dtype=complex))


def test_random_siegel_point_properties():
    tau = random_siegel_point(1, seed=0).tau
    assert tau.imag >= 1.0
    first = random_siegel_point(3, seed=7)
    second = random_siegel_point(3, seed=7)
    assert np.array_equal(first.entries, second.entries)
    assert random_siegel_point(2, seed=1).genus == 2


def test_modular_transform_tau_examples():
    ident = ModularMatrix.identity()
    assert modular_transform_tau(ident, 1j) == 1j
    inversion = ModularMatrix.inversion()
    assert modular_transform_tau(inversion, 1j) == pytest.approx(1j)
    shift = ModularMatrix.translation()
    assert modular_transform_tau(shift, 1j) == pytest.approx(1 + 1j)
    with pytest.raises(DomainError):
        modular_transform_tau(shift, 1 - 1j)


def test_modular_transform_charge_examples():
    ident = ModularMatrix.identity()
    charge = LatticeCharge((2,), (3,))
    assert modular_transform_charge(ident, charge) == charge
    shift = ModularMatrix.translation()
    assert modular_transform_charge(shift, LatticeCharge((1,), (0,))) == LatticeCharge((1,), (1,))
    inversion = ModularMatrix.inversion()
    assert modular_transform_charge(inversion, LatticeCharge((0,), (1,))) == LatticeCharge((1,), (0,))
    with pytest.raises(ValueError):
        modular_transform_charge(ident, LatticeCharge((1, 0), (0, 1)))


def test_moebius_preserves_upper_half_plane():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        gamma = random_modular_matrix(rng)
        tau = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3))
        moved = modular_transform_tau(gamma, tau)
        denom = gamma.c * tau + gamma.d
        assert moved.imag > 0
        assert moved.imag == pytest.approx(tau.imag / abs(denom) ** 2, rel=1e-12)


def test_modular_group_law():
    rng = np.random.default_rng(5)
    for _ in range(300):
        g1 = random_modular_matrix(rng)
        g2 = random_modular_matrix(rng)
        tau = complex(rng.uniform(-1, 1), rng.uniform(0.5, 2))
        chained = modular_transform_tau(g1, modular_transform_tau(g2, tau))
        composed = modular_transform_tau(g1 @ g2, tau)
        assert abs(chained - composed) < 1e-12


def test_modular_matrix_validation():
    with pytest.raises(ValueError):
        ModularMatrix(1, 1, 1, 1)
    gamma = ModularMatrix(2, 1, 1, 1)
    assert gamma @ gamma.inverse() == ModularMatrix.identity()


def test_lattice_charge_basics():
    charge = LatticeCharge((1, -2), (0, 3))
    assert charge.genus == 2
    assert not charge.is_zero
    assert (-charge).n == (-1, 2)
    assert LatticeCharge((0,), (0,)).is_zero
    with pytest.raises(ValueError):
        LatticeCharge((0.5,), (1,))
    with pytest.raises(ValueError):
        LatticeCharge((1, 2), (3,))
