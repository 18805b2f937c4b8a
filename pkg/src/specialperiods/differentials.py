"""Coefficients of primitive differentials in the normalized basis.

A charge (n, m) labels the unique holomorphic one-differential whose cycle
periods all have imaginary part in pi * Z.  Everything here is expressed
through its coefficient vector c in the basis normalized against the
alpha cycles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .siegel import CyclePair, LatticeCharge, PeriodMatrix

PI = np.pi


def lattice_image(omega: PeriodMatrix, charge: LatticeCharge) -> np.ndarray:
    """Complex image m - Omega n of an integer charge."""
    return charge.m_vec - omega.entries @ charge.n_vec


@dataclass(frozen=True, eq=False)
class DifferentialCoeffs:
    """Coefficient vector of one primitive differential, with its charge."""

    c: np.ndarray
    charge: LatticeCharge

    def __post_init__(self):
        self.c.setflags(write=False)

    @property
    def a(self) -> np.ndarray:
        return self.c.real

    @property
    def b(self) -> np.ndarray:
        return self.c.imag

    @property
    def degenerate(self) -> bool:
        return self.charge.is_zero


def primitive_coeffs(omega: PeriodMatrix, charge: LatticeCharge) -> DifferentialCoeffs:
    """Coefficients c_k = pi * sum_j (m - conj(Omega) n)_j (Im Omega)^{-1}_{jk}.

    The real and imaginary parts are assembled separately so that
    Im c_k = pi * n_k holds exactly, not merely to rounding.
    """
    n, m = charge.n_vec, charge.m_vec
    real = PI * (omega.imag_inverse @ (m - omega.real_part @ n))
    c = real + 1j * (PI * n)
    return DifferentialCoeffs(c=c, charge=charge)


@dataclass(frozen=True, eq=False)
class DMatrix:
    """Charge-weighted matrix D_kj = m_k delta_kj - n_k conj(Omega)_kj."""

    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)


def d_matrix(omega: PeriodMatrix, charge: LatticeCharge) -> DMatrix:
    n, m = charge.n_vec, charge.m_vec
    entries = np.diag(m).astype(complex) - n[:, None] * omega.entries.conj()
    return DMatrix(entries=entries)


@dataclass(frozen=True, eq=False)
class EtaBasis:
    """Coefficient rows of the two distinguished bases eta1, eta2.

    Row j of ``eta1`` holds the coefficients of the j-th differential whose
    beta periods have imaginary part pi * delta_jk; ``eta2`` is the companion
    basis with the roles of alpha and beta periods exchanged.
    """

    eta1: np.ndarray
    eta2: np.ndarray

    def __post_init__(self):
        self.eta1.setflags(write=False)
        self.eta2.setflags(write=False)


def eta_bases(omega: PeriodMatrix) -> EtaBasis:
    h = omega.genus
    eta1 = PI * omega.imag_inverse.astype(complex)
    eta2 = PI * (1j * np.eye(h) - omega.real_part @ omega.imag_inverse)
    return EtaBasis(eta1=eta1, eta2=eta2)


def period_of(omega: PeriodMatrix, coeffs, cycle: CyclePair) -> complex:
    """Period of sum_k coeffs_k omega_k over the cycle p.alpha + q.beta."""
    coeffs = np.asarray(coeffs, dtype=complex)
    return complex(coeffs @ (cycle.p_vec + omega.entries @ cycle.q_vec))


def eta_decomposition_residual(omega: PeriodMatrix, charge: LatticeCharge) -> float:
    """Residual of c_{n,m} = m . eta1 + n . eta2."""
    basis = eta_bases(omega)
    recombined = charge.m_vec @ basis.eta1 + charge.n_vec @ basis.eta2
    return float(np.max(np.abs(primitive_coeffs(omega, charge).c - recombined)))


def eta_row_identity_residual(omega: PeriodMatrix) -> float:
    """Residual of eta2 = -conj(Omega) eta1, row by row."""
    basis = eta_bases(omega)
    return float(np.max(np.abs(basis.eta2 + omega.entries.conj() @ basis.eta1)))


def eta_period_residual(omega: PeriodMatrix) -> float:
    """Residual of the imaginary-part period normalizations of eta1 and eta2.

    The alpha periods of eta1 are real, its beta periods have imaginary part
    pi * delta_jk, and eta2 satisfies the transposed pattern.
    """
    h = omega.genus
    basis = eta_bases(omega)
    worst = 0.0
    eye = np.eye(h)
    for j in range(h):
        for k in range(h):
            alpha = CyclePair(q=(0,) * h, p=tuple(eye[k].astype(int)))
            beta = CyclePair(q=tuple(eye[k].astype(int)), p=(0,) * h)
            worst = max(worst, abs(period_of(omega, basis.eta1[j], alpha).imag))
            worst = max(
                worst, abs(period_of(omega, basis.eta1[j], beta).imag - PI * eye[j, k])
            )
            worst = max(
                worst, abs(period_of(omega, basis.eta2[j], alpha).imag - PI * eye[j, k])
            )
            worst = max(worst, abs(period_of(omega, basis.eta2[j], beta).imag))
    return worst


def d_matrix_contraction_residual(omega: PeriodMatrix, charge: LatticeCharge) -> float:
    """Residual of c_k = pi * sum_{j,l} D_jl (Im Omega)^{-1}_{lk}."""
    d = d_matrix(omega, charge).entries
    contracted = PI * (d.sum(axis=0) @ omega.imag_inverse)
    return float(np.max(np.abs(contracted - primitive_coeffs(omega, charge).c)))
