"""Randomized identity suite over one period matrix, reported as residuals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import differentials, pairings
from .siegel import CyclePair, LatticeCharge, PeriodMatrix


@dataclass(frozen=True)
class IdentityResult:
    name: str
    max_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def _random_charge(rng, h: int, bound: int) -> LatticeCharge:
    return LatticeCharge(
        tuple(int(x) for x in rng.integers(-bound, bound + 1, size=h)),
        tuple(int(x) for x in rng.integers(-bound, bound + 1, size=h)),
    )


def run_identity_suite(
    omega: PeriodMatrix,
    trials: int = 200,
    seed: int = 0,
    charge_bound: int = 5,
    tol: float = 1e-9,
) -> list:
    """Worst residual of every structural identity over random integer data.

    Charges and cycles are drawn uniformly from [-bound, bound]; the
    per-matrix identities (the eta-basis ones) are folded in once.
    """
    rng = np.random.default_rng(seed)
    h = omega.genus
    worst: dict[str, float] = {}

    def record(name, value):
        worst[name] = max(worst.get(name, 0.0), float(value))

    for _ in range(trials):
        nm = _random_charge(rng, h, charge_bound)
        qp_charge = _random_charge(rng, h, charge_bound)
        cycle = CyclePair(qp_charge.n, qp_charge.m)

        record("herm-vs-period", pairings.herm_period_residual(omega, nm, cycle))
        record("herm-imag-integrality", pairings.imag_integrality_residual(omega, nm, cycle))
        record("herm-conjugation-shift", pairings.conjugation_residual(omega, nm, cycle))
        record("herm-basis-factorization", pairings.factorization_residual(omega, nm, cycle))
        record("real-product-symmetry", pairings.real_symmetry_residual(omega, nm, cycle))
        record("herm-vs-real-product", pairings.herm_real_link_residual(omega, nm, cycle))
        record("self-pairing-real", pairings.self_pairing_residual(omega, nm))
        record("real-product-coefficient-form", pairings.coeff_form_residual(omega, nm, cycle))
        record("wedge-vs-herm", pairings.wedge_herm_residual(omega, nm, qp_charge))
        record("wedge-order-defect", pairings.wedge_swap_residual(omega, nm, qp_charge))
        record("wedge-imag-antisymmetry", pairings.wedge_imag_swap_residual(omega, nm, qp_charge))
        record("coeffs-eta-decomposition", differentials.eta_decomposition_residual(omega, nm))
        record("duality-fixes-coefficients", pairings.duality_canonical_residual(omega, nm))
        if not nm.is_zero:
            record("winding-area-exponent", pairings.winding_area_residual(omega, nm))
            record("area-vs-real-product", pairings.area_real_product_residual(omega, nm))

    record("eta-period-normalization", differentials.eta_period_residual(omega))
    record("eta-row-identity", differentials.eta_row_identity_residual(omega))

    return [IdentityResult(name, value, tol) for name, value in worst.items()]


def positivity_sweep(omega: PeriodMatrix, bound: int):
    """Self real product over the full charge box.

    Returns (minimum over nonzero charges, value at zero).  Vectorized so the
    full box is affordable up to genus 3 and bound 3.
    """
    h = omega.genus
    side = np.arange(-bound, bound + 1, dtype=np.int64)
    grids = np.meshgrid(*([side] * (2 * h)), indexing="ij")
    flat = np.stack([g.ravel() for g in grids], axis=1)
    n_part = flat[:, :h].astype(float)
    m_part = flat[:, h:].astype(float)
    o1, o2 = omega.real_part, omega.imag_part
    left = m_part - n_part @ o1
    values = np.pi * (
        np.einsum("ij,jk,ik->i", left, omega.imag_inverse, left)
        + np.einsum("ij,jk,ik->i", n_part, o2, n_part)
    )
    zero_row = int(np.nonzero(~np.any(flat, axis=1))[0][0])
    at_zero = float(values[zero_row])
    values = np.delete(values, zero_row)
    return float(values.min()), at_zero
