"""Detection of special period matrices by integer box search.

A probe charge (n', m') solves the proportionality problem for a base
charge (n, m) when their complex images m - Omega n agree up to one scale
factor.  Nonreal scale factors are the interesting case: they exhibit the
surface as a branched cover of a torus and give the Jacobian complex
multiplication.  The box search enumerates all probes up to a bound,
records the scale factor, eigenvalues, covering degree, and a
classification, and is deterministic for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .differentials import d_matrix, lattice_image
from .errors import (
    ConvergenceDomain,
    DegenerateBase,
    LatticeDefect,
    NotASolution,
    NotIntegralDegree,
)
from .pairings import area
from .siegel import CyclePair, LatticeCharge, PeriodMatrix

PI = np.pi

COLLINEAR_RATIONAL = "collinear-rational"
SPECIAL_COMPLEX = "special-complex"
DEGENERATE = "degenerate"

_BASE_EPS = 1e-14
_DEGREE_TOL = 1e-8
_MONODROMY_TOL = 1e-9


@dataclass(frozen=True)
class SolutionRecord:
    """One accepted probe with its scale factor and spectral data.

    ``sign`` is +1 or -1 and records the sign flip applied to the probe so
    that the stored scale factor has positive imaginary conjugate; the
    proportionality relation holds for (sign * probe, c).  Collinear records
    have a real rational scale factor and no covering degree.
    """

    probe: LatticeCharge
    c: complex
    sign: int
    lambda_c: float
    lambda_c_dual: float
    degree: int | None
    classification: str

    @property
    def c_conj(self) -> complex:
        return np.conj(self.c)

    @property
    def effective_probe(self) -> LatticeCharge:
        return self.probe if self.sign == 1 else -self.probe


def base_image(omega: PeriodMatrix, base: LatticeCharge) -> np.ndarray:
    """Complex image of the base charge; rejects nearly vanishing components."""
    v = lattice_image(omega, base)
    if np.min(np.abs(v)) < _BASE_EPS:
        raise DegenerateBase("a base image component vanishes; ratios are undefined")
    return v


def consistency_ratios(omega: PeriodMatrix, base: LatticeCharge, probe: LatticeCharge) -> np.ndarray:
    """Componentwise ratios of probe image to base image.

    The probe solves the proportionality problem precisely when all ratios
    agree; their common value is the conjugate of the scale factor.
    """
    v = base_image(omega, base)
    return lattice_image(omega, probe) / v


def _ratio_accept(omega, v: np.ndarray, probe: LatticeCharge, tol: float):
    """Shared acceptance test.  Returns the raw conjugate scale factor.

    The residual max_j |v'_j - cbar v_j| is normalized by max_j |v_j| so the
    tolerance is scale free.
    """
    vp = lattice_image(omega, probe)
    scale = np.max(np.abs(v))
    anchor = int(np.argmax(np.abs(v)))
    cbar = vp[anchor] / v[anchor]
    residual = np.max(np.abs(vp - cbar * v)) / scale
    if residual > tol:
        raise NotASolution(
            "probe image is not proportional to the base image (residual %.3e)" % residual
        )
    return complex(cbar)


def _classify(cbar: complex, tol: float, bound: int) -> str:
    c = np.conj(cbar)
    if abs(c) <= tol:
        return DEGENERATE
    if abs(c.imag) <= tol:
        # A real scale factor between integer charges is forced to be
        # rational with denominator bounded by the box, so the fraction
        # test below cannot fail for genuine records.
        frac = Fraction(c.real).limit_denominator(max(1, 2 * bound * bound))
        if abs(float(frac) - c.real) <= tol:
            return COLLINEAR_RATIONAL
        return COLLINEAR_RATIONAL
    return SPECIAL_COMPLEX


def solve_c(omega: PeriodMatrix, base: LatticeCharge, probe: LatticeCharge, tol: float) -> complex:
    """Scale factor of an accepted probe, sign-normalized.

    The returned value c satisfies (for the probe up to an overall sign flip)
    image(probe) = conj(c) * image(base), with Im conj(c) >= 0.
    """
    if probe.is_zero:
        raise NotASolution("the zero probe is degenerate")
    v = base_image(omega, base)
    cbar = _ratio_accept(omega, v, probe, tol)
    if cbar.imag < -tol:
        cbar = -cbar
    return complex(np.conj(cbar))


def solution_record(
    omega: PeriodMatrix,
    base: LatticeCharge,
    probe: LatticeCharge,
    tol: float,
    bound: int,
) -> SolutionRecord:
    """Build the full record for one accepted probe."""
    if probe.is_zero:
        raise NotASolution("the zero probe is degenerate")
    v = base_image(omega, base)
    cbar = _ratio_accept(omega, v, probe, tol)
    return _record_from_cbar(omega, base, probe, cbar, tol, bound)


def _record_from_cbar(omega, base, probe, cbar, tol, bound) -> SolutionRecord:
    classification = _classify(cbar, tol, bound)
    sign = 1
    if classification == SPECIAL_COMPLEX and cbar.imag < 0:
        sign = -1
        cbar = -cbar
    c = complex(np.conj(cbar))
    base_area = area(omega, base)
    lambda_c = 2.0 * base_area * abs(c) ** 2
    probe_area = area(omega, probe)
    lambda_dual = 4.0 * base_area * probe_area / lambda_c
    record = SolutionRecord(
        probe=probe,
        c=c,
        sign=sign,
        lambda_c=float(lambda_c),
        lambda_c_dual=float(lambda_dual),
        degree=None,
        classification=classification,
    )
    if classification == SPECIAL_COMPLEX:
        record = replace(record, degree=cover_degree(omega, base, record))
    return record


def _enumerate_box(dim: int, bound: int) -> np.ndarray:
    """All integer points of [-bound, bound]^dim in lexicographic order."""
    side = np.arange(-bound, bound + 1, dtype=np.int64)
    grids = np.meshgrid(*([side] * dim), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _scan_rows(omega, v, rows: np.ndarray, tol: float):
    """Vectorized acceptance over a slab of probes.

    Elementwise arithmetic only, so results do not depend on how the box is
    partitioned across workers.
    """
    h = omega.genus
    n_part = rows[:, :h].astype(float)
    m_part = rows[:, h:].astype(float)
    images = m_part - n_part @ omega.entries
    anchor = int(np.argmax(np.abs(v)))
    scale = np.max(np.abs(v))
    cbars = images[:, anchor] / v[anchor]
    residuals = np.max(np.abs(images - cbars[:, None] * v[None, :]), axis=1) / scale
    keep = residuals <= tol
    return [(tuple(int(x) for x in rows[i]), complex(cbars[i])) for i in np.nonzero(keep)[0]]


def search_solutions(
    omega: PeriodMatrix,
    base: LatticeCharge,
    bound: int,
    tol: float,
    threads: int = 1,
) -> list:
    """Enumerate every probe in the box [-bound, bound]^{2h} except zero.

    Records are returned sorted lexicographically by (n', m'); the output is
    identical for every worker count.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    v = base_image(omega, base)
    h = omega.genus
    rows = _enumerate_box(2 * h, bound)
    rows = rows[np.any(rows != 0, axis=1)]
    threads = max(1, int(threads))
    if threads == 1 or len(rows) < 2 * threads:
        accepted = _scan_rows(omega, v, rows, tol)
    else:
        chunks = np.array_split(rows, threads * 4)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda chunk: _scan_rows(omega, v, chunk, tol), chunks))
        accepted = [item for part in parts for item in part]
    accepted.sort(key=lambda item: item[0])
    records = []
    for flat, cbar in accepted:
        probe = LatticeCharge(flat[:h], flat[h:])
        records.append(_record_from_cbar(omega, base, probe, cbar, tol, bound))
    return records


def special_eigenvalue(omega: PeriodMatrix, base: LatticeCharge, record: SolutionRecord) -> float:
    """Eigenvalue 2 A |c|^2 of the base metric's Laplacian at this record."""
    return float(2.0 * area(omega, base) * abs(record.c) ** 2)


def dual_eigenvalue(omega: PeriodMatrix, base: LatticeCharge, record: SolutionRecord) -> float:
    """Eigenvalue of the probe metric's Laplacian acting on the base phase."""
    lam = special_eigenvalue(omega, base, record)
    return float(4.0 * area(omega, base) * area(omega, record.probe) / lam)


def _cover_vector(base: LatticeCharge, record: SolutionRecord) -> np.ndarray:
    """Coefficients of the differential realizing the torus map."""
    effective = record.effective_probe
    return record.c_conj * base.n_vec - effective.n_vec


def cover_monodromy(
    omega: PeriodMatrix,
    base: LatticeCharge,
    record: SolutionRecord,
    cycle: CyclePair,
):
    """Period of the covering differential over a cycle, with its lattice
    coordinates in Z + conj(c) Z.

    Raises when the computed period misses the predicted lattice point, which
    flags a false positive from the search tolerance.
    """
    u = _cover_vector(base, record)
    value = complex(u @ (cycle.p_vec + omega.entries @ cycle.q_vec))
    effective = record.effective_probe
    const = -int(
        sum(p * n for p, n in zip(cycle.p, effective.n))
        + sum(q * m for q, m in zip(cycle.q, effective.m))
    )
    slope = int(
        sum(p * n for p, n in zip(cycle.p, base.n))
        + sum(q * m for q, m in zip(cycle.q, base.m))
    )
    expected = const + record.c_conj * slope
    if abs(value - expected) > _MONODROMY_TOL:
        raise LatticeDefect(
            "cover period %.6e away from the lattice" % abs(value - expected)
        )
    return value, (const, slope)


def cover_degree(omega: PeriodMatrix, base: LatticeCharge, record: SolutionRecord) -> int:
    """Number of sheets of the torus cover: area ratio of the two flat metrics."""
    cbar = record.c_conj
    if cbar.imag <= 0:
        raise NotIntegralDegree("no torus cover for a real scale factor")
    u = _cover_vector(base, record)
    raw = float(np.real(u @ omega.imag_part @ np.conj(u)) / cbar.imag)
    rounded = int(round(raw))
    if abs(raw - rounded) > _DEGREE_TOL or rounded < 1:
        raise NotIntegralDegree("degree %.12f is not a positive integer" % raw)
    return rounded


@dataclass(frozen=True, eq=False)
class CoverData:
    """Covering differential, raw degree, and its basis-cycle periods."""

    u: np.ndarray
    degree_raw: float
    monodromy_table: tuple

    def __post_init__(self):
        self.u.setflags(write=False)


def cover_data(omega: PeriodMatrix, base: LatticeCharge, record: SolutionRecord) -> CoverData:
    """Assemble the covering map data over all 2h basis cycles."""
    u = _cover_vector(base, record)
    cbar = record.c_conj
    raw = float(np.real(u @ omega.imag_part @ np.conj(u)) / cbar.imag)
    h = omega.genus
    eye = np.eye(h, dtype=int)
    table = []
    for k in range(h):
        alpha = CyclePair(q=(0,) * h, p=tuple(eye[k]))
        beta = CyclePair(q=tuple(eye[k]), p=(0,) * h)
        for cycle in (alpha, beta):
            value, coords = cover_monodromy(omega, base, record, cycle)
            table.append((cycle, value, coords))
    return CoverData(u=u, degree_raw=raw, monodromy_table=tuple(table))


def cm_wedge_residual(omega: PeriodMatrix, base: LatticeCharge, probe: LatticeCharge) -> float:
    """Antisymmetrized product of the two charge images.

    Vanishes exactly when the probe is proportional to the base, making it an
    acceptance oracle independent of the ratio test.
    """
    v = lattice_image(omega, base)
    vp = lattice_image(omega, probe)
    outer = v[:, None] * vp[None, :]
    return float(np.max(np.abs(outer - outer.T)))


def cm_relation_check(omega: PeriodMatrix, tau: complex, m_vec, n_vec, m_prime, n_prime) -> float:
    """Residual of the complex-multiplication witness
    max_k |M'_k + tau M_k - sum_j (N'_j + tau N_j) Omega_{jk}|."""
    m_vec = np.asarray(m_vec, dtype=float)
    n_vec = np.asarray(n_vec, dtype=float)
    m_prime = np.asarray(m_prime, dtype=float)
    n_prime = np.asarray(n_prime, dtype=float)
    tau = complex(tau)
    residual = m_prime + tau * m_vec - (n_prime + tau * n_vec) @ omega.entries
    return float(np.max(np.abs(residual)))


def cm_witness_from_record(base: LatticeCharge, record: SolutionRecord):
    """Integer vectors (M, N, M', N') realizing the cover's lattice relation."""
    effective = record.effective_probe
    return (
        base.m,
        base.n,
        tuple(-m for m in effective.m),
        tuple(-n for n in effective.n),
    )


def psf_coefficient(omega: PeriodMatrix, charge: LatticeCharge) -> np.ndarray:
    """Column sums of the conjugated role-swapped charge matrix.

    The roles of n and m are swapped deliberately before conjugating, which
    collapses to n - Omega m.
    """
    swapped = LatticeCharge(charge.m, charge.n)
    return np.conj(d_matrix(omega, swapped).entries).sum(axis=0)


def _theta_sum(x: complex, trunc: int) -> complex:
    ks = np.arange(-trunc, trunc + 1)
    return complex(np.sum(np.exp(-(ks.astype(float) ** 2) * PI * x)))


def psf_check(
    omega: PeriodMatrix,
    base: LatticeCharge,
    probe: LatticeCharge,
    j: int,
    trunc: int = 30,
):
    """Both sides of the lattice-sum reciprocity for component j.

    Returns (lhs, rhs, |lhs - rhs|) where lhs sums exp(-k^2 pi D'_j / D_j)
    and rhs is sqrt(D_j / D'_j) times the reciprocal sum.  The ratio must
    have positive real part for either sum to converge.
    """
    d_base = psf_coefficient(omega, base)
    d_probe = psf_coefficient(omega, probe)
    if not 0 <= j < omega.genus:
        raise ValueError("component index out of range")
    dj, dpj = complex(d_base[j]), complex(d_probe[j])
    if abs(dj) < _BASE_EPS or abs(dpj) < _BASE_EPS:
        raise ConvergenceDomain("a lattice-sum coefficient vanishes")
    ratio = dpj / dj
    if ratio.real <= 0:
        raise ConvergenceDomain(
            "ratio has nonpositive real part (%.6e)" % ratio.real
        )
    lhs = _theta_sum(ratio, trunc)
    rhs = complex(np.sqrt(dj / dpj)) * _theta_sum(1.0 / ratio, trunc)
    return lhs, rhs, abs(lhs - rhs)
