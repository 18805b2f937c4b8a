"""Primitive-differential algebra on period matrices and special-surface search."""

from .differentials import (
    DifferentialCoeffs,
    DMatrix,
    EtaBasis,
    d_matrix,
    eta_bases,
    lattice_image,
    period_of,
    primitive_coeffs,
)
from .errors import (
    AsymmetryError,
    BadRationality,
    ConvergenceDomain,
    DegenerateBase,
    DegenerateCharge,
    DomainError,
    LatticeDefect,
    NotASolution,
    NotInGamma,
    NotIntegralDegree,
    NotPositiveDefinite,
    ParseError,
    SnapError,
    SpecialPeriodsError,
)
from .genus2 import (
    Genus2Params,
    GammaLattice,
    build_special_genus2,
    gamma_complete,
    gamma_lattice,
    gamma_members,
    genus2_eigenvalue_family,
)
from .highgenus import (
    AnsatzTensors,
    RatioMatrix,
    identity_ansatz,
    parse_tensor_file,
    ratio_matrix,
    verify_ansatz_tensors,
)
from .pairings import (
    DualityTensors,
    PairingValue,
    area,
    canonical_duality_tensors,
    duality_coeffs,
    herm_product,
    monodromy_factor,
    pairing_value,
    real_product,
    wedge_integral,
)
from .siegel import (
    CyclePair,
    LatticeCharge,
    ModularMatrix,
    PeriodMatrix,
    modular_transform_charge,
    modular_transform_tau,
    random_modular_matrix,
    random_siegel_point,
    validate_period_matrix,
)
from .special import (
    CoverData,
    SolutionRecord,
    cm_relation_check,
    cm_wedge_residual,
    cm_witness_from_record,
    consistency_ratios,
    cover_data,
    cover_degree,
    cover_monodromy,
    dual_eigenvalue,
    psf_check,
    psf_coefficient,
    search_solutions,
    solution_record,
    solve_c,
    special_eigenvalue,
)
from .torus import (
    GridField,
    TorusSpectrumEntry,
    dedekind_eta,
    fd_eigen_residual,
    grid_inner_product,
    mu_covariance_residual,
    sample_eigenfunction,
    spectrum_table,
    torus_eigenvalue,
    wraparound_residual,
)

__version__ = "0.1.0"
