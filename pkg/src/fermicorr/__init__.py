"""Correlation measures for many-fermion states.

A pure state's correlation is quantified as the negative log overlap
with the quasifree density (independently occupied natural orbitals)
that shares its one-particle density matrix; mixed number-conserving
states use the Uhlmann fidelity instead of the overlap.
"""

from .corr import (
    CorrResult,
    MixedState,
    SchmidtForm2e,
    corr_mixed,
    corr_pure,
    corr_pure_oracle,
    corr_two_particle,
    correlation_entropy,
    degree_of_correlation,
    schmidt_2e,
)
from .fock import (
    Determinant,
    OrbitalSpace,
    apply_annihilation,
    apply_creation,
    enumerate_basis,
    enumerate_subsets,
    slater_overlap,
)
from .models import (
    HubbardParams,
    SweepRow,
    heitler_london_state,
    hubbard_ground_state,
    hubbard_hamiltonian,
    sweep,
)
from .natural_orbitals import NaturalOrbitalBasis, diagonalize, rotate_ci
from .oracle import fock_operator_matrix, max_oracle_dim, overlap_oracle
from .quasifree import (
    FockMatrix,
    QuasifreeSpec,
    WickReport,
    build_quasifree_fock_matrix,
    occupation_probability,
    verify_wick,
)
from .wavefunction import CIWavefunction, OnePDM, inner_product, normalize, one_pdm

__all__ = [
    "CIWavefunction",
    "CorrResult",
    "Determinant",
    "FockMatrix",
    "HubbardParams",
    "MixedState",
    "NaturalOrbitalBasis",
    "OnePDM",
    "OrbitalSpace",
    "QuasifreeSpec",
    "SchmidtForm2e",
    "SweepRow",
    "WickReport",
    "apply_annihilation",
    "apply_creation",
    "build_quasifree_fock_matrix",
    "corr_mixed",
    "corr_pure",
    "corr_pure_oracle",
    "corr_two_particle",
    "correlation_entropy",
    "degree_of_correlation",
    "diagonalize",
    "enumerate_basis",
    "enumerate_subsets",
    "fock_operator_matrix",
    "heitler_london_state",
    "hubbard_ground_state",
    "hubbard_hamiltonian",
    "inner_product",
    "max_oracle_dim",
    "normalize",
    "occupation_probability",
    "one_pdm",
    "overlap_oracle",
    "rotate_ci",
    "schmidt_2e",
    "slater_overlap",
    "sweep",
    "verify_wick",
]
