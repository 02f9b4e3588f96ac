"""Quasifree reference states: occupation-pattern probabilities, the
explicit Fock-space density, and a brute-force Wick-identity check.

A quasifree (number-conserving) density is the state in which each
natural orbital i is occupied independently with probability lambda_i.
It is diagonal in the natural-orbital Fock basis, with weight p(s) on
the occupation pattern s.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from .fock import Determinant
from .natural_orbitals import NaturalOrbitalBasis

FULL_FOCK_MAX_DIM = 20
WICK_MAX_DIM = 12
WICK_MAX_OPS = 4


@dataclass
class QuasifreeSpec:
    """Occupation probabilities of the reference state, one per orbital.

    `occupations` must lie in [0, 1] exactly (clipping happens upstream in
    diagonalize).  `basis` records which orbitals the probabilities refer
    to; it is optional because p(s) itself is basis-label-agnostic.
    """

    occupations: np.ndarray
    basis: Optional[NaturalOrbitalBasis] = None

    def __post_init__(self):
        lam = np.asarray(self.occupations, dtype=float)
        if lam.ndim != 1:
            raise ValueError("occupation list must be one-dimensional")
        if lam.min() < 0.0 or lam.max() > 1.0:
            raise ValueError("invalid occupation: probabilities must lie in [0, 1]")
        self.occupations = lam

    @classmethod
    def from_basis(cls, basis: NaturalOrbitalBasis) -> "QuasifreeSpec":
        return cls(np.clip(basis.occupations, 0.0, 1.0), basis)

    @property
    def d(self) -> int:
        return self.occupations.shape[0]


@dataclass
class FockMatrix:
    """Operator over the full 2^d Fock basis (subsets in ascending mask order)."""

    dim: int
    matrix: sp.spmatrix

    def diagonal(self) -> np.ndarray:
        return np.asarray(self.matrix.diagonal())


def occupation_probability(spec: QuasifreeSpec, s: Determinant) -> float:
    """p(s): product of lambda_i over occupied i and (1 - lambda_i) over the rest."""
    lam = spec.occupations
    p = 1.0
    for i in range(spec.d):
        p *= lam[i] if s.occupies(i) else 1.0 - lam[i]
    return p


def pattern_probabilities(spec: QuasifreeSpec) -> np.ndarray:
    """p(s) for every subset mask 0..2^d-1 as one vector (exact Kronecker build)."""
    factors = [np.array([1.0 - lam, lam]) for lam in spec.occupations]
    return reduce(np.kron, reversed(factors), np.array([1.0]))


def build_quasifree_fock_matrix(spec: QuasifreeSpec) -> FockMatrix:
    """The quasifree density as an explicit diagonal matrix on the Fock space.

    Diagonal entry at mask s is p(s); the trace is 1 by the binomial
    identity and is checked here against roundoff.
    """
    if spec.d > FULL_FOCK_MAX_DIM:
        raise ValueError(
            f"oracle scale exceeded: d={spec.d} > {FULL_FOCK_MAX_DIM} for a full Fock matrix"
        )
    p = pattern_probabilities(spec)
    if abs(p.sum() - 1.0) > 1e-12:
        raise ValueError("pattern probabilities do not sum to 1")
    dim = 1 << spec.d
    return FockMatrix(dim, sp.diags(p, format="csr", dtype=complex))


def _sparse_ladder(kind: str, p: int, d: int) -> sp.csr_matrix:
    # Local 2^d ladder operators for the Wick check; same increasing-order
    # phase convention as fock.apply_creation / apply_annihilation.
    dim = 1 << d
    bit = 1 << p
    below = bit - 1
    rows, cols, vals = [], [], []
    for s in range(dim):
        if kind == "creation":
            if s & bit:
                continue
            t = s | bit
        else:
            if not s & bit:
                continue
            t = s ^ bit
        sign = -1.0 if (s & below).bit_count() & 1 else 1.0
        rows.append(t)
        cols.append(s)
        vals.append(sign)
    return sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim))


@dataclass
class WickReport:
    """Both sides of the Wick identity and their absolute difference."""

    lhs: complex
    rhs: complex
    difference: float


def verify_wick(
    spec: QuasifreeSpec,
    f_list: Sequence[np.ndarray],
    g_list: Sequence[np.ndarray],
) -> WickReport:
    """Check the determinant factorization of a 2m/2n-point function.

    The left side Tr(rho a†_{f1}..a†_{fm} a_{gn}..a_{g1}) is evaluated by
    explicit sparse matrix algebra on the 2^d Fock space; the right side
    is delta_{mn} det(Tr(rho a†_{f_i} a_{g_j})).  Vectors are coordinates
    in the same orbital basis the occupation probabilities refer to.
    """
    d = spec.d
    m, n = len(f_list), len(g_list)
    if d > WICK_MAX_DIM:
        raise ValueError(f"oracle scale exceeded: d={d} > {WICK_MAX_DIM} for a Wick check")
    if m > WICK_MAX_OPS or n > WICK_MAX_OPS:
        raise ValueError(f"oracle scale exceeded: at most {WICK_MAX_OPS} operators per side")
    cre = [_sparse_ladder("creation", p, d) for p in range(d)]
    ann = [_sparse_ladder("annihilation", p, d) for p in range(d)]

    def cre_along(f):
        f = np.asarray(f, dtype=complex)
        return sum(f[p] * cre[p] for p in range(d))

    def ann_along(g):
        g = np.asarray(g, dtype=complex)
        return sum(g[p].conjugate() * ann[p] for p in range(d))

    p_diag = pattern_probabilities(spec)

    def rho_trace(op: sp.spmatrix) -> complex:
        return complex(np.dot(p_diag, op.diagonal()))

    prod = sp.identity(1 << d, dtype=complex, format="csr")
    for f in f_list:
        prod = prod @ cre_along(f)
    for g in reversed(g_list):  # a_{gn} applied leftmost
        prod = prod @ ann_along(g)
    lhs = rho_trace(prod)

    if m != n:
        rhs = 0.0 + 0.0j
    else:
        two_point = np.empty((n, n), dtype=complex)
        for i, f in enumerate(f_list):
            af = cre_along(f)
            for j, g in enumerate(g_list):
                two_point[i, j] = rho_trace(af @ ann_along(g))
        rhs = complex(np.linalg.det(two_point)) if n else 1.0 + 0.0j
    return WickReport(lhs, rhs, abs(lhs - rhs))
