"""Natural orbitals: diagonalizing gamma and re-expressing CI states."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .fock import Determinant, enumerate_subsets, slater_overlap
from .wavefunction import CIWavefunction, OnePDM

ZERO_THRESHOLD = 1e-12  # occupation below this counts as an empty natural orbital
ROTATION_NORM_TOL = 1e-8
_PHASE_FLOOR = 1e-12


@dataclass
class NaturalOrbitalBasis:
    """Eigenbasis of a one-particle density matrix.

    Column i of `vectors` is natural orbital i expressed in the
    computational basis; `occupations` holds the matching eigenvalues,
    sorted descending and clipped to [0, 1].
    """

    vectors: np.ndarray
    occupations: np.ndarray

    @property
    def d(self) -> int:
        return self.vectors.shape[0]

    def active(self, threshold: float = ZERO_THRESHOLD) -> list[int]:
        """Indices of natural orbitals with occupation at or above threshold."""
        return [i for i, lam in enumerate(self.occupations) if lam >= threshold]


def diagonalize(gamma: Union[OnePDM, np.ndarray], tol: float = 1e-10) -> NaturalOrbitalBasis:
    """Hermitian eigendecomposition of gamma with a deterministic convention.

    Eigenvalues outside [-tol, 1 + tol] are rejected, values inside are
    clipped to [0, 1] and sorted descending (stable).  Each eigenvector is
    rescaled so its first non-negligible component is real positive; the
    basis chosen inside a degenerate block is otherwise the eigensolver's.
    """
    g = gamma.gamma if isinstance(gamma, OnePDM) else np.asarray(gamma, dtype=complex)
    if np.max(np.abs(g - g.conj().T)) > 1e-12:
        raise ValueError("gamma is not Hermitian")
    w, v = np.linalg.eigh(g)
    if w.min() < -tol or w.max() > 1.0 + tol:
        raise ValueError(
            f"invalid occupation: eigenvalue outside [0, 1] window (tol={tol:g})"
        )
    order = np.argsort(-w, kind="stable")
    w = np.clip(w[order], 0.0, 1.0)
    v = v[:, order]
    for i in range(v.shape[1]):
        col = v[:, i]
        nz = np.nonzero(np.abs(col) > _PHASE_FLOOR)[0]
        if nz.size:
            ref = col[nz[0]]
            v[:, i] = col * (ref.conjugate() / abs(ref))
    return NaturalOrbitalBasis(v, w)


def rotate_ci(
    psi: CIWavefunction,
    basis: Union[NaturalOrbitalBasis, np.ndarray],
    zero_threshold: float = ZERO_THRESHOLD,
) -> CIWavefunction:
    """Re-express a CI state in the determinant basis of rotated orbitals.

    New amplitudes are c'(s) = sum_t det(V†[s, t]) c(t).  When `basis`
    carries occupations, target determinants are enumerated over natural
    orbitals with occupation >= zero_threshold only; the state provably
    has no weight elsewhere, which the norm check enforces.
    """
    if isinstance(basis, NaturalOrbitalBasis):
        v = basis.vectors
        active = basis.active(zero_threshold)
    else:
        v = np.asarray(basis, dtype=complex)
        active = list(range(psi.space.d))
    if v.shape != (psi.space.d, psi.space.d):
        raise ValueError(f"rotation matrix shape {v.shape} does not match d={psi.space.d}")
    vh = v.conj().T
    source = psi.items_sorted()
    amps: dict[Determinant, complex] = {}
    for target in enumerate_subsets(active, psi.n):
        acc = 0.0 + 0.0j
        for det, c in source:
            acc += slater_overlap(vh, target, det) * c
        amps[target] = acc
    total = math.fsum(abs(c) ** 2 for c in amps.values())
    if abs(total - 1.0) > ROTATION_NORM_TOL:
        raise ValueError(
            f"rotation not unitary: rotated norm² = {total!r} (drift {abs(total - 1.0):.3e})"
        )
    return CIWavefunction(psi.space, psi.n, amps)
