"""Correlation of a fermionic state against its quasifree reference.

The measure is the negative logarithm of the overlap between the state
and the unique quasifree (independently occupied natural orbitals)
density sharing its one-particle density matrix.  It vanishes exactly
on Slater determinants, unlike spectrum-only measures such as the
correlation entropy and the degree of correlation, which are also
provided here for comparison.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .fock import enumerate_subsets
from .natural_orbitals import ZERO_THRESHOLD, diagonalize, rotate_ci
from .oracle import max_oracle_dim, natural_fock_vector
from .quasifree import QuasifreeSpec, build_quasifree_fock_matrix, occupation_probability
from .wavefunction import CIWavefunction, OnePDM, one_pdm

OVERLAP_UNDERFLOW = 1e-300
ORACLE_PURE_MAX_DIM = 16


@dataclass
class CorrResult:
    """Correlation value plus the quantities it was computed from.

    `corr` is -log_base(overlap); `occupations` is the natural-orbital
    spectrum (descending); `entropy` / `entropy_raw` are the spectrum
    entropies under the normalized (lambda/N) and raw conventions;
    `fidelity` is set on the mixed-state path; `underflow` flags an
    overlap below the representable floor, in which case `corr` reports
    the log of the largest accumulated partial sum.
    """

    corr: float
    overlap: float
    base: float
    occupations: np.ndarray
    entropy: float
    entropy_raw: float
    degree: float
    fidelity: Optional[float] = None
    underflow: bool = False


@dataclass
class SchmidtForm2e:
    """Canonical pairing of a two-particle state.

    `pairs` holds (f_j, g_j, p_j): orthonormal orbital pairs and weights
    with sum p_j = 1; the state is the p_j-weighted superposition of the
    (f_j, g_j) determinants.
    """

    pairs: list[tuple[np.ndarray, np.ndarray, float]]

    def __post_init__(self):
        if self.pairs:
            vecs = [v for f, g, _ in self.pairs for v in (f, g)]
            gram = np.array([[np.vdot(x, y) for y in vecs] for x in vecs])
            if np.max(np.abs(gram - np.eye(len(vecs)))) > 1e-10:
                raise ValueError("pair orbitals are not orthonormal")
            if abs(math.fsum(self.weights) - 1.0) > 1e-10:
                raise ValueError("pair weights do not sum to 1")

    @property
    def weights(self) -> list[float]:
        return [p for _, _, p in self.pairs]


@dataclass
class MixedState:
    """Convex mixture of fixed-particle-number pure states over one orbital space."""

    components: list[tuple[float, CIWavefunction]]

    def __post_init__(self):
        if not self.components:
            raise ValueError("mixture needs at least one component")
        space = self.components[0][1].space
        for w, psi in self.components:
            if w <= 0:
                raise ValueError("mixture weights must be positive")
            if psi.space != space:
                raise ValueError("sector mismatch: components live in different orbital spaces")
            if abs(psi.norm() - 1.0) > 1e-9:
                raise ValueError("mixture components must be normalized")
        if abs(math.fsum(w for w, _ in self.components) - 1.0) > 1e-12:
            raise ValueError("mixture weights must sum to 1")

    @property
    def space(self):
        return self.components[0][1].space


def _log(x: float, base: float) -> float:
    return math.log(x) / math.log(base)


def _neg_log_overlap(terms: list[float], base: float) -> tuple[float, float, bool]:
    """Accumulate nonnegative overlap terms and take -log.

    Terms are summed largest first with exact (fsum) accumulation.  A
    total below the underflow floor is reported from the largest partial
    sum with a warning flag; an exactly zero total is an error.
    """
    total = math.fsum(sorted(terms, reverse=True))
    if total <= 0.0:
        raise ValueError("overlap underflow: no weight on the quasifree reference")
    underflow = total < OVERLAP_UNDERFLOW
    if underflow:
        warnings.warn("overlap underflow: correlation reported from the largest partial sum")
    overlap = min(total, 1.0)
    corr = max(0.0, -_log(overlap, base))
    return corr, overlap, underflow


def _spectrum_entropy(lam: np.ndarray, nelec: float, base: float, convention: str) -> float:
    if convention == "normalized":
        mu = np.asarray(lam, dtype=float) / nelec
    elif convention == "raw":
        mu = np.asarray(lam, dtype=float)
    else:
        raise ValueError(f"unknown entropy convention {convention!r}")
    return -math.fsum(float(m) * math.log(m) for m in mu if m > 0.0) / math.log(base)


def _spectrum_degree(lam: np.ndarray, nelec: float) -> float:
    mu = np.asarray(lam, dtype=float) / nelec
    return 1.0 / math.fsum(float(m) ** 2 for m in mu)


def _occupations_of(gamma: Union[OnePDM, np.ndarray]) -> tuple[np.ndarray, float]:
    g = gamma.gamma if isinstance(gamma, OnePDM) else np.asarray(gamma, dtype=complex)
    lam = np.clip(np.linalg.eigvalsh(g), 0.0, 1.0)[::-1]
    return lam, float(np.trace(g).real)


def correlation_entropy(
    gamma: Union[OnePDM, np.ndarray], base: float = 2.0, convention: str = "normalized"
) -> float:
    """Shannon entropy of the gamma spectrum.

    Under the default convention the spectrum is rescaled by the particle
    number to a probability vector, so a Slater determinant scores
    log_base(N); the raw convention uses the occupations directly and
    gives 0 there.
    """
    lam, nelec = _occupations_of(gamma)
    return _spectrum_entropy(lam, nelec, base, convention)


def degree_of_correlation(gamma: Union[OnePDM, np.ndarray]) -> float:
    """Inverse participation ratio of the normalized gamma spectrum.

    Normalized so a Slater determinant of N particles scores exactly N.
    """
    lam, nelec = _occupations_of(gamma)
    return _spectrum_degree(lam, nelec)


def _result(
    corr: float,
    overlap: float,
    base: float,
    lam: np.ndarray,
    nelec: float,
    fidelity: Optional[float] = None,
    underflow: bool = False,
) -> CorrResult:
    return CorrResult(
        corr=corr,
        overlap=overlap,
        base=base,
        occupations=np.asarray(lam, dtype=float),
        entropy=_spectrum_entropy(lam, nelec, base, "normalized"),
        entropy_raw=_spectrum_entropy(lam, nelec, base, "raw"),
        degree=_spectrum_degree(lam, nelec),
        fidelity=fidelity,
        underflow=underflow,
    )


def corr_pure(
    psi: CIWavefunction,
    base: float = 2.0,
    tol: float = 1e-10,
    zero_threshold: float = ZERO_THRESHOLD,
) -> CorrResult:
    """-log of the overlap between a pure state and its quasifree reference.

    Pipeline: gamma, natural orbitals, re-expansion of the state in
    natural-orbital determinants, then sum of p(s) |c(s)|² over the
    occupation patterns s in the state's sector.  Zero exactly when the
    state is a Slater determinant in some orbital basis.
    """
    gamma = one_pdm(psi)
    basis = diagonalize(gamma, tol=tol)
    rotated = rotate_ci(psi, basis, zero_threshold=zero_threshold)
    spec = QuasifreeSpec.from_basis(basis)
    terms = [
        occupation_probability(spec, det) * abs(c) ** 2 for det, c in rotated.items_sorted()
    ]
    corr, overlap, underflow = _neg_log_overlap(terms, base)
    return _result(corr, overlap, base, basis.occupations, float(psi.n), underflow=underflow)


def corr_pure_oracle(psi: CIWavefunction, base: float = 2.0, tol: float = 1e-10) -> CorrResult:
    """Same quantity as corr_pure through the explicit Fock-space route.

    The quasifree density is materialized as a diagonal matrix over all
    2^d occupation patterns and the state is rotated into that basis by
    explicit operator algebra; no determinant-expansion kernels.
    """
    if psi.space.d > ORACLE_PURE_MAX_DIM:
        raise ValueError(f"oracle scale exceeded: d={psi.space.d} > {ORACLE_PURE_MAX_DIM}")
    gamma = one_pdm(psi)
    basis = diagonalize(gamma, tol=tol)
    spec = QuasifreeSpec.from_basis(basis)
    rho = build_quasifree_fock_matrix(spec)
    coeffs = natural_fock_vector(psi, basis.vectors)
    overlap_val = float(np.real(np.vdot(coeffs, rho.matrix @ coeffs)))
    corr, overlap, underflow = _neg_log_overlap([overlap_val], base)
    return _result(corr, overlap, base, basis.occupations, float(psi.n), underflow=underflow)


_PAIR_WEIGHT_FLOOR = 1e-24  # squared-amplitude floor for keeping a pair
_CLUSTER_TOL = 1e-10


def schmidt_2e(psi: CIWavefunction) -> SchmidtForm2e:
    """Canonical form of a two-particle state under unitary congruence.

    The antisymmetric amplitude matrix A (A[p, q] = amplitude of the
    determinant {p, q}, p < q) is brought to block form with 2x2
    antisymmetric blocks: within each eigenvalue cluster of A A† a pair
    partner is g = -A conj(f) / |A conj(f)|, which stays inside the
    cluster and is orthogonal to f.  Pair weights are the squared block
    amplitudes; null directions are dropped.
    """
    if psi.n != 2:
        raise ValueError(f"two-particle form needs n=2, got n={psi.n}")
    d = psi.space.d
    a = np.zeros((d, d), dtype=complex)
    for det, c in psi.amplitudes.items():
        p, q = det.indices
        a[p, q] = c
        a[q, p] = -c
    m = a @ a.conj().T
    w, vecs = np.linalg.eigh(m)
    order = np.argsort(-w, kind="stable")
    w, vecs = w[order], vecs[:, order]

    pairs: list[tuple[np.ndarray, np.ndarray, float]] = []
    i = 0
    while i < d:
        if w[i] <= _PAIR_WEIGHT_FLOOR:
            break
        j = i + 1
        while j < d and abs(w[j] - w[i]) <= _CLUSTER_TOL:
            j += 1
        block = vecs[:, i:j].copy()
        while block.shape[1]:
            f = block[:, 0]
            z = a @ f.conjugate()
            b = float(np.linalg.norm(z))
            if b * b <= _PAIR_WEIGHT_FLOOR:
                block = block[:, 1:]
                continue
            g = -z / b
            pairs.append((f, g, b * b))
            # deflate the block orthogonally to the accepted pair
            proj = block - np.outer(f, f.conjugate() @ block) - np.outer(g, g.conjugate() @ block)
            u, s, _ = np.linalg.svd(proj, full_matrices=False)
            keep = s > 1e-8
            block = u[:, keep]
        i = j
    return SchmidtForm2e(pairs)


def corr_two_particle(psi: CIWavefunction, base: float = 2.0) -> CorrResult:
    """Closed form of the correlation of a two-particle state.

    Each canonical pair contributes its own occupation pattern, so the
    overlap collapses to sum_i p_i (p_i prod_{j≠i} (1 - p_j))².
    """
    form = schmidt_2e(psi)
    p = form.weights
    terms = []
    for i, pi in enumerate(p):
        other = 1.0
        for j, pj in enumerate(p):
            if j != i:
                other *= 1.0 - pj
        terms.append(pi * (pi * other) ** 2)
    corr, overlap, underflow = _neg_log_overlap(terms, base)
    lam = np.zeros(psi.space.d)
    lam[: 2 * len(p)] = np.repeat(sorted(p, reverse=True), 2)
    return _result(corr, overlap, base, lam, 2.0, underflow=underflow)


def corr_mixed(
    mixed: MixedState,
    base: float = 2.0,
    tol: float = 1e-10,
    zero_threshold: float = ZERO_THRESHOLD,
) -> CorrResult:
    """Correlation of a particle-number-conserving mixed state.

    gamma is the weight-averaged one-particle density matrix; the
    reference is its quasifree density.  The fidelity between the
    mixture and the reference factorizes over particle-number sectors
    (both operators are number-conserving) and within each sector it is
    evaluated from the Hermitian eigendecomposition of the component
    Gram matrix weighted by pattern probabilities, which carries the
    full nonzero spectrum of the sector's D^{1/2} rho D^{1/2}.  The
    result is -2 log of the total fidelity.
    """
    d = mixed.space.d
    cap = max_oracle_dim()
    if d > cap:
        raise ValueError(f"oracle scale exceeded: d={d} > {cap} for mixed-state fidelity")
    nelec = math.fsum(w * psi.n for w, psi in mixed.components)
    g = np.zeros((d, d), dtype=complex)
    for w, psi in mixed.components:
        g += w * one_pdm(psi).gamma
    gamma = OnePDM(g, nelec=nelec)
    basis = diagonalize(gamma, tol=tol)
    spec = QuasifreeSpec.from_basis(basis)
    active = basis.active(zero_threshold)

    sectors: dict[int, list[tuple[float, CIWavefunction]]] = {}
    for w, psi in mixed.components:
        sectors.setdefault(psi.n, []).append((w, psi))

    fid_parts = []
    for n in sorted(sectors):
        comps = sectors[n]
        dets = enumerate_subsets(active, n)
        p_vec = np.array([occupation_probability(spec, det) for det in dets])
        vecs = []
        for w, psi in comps:
            rotated = rotate_ci(psi, basis, zero_threshold=zero_threshold)
            vecs.append(math.sqrt(w) * np.array([rotated.amplitude(det) for det in dets]))
        k = len(vecs)
        gram = np.empty((k, k), dtype=complex)
        for x in range(k):
            for y in range(k):
                gram[x, y] = np.sum(p_vec * vecs[x].conjugate() * vecs[y])
        eig = np.clip(np.linalg.eigvalsh(gram), 0.0, None)
        # rank-deficiency noise must not leak through the square root
        eig[eig < 1e-14 * max(float(np.trace(gram).real), 0.0)] = 0.0
        fid_parts.extend(math.sqrt(float(e)) for e in eig)
    fidelity = min(math.fsum(sorted(fid_parts, reverse=True)), 1.0)
    corr, overlap, underflow = _neg_log_overlap([fidelity**2], base)
    return _result(
        corr, overlap, base, basis.occupations, nelec, fidelity=fidelity, underflow=underflow
    )
