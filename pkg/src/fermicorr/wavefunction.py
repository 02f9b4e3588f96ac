"""CI expansions of pure states and the one-particle density matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .fock import Determinant, OrbitalSpace, apply_annihilation, apply_creation

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
EIGENVALUE_TOL = 1e-10


@dataclass
class CIWavefunction:
    """Sparse determinant expansion of a fixed-particle-number pure state.

    Amplitudes are keyed by Determinant; every key must occupy exactly
    `n` orbitals inside `space`.  Treat instances as immutable values.
    """

    space: OrbitalSpace
    n: int
    amplitudes: dict[Determinant, complex]

    def __post_init__(self):
        if not 0 <= self.n <= self.space.d:
            raise ValueError(f"particle count {self.n} outside [0, {self.space.d}]")
        if not self.amplitudes:
            raise ValueError("wavefunction needs at least one amplitude")
        clean: dict[Determinant, complex] = {}
        for det, amp in self.amplitudes.items():
            if not self.space.contains(det):
                raise ValueError(f"{det!r} does not fit in {self.space.d} orbitals")
            if det.particle_count != self.n:
                raise ValueError(
                    f"sector mismatch: {det!r} has {det.particle_count} particles, expected {self.n}"
                )
            clean[det] = complex(amp)
        self.amplitudes = clean

    def amplitude(self, det: Determinant) -> complex:
        return self.amplitudes.get(det, 0.0 + 0.0j)

    def norm(self) -> float:
        return math.sqrt(math.fsum(abs(a) ** 2 for a in self.amplitudes.values()))

    def items_sorted(self) -> list[tuple[Determinant, complex]]:
        """Amplitudes in ascending determinant-mask order (deterministic sums)."""
        return sorted(self.amplitudes.items())


@dataclass
class OnePDM:
    """One-particle density matrix gamma with gamma[p, q] = <a†_q a_p>.

    With this index convention gamma acts on single-particle column
    vectors: <g, gamma f> is the two-point function of creation along f
    and annihilation along g.  Validated on construction: Hermitian,
    eigenvalues in [0, 1] up to tolerance, trace equal to the (average)
    particle number when one is supplied.
    """

    gamma: np.ndarray
    nelec: Optional[float] = None

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=complex)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError(f"gamma must be square, got shape {g.shape}")
        if np.max(np.abs(g - g.conj().T)) > HERMITICITY_TOL:
            raise ValueError("gamma is not Hermitian")
        if self.nelec is not None and abs(np.trace(g).real - self.nelec) > TRACE_TOL:
            raise ValueError(
                f"trace {np.trace(g).real!r} does not match particle number {self.nelec!r}"
            )
        w = np.linalg.eigvalsh(g)
        if w.min() < -EIGENVALUE_TOL or w.max() > 1.0 + EIGENVALUE_TOL:
            raise ValueError("invalid occupation: gamma eigenvalue outside [0, 1]")
        self.gamma = g

    @property
    def d(self) -> int:
        return self.gamma.shape[0]


def normalize(psi: CIWavefunction) -> CIWavefunction:
    """Rescale by a single positive factor so the norm is 1."""
    nrm = psi.norm()
    if nrm == 0.0:
        raise ValueError("null state: all amplitudes vanish")
    amps = {det: amp / nrm for det, amp in psi.amplitudes.items()}
    return CIWavefunction(psi.space, psi.n, amps)


def inner_product(a: CIWavefunction, b: CIWavefunction) -> complex:
    """<a, b> over the shared determinant basis (conjugate on the bra)."""
    if a.space != b.space or a.n != b.n:
        raise ValueError("sector mismatch: states live in different sectors")
    acc = 0.0 + 0.0j
    for det, amp in b.items_sorted():
        ca = a.amplitudes.get(det)
        if ca is not None:
            acc += ca.conjugate() * amp
    return acc


def one_pdm(psi: CIWavefunction) -> OnePDM:
    """gamma[p, q] = <psi| a†_q a_p |psi> via ladder-operator application."""
    d = psi.space.d
    g = np.zeros((d, d), dtype=complex)
    for det, c in psi.items_sorted():
        for p in det.indices:
            s1, hole = apply_annihilation(det, p)
            for q in range(d):
                res = apply_creation(hole, q)
                if res is None:
                    continue
                s2, target = res
                c2 = psi.amplitudes.get(target)
                if c2 is None:
                    continue
                g[p, q] += s1 * s2 * c * c2.conjugate()
    return OnePDM(g, nelec=float(psi.n))
