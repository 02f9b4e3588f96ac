#!/usr/bin/env python3
"""Two 3-electron states with identical one-particle density matrices but
different correlation: the point where spectrum-only measures cannot tell
states apart while the quasifree-overlap measure can."""

import math
import sys

from fermicorr import (
    CIWavefunction,
    Determinant,
    OrbitalSpace,
    corr_pure,
    correlation_entropy,
    degree_of_correlation,
    one_pdm,
    overlap_oracle,
)


def main() -> int:
    space = OrbitalSpace(6)
    psi = CIWavefunction(
        space,
        3,
        {
            Determinant.from_indices((0, 2, 4)): math.sqrt(2 / 3),
            Determinant.from_indices((1, 3, 5)): math.sqrt(1 / 3),
        },
    )
    amp = math.sqrt(1 / 3)
    phi = CIWavefunction(
        space,
        3,
        {
            Determinant.from_indices((0, 1, 2)): amp,
            Determinant.from_indices((2, 3, 4)): amp,
            Determinant.from_indices((0, 4, 5)): amp,
        },
    )
    for name, state in (("psi", psi), ("phi", phi)):
        gamma = one_pdm(state)
        res = corr_pure(state)
        print(f"{name}:")
        print(f"  occupations        {[round(float(x), 9) for x in res.occupations]}")
        print(f"  corr               {res.corr:.6f} bits")
        print(f"  overlap            {res.overlap:.12g} (oracle {overlap_oracle(state):.12g})")
        print(f"  entropy            {correlation_entropy(gamma):.6f} bits")
        print(f"  degree             {degree_of_correlation(gamma):.6f}")
    print("same spectrum, different correlation: spectrum-only measures agree,")
    print("the overlap measure does not.")
    return 0


if __name__ == "__main__":
    sys.exit(main())
