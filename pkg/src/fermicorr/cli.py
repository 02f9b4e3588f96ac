"""Command-line surface: wavefunction/mixture file parsing and reports.

File format (whitespace separated, `#` starts a comment, indices 1-based):

    dim=<d> nelec=<N>
    <i1> ... <iN> <re> <im>

Mixture files list `<weight> <wavefunction-path>` per line; relative
paths are resolved against the mixture file's directory.

Exit codes: 0 success, 2 parse errors, 3 numerical-validation errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from .corr import (
    CorrResult,
    MixedState,
    corr_mixed,
    corr_pure,
    corr_two_particle,
    schmidt_2e,
)
from .fock import Determinant, OrbitalSpace
from .models import sweep
from .oracle import overlap_oracle
from .quasifree import QuasifreeSpec, verify_wick
from .wavefunction import CIWavefunction, normalize

NORM_WARN_TOL = 1e-9


class ParseError(ValueError):
    """Malformed input file; maps to exit status 2."""


def _significant(x: float) -> str:
    return f"{x:.12g}"


def parse_wavefunction(text: str, source: str = "<string>") -> CIWavefunction:
    """Parse the wavefunction grammar; the result is always normalized."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped))
    if not lines:
        raise ParseError(f"{source}: empty wavefunction file")

    lineno, header = lines[0]
    fields = dict()
    for token in header.split():
        if "=" not in token:
            raise ParseError(f"{source}:{lineno}: malformed header token {token!r}")
        key, _, value = token.partition("=")
        fields[key] = value
    try:
        d = int(fields["dim"])
        n = int(fields["nelec"])
    except (KeyError, ValueError):
        raise ParseError(f"{source}:{lineno}: header must read 'dim=<d> nelec=<N>'") from None
    try:
        space = OrbitalSpace(d)
    except ValueError as exc:
        raise ParseError(f"{source}:{lineno}: {exc}") from None
    if not 0 <= n <= d:
        raise ParseError(f"{source}:{lineno}: nelec={n} outside [0, {d}]")

    amps: dict[Determinant, complex] = {}
    for lineno, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != n + 2:
            raise ParseError(
                f"{source}:{lineno}: expected {n} indices and two amplitude fields, got {len(tokens)} tokens"
            )
        try:
            indices = [int(t) for t in tokens[:n]]
            re_part, im_part = float(tokens[n]), float(tokens[n + 1])
        except ValueError:
            raise ParseError(f"{source}:{lineno}: malformed record {line!r}") from None
        if any(not 1 <= i <= d for i in indices):
            raise ParseError(f"{source}:{lineno}: orbital index out of range [1, {d}]")
        if any(a >= b for a, b in zip(indices, indices[1:])):
            raise ParseError(f"{source}:{lineno}: indices not strictly increasing")
        det = Determinant.from_indices(i - 1 for i in indices)
        if det in amps:
            raise ParseError(f"{source}:{lineno}: duplicate determinant {line!r}")
        amps[det] = complex(re_part, im_part)
    if not amps:
        raise ParseError(f"{source}: no determinant records")

    psi = CIWavefunction(space, n, amps)
    nrm = psi.norm()
    if nrm == 0.0:
        raise ParseError(f"{source}: null state: all amplitudes vanish")
    if abs(nrm - 1.0) > NORM_WARN_TOL:
        print(f"warning: {source}: input norm {nrm!r} deviates from 1; renormalizing", file=sys.stderr)
    return normalize(psi)


def format_wavefunction(psi: CIWavefunction) -> str:
    """Inverse of parse_wavefunction (round-trips amplitudes exactly)."""
    out = [f"dim={psi.space.d} nelec={psi.n}"]
    for det, amp in psi.items_sorted():
        indices = " ".join(str(i + 1) for i in det.indices)
        out.append(f"{indices} {amp.real:.17g} {amp.imag:.17g}".lstrip())
    return "\n".join(out) + "\n"


def load_wavefunction(path: Path) -> CIWavefunction:
    return parse_wavefunction(path.read_text(), source=str(path))


def parse_mixture(text: str, base_dir: Path, source: str = "<string>") -> MixedState:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        parts = stripped.split(None, 1)
        if len(parts) != 2:
            raise ParseError(f"{source}:{lineno}: expected '<weight> <path>'")
        try:
            weight = float(parts[0])
        except ValueError:
            raise ParseError(f"{source}:{lineno}: malformed weight {parts[0]!r}") from None
        if weight <= 0:
            raise ParseError(f"{source}:{lineno}: weights must be positive")
        entries.append((weight, base_dir / parts[1]))
    if not entries:
        raise ParseError(f"{source}: empty mixture file")
    total = math.fsum(w for w, _ in entries)
    if abs(total - 1.0) > NORM_WARN_TOL:
        print(f"warning: {source}: weights sum to {total!r}; renormalizing", file=sys.stderr)
    return MixedState([(w / total, load_wavefunction(p)) for w, p in entries])


def load_mixture(path: Path) -> MixedState:
    return parse_mixture(path.read_text(), path.parent, source=str(path))


def _emit_result(res: CorrResult, args, extra: Optional[dict] = None):
    payload = {
        "corr": res.corr,
        "overlap": res.overlap,
        "base": res.base,
        "lambda": [float(x) for x in res.occupations],
        "entropy_normalized": res.entropy,
        "entropy_raw": res.entropy_raw,
        "degree": res.degree,
        "underflow": res.underflow,
    }
    if res.fidelity is not None:
        payload["fidelity"] = res.fidelity
    if extra:
        payload.update(extra)
    if args.json:
        print(json.dumps(payload))
        return
    order = ["corr", "overlap", "fidelity", "base", "lambda", "entropy_normalized",
             "entropy_raw", "degree", "underflow"]
    for key in order:
        if key not in payload:
            continue
        value = payload[key]
        if key == "lambda":
            value = " ".join(_significant(x) for x in value)
        elif isinstance(value, float):
            value = _significant(value)
        print(f"{key:<20}{value}")
    for key, value in (extra or {}).items():
        if isinstance(value, list):
            value = " ".join(_significant(x) for x in value)
        elif isinstance(value, float):
            value = _significant(value)
        print(f"{key:<20}{value}")


def _cmd_corr(args) -> int:
    psi = load_wavefunction(Path(args.file))
    res = corr_pure(psi, base=args.base, tol=args.tol, zero_threshold=args.zero_threshold)
    _emit_result(res, args)
    return 3 if res.underflow else 0


def _cmd_corr2(args) -> int:
    psi = load_wavefunction(Path(args.file))
    if psi.n != 2:
        raise ValueError(f"two-particle command needs nelec=2, got {psi.n}")
    res = corr_two_particle(psi, base=args.base)
    weights = schmidt_2e(psi).weights
    _emit_result(res, args, extra={"schmidt_weights": [float(w) for w in weights]})
    return 3 if res.underflow else 0


def _cmd_mixed(args) -> int:
    mixed = load_mixture(Path(args.file))
    res = corr_mixed(mixed, base=args.base, tol=args.tol, zero_threshold=args.zero_threshold)
    _emit_result(res, args)
    return 3 if res.underflow else 0


def _cmd_oracle(args) -> int:
    psi = load_wavefunction(Path(args.file))
    recipe = corr_pure(psi, base=args.base, tol=args.tol).overlap
    brute = overlap_oracle(psi, tol=args.tol)
    diff = abs(recipe - brute)
    if args.json:
        print(json.dumps({"overlap_recipe": recipe, "overlap_oracle": brute, "difference": diff}))
    else:
        print(f"{'overlap_recipe':<20}{_significant(recipe)}")
        print(f"{'overlap_oracle':<20}{_significant(brute)}")
        print(f"{'difference':<20}{diff:.3e}")
    return 0


def _cmd_hubbard_sweep(args) -> int:
    if args.steps < 1:
        raise ValueError("need at least one grid point")
    grid = np.linspace(args.u_min, args.u_max, args.steps)
    rows = sweep(grid, base=args.base, t=args.t, entropy_convention=args.entropy_convention)
    lines = ["u,energy,corr,entropy,entropy_normalized,degree"]
    for row in rows:
        lines.append(
            ",".join(
                _significant(x)
                for x in (row.u, row.ground_energy, row.corr, row.entropy,
                          row.entropy_normalized, row.degree)
            )
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify_wick(args) -> int:
    rng = np.random.default_rng(args.seed)
    d = args.dim
    worst = 0.0
    failures = 0
    for trial in range(args.trials):
        lam = rng.uniform(0.0, 1.0, size=d)
        spec = QuasifreeSpec(lam)
        if trial % 5 == 4:
            m, n = rng.integers(1, 4), rng.integers(1, 4)
            while m == n:
                n = rng.integers(1, 4)
        else:
            m = n = int(rng.integers(1, 4))
        def vectors(count):
            v = rng.normal(size=(count, d)) + 1j * rng.normal(size=(count, d))
            return [row / np.linalg.norm(row) for row in v]
        report = verify_wick(spec, vectors(int(m)), vectors(int(n)))
        worst = max(worst, report.difference)
        if report.difference > args.tol:
            failures += 1
    print(f"trials              {args.trials}")
    print(f"max_deviation       {worst:.3e}")
    print(f"failures            {failures} (tolerance {args.tol:g})")
    return 3 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--base", choices=("2", "e"), default="2",
                        help="logarithm base for all measures (default 2)")
    common.add_argument("--tol", type=float, default=1e-10,
                        help="eigenvalue validation window for gamma; also the "
                             "verify-wick failure threshold (default 1e-10)")
    common.add_argument("--zero-threshold", type=float, default=1e-12,
                        help="occupation below this counts as an empty natural "
                             "orbital (default 1e-12)")
    common.add_argument("--json", action="store_true", help="emit a JSON object")

    parser = argparse.ArgumentParser(
        prog="fermicorr",
        description="Correlation measures for many-fermion states against their quasifree reference",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corr", parents=[common], help="correlation of a pure state")
    p.add_argument("file")
    p.set_defaults(func=_cmd_corr)

    p = sub.add_parser("corr2", parents=[common],
                       help="two-particle closed form with canonical pair weights")
    p.add_argument("file")
    p.set_defaults(func=_cmd_corr2)

    p = sub.add_parser("mixed", parents=[common], help="correlation of a mixture file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_mixed)

    p = sub.add_parser("oracle", parents=[common],
                       help="recipe overlap against the brute-force Fock-space overlap")
    p.add_argument("file")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("hubbard-sweep", parents=[common],
                       help="measure comparison along a Hubbard-dimer interaction grid")
    p.add_argument("--u-min", type=float, default=0.0)
    p.add_argument("--u-max", type=float, default=20.0)
    p.add_argument("--steps", type=int, default=81, help="number of grid points")
    p.add_argument("--t", type=float, default=1.0, help="hopping energy (default 1)")
    p.add_argument("--entropy-convention", choices=("normalized", "raw"), default="normalized")
    p.add_argument("--out", help="CSV output path (stdout when omitted)")
    p.set_defaults(func=_cmd_hubbard_sweep)

    p = sub.add_parser("verify-wick", parents=[common],
                       help="randomized Wick-identity checks on quasifree densities")
    p.add_argument("--dim", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.set_defaults(func=_cmd_verify_wick)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.base == "2":
        args.base = 2.0
    elif args.base == "e":
        args.base = math.e
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
