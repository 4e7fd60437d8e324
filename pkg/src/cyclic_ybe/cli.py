"""Command-line interface.

Exit codes: 0 when every numeric check passes, 1 when one fails, 2 on bad
input. Complex numbers are written as [re, im]; floats use Python's
shortest round-trip repr, so a matrix written by ``gate`` and read back by
``verify --matrix`` is bit-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Iterable, Sequence

import numpy as np

from . import cyclic, families, physics, ybe
from .tensor_core import COMPUTATIONAL_BASIS, unitarity_residual
from .verification import verify_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
BERRY_TOL = 1e-6
HAMILTONIAN_FD_TOL = 1e-8

SWEEP_COLUMNS = {
    "n-range": [
        "n", "alpha", "beta_im", "oracle_distance", "braided_ybe_residual",
        "algebraic_ybe_residual", "unitarity_residual", "concurrence_00", "entangling",
    ],
    "x-grid": [
        "n", "phi", "x", "rho", "rho_formula", "theta", "concurrence_00",
        "unitarity_residual", "braided_ybe_residual",
    ],
    "theta-grid": [
        "theta", "phi", "sin2theta_abs", "concurrence_00", "concurrence_01",
        "concurrence_10", "concurrence_11", "eigen_concurrence", "energy_plus",
        "berry_plus", "berry_minus", "circle_residual", "fd_distance",
    ],
}

SWEEP_HELP = """\
CSV columns by kind (header row always written):
  n-range:    {}
  x-grid:     {}
  theta-grid: {}
""".format(*(", ".join(SWEEP_COLUMNS[k]) for k in ("n-range", "x-grid", "theta-grid")))


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- serialization


def encode_matrix(m: np.ndarray) -> dict:
    rows, cols = m.shape
    return {
        "rows": rows,
        "cols": cols,
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def decode_matrix(obj) -> np.ndarray:
    if isinstance(obj, dict) and "matrix" in obj and "entries" not in obj:
        obj = obj["matrix"]
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        m = np.array([[complex(re, im) for re, im in row] for row in entries], dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed matrix file: {exc}") from None
    if m.shape != (rows, cols):
        raise UsageError(f"malformed matrix file: entries do not form a {rows}x{cols} matrix")
    if m.shape != (4, 4):
        raise UsageError(f"matrix must be 4x4, got {rows}x{cols}")
    return m


def _c(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _dump(payload) -> str:
    return json.dumps(payload, allow_nan=False)


def _csv(columns: Sequence[str], rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()


# ---------------------------------------------------------------- family parsing


def _complex_arg(name: str, text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise UsageError(f"--{name}: cannot parse {text!r} as a complex number") from None


def _real_arg(name: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"--{name}: cannot parse {text!r} as a real number") from None
    if not math.isfinite(value):
        raise UsageError(f"--{name}: must be finite")
    return value


FAMILY_FIELDS = {
    "bn": ("n",),
    "bnphi": ("n", "phi"),
    "general": ("alpha", "beta", "q"),
    "continuous": ("t", "theta", "phi"),
    "graded": ("n", "d0", "d1"),
    "barenco": ("alpha", "theta", "phi"),
}


def family_from_args(args) -> families.GateFamily:
    tag = args.family
    values = {}
    for name in FAMILY_FIELDS[tag]:
        raw = getattr(args, name)
        if raw is None:
            raise UsageError(f"family {tag} needs --{name}")
        if name in ("n", "d0", "d1"):
            try:
                values[name] = int(raw)
            except ValueError:
                raise UsageError(f"--{name}: expected an integer, got {raw!r}") from None
        elif tag == "general":
            values[name] = _complex_arg(name, raw)
        else:
            values[name] = _real_arg(name, raw)
    try:
        return families.FAMILIES[tag](**values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def family_descriptor(f: families.GateFamily) -> dict:
    params = {}
    for key, value in vars(f).items():
        params[key] = _c(value) if isinstance(value, complex) else value
    return {"tag": f.tag, "params": params}


# ---------------------------------------------------------------- commands


def cmd_gate(args, out) -> int:
    fam = family_from_args(args)
    m = families.build_gate(fam)
    checks = {
        "unitarityResidual": unitarity_residual(m),
        "ybeBraidedResidual": ybe.braided_ybe_residual(m),
    }
    passed = all(v <= args.tol for v in checks.values())
    if args.format == "csv":
        rows = (
            {"row": i, "col": j, "re": float(m[i, j].real), "im": float(m[i, j].imag)}
            for i in range(4)
            for j in range(4)
        )
        out.write(_csv(["row", "col", "re", "im"], rows))
    else:
        payload = {
            "family": family_descriptor(fam),
            "matrix": encode_matrix(m),
            "checks": checks,
            "tol": args.tol,
            "passed": passed,
        }
        out.write(_dump(payload) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def _read_matrix_file(path: str) -> np.ndarray:
    try:
        if path == "-":
            obj = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read matrix file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed matrix file: {exc}") from None
    return decode_matrix(obj)


def cmd_verify(args, out) -> int:
    if (args.matrix is None) == (args.family is None):
        raise UsageError("give exactly one of --family or --matrix")
    if args.matrix is not None:
        m = _read_matrix_file(args.matrix)
        source = {"matrixFile": args.matrix}
    else:
        fam = family_from_args(args)
        m = families.build_gate(fam)
        source = {"family": family_descriptor(fam)}
    report = verify_matrix(m, tol=args.tol, sample_count=args.samples, seed=args.seed)
    payload = {
        **source,
        "unitarityResidual": report.unitarity_residual,
        "ybeBraidedResidual": report.braided_ybe_residual,
        "ybeAlgebraicResidual": report.algebraic_ybe_residual,
        "pauliReconstructionResidual": report.pauli_reconstruction_residual,
        "checks": report.checks,
        "entangling": report.entangling,
        "witness": None if report.witness is None else [_c(z) for z in report.witness],
        "tol": args.tol,
        "passed": report.passed,
    }
    if args.format == "csv":
        rows = [{"check": k, "passed": v} for k, v in report.checks.items()]
        out.write(_csv(["check", "passed"], rows))
    else:
        out.write(_dump(payload) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _grid(start: float, stop: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise UsageError("--steps must be >= 1")
    if steps == 1:
        return np.array([start])
    return np.linspace(start, stop, steps)


def _rows_n_range(args):
    lo = int(args.from_ if args.from_ is not None else 2)
    hi = int(args.to if args.to is not None else 32)
    if lo < 2 or hi < lo:
        raise UsageError("n-range needs 2 <= --from <= --to")
    if hi > cyclic.MAX_BRUTEFORCE_ORDER:
        raise UsageError(f"--to is capped at {cyclic.MAX_BRUTEFORCE_ORDER}")
    for n in range(lo, hi + 1):
        r = cyclic.r_closed_form(n)
        b = cyclic.bn_gate(n)
        alpha, beta = cyclic.bn_coefficients(n)
        yield {
            "n": n,
            "alpha": alpha.real,
            "beta_im": beta.imag,
            "oracle_distance": float(np.linalg.norm(cyclic.r_bruteforce(n) - r)),
            "braided_ybe_residual": ybe.braided_ybe_residual(b),
            "algebraic_ybe_residual": ybe.algebraic_ybe_residual(r),
            "unitarity_residual": unitarity_residual(b),
            "concurrence_00": physics.concurrence(b @ COMPUTATIONAL_BASIS[0]),
            "entangling": physics.is_entangling(b, sample_count=args.samples, seed=args.seed)[0],
        }


def _rows_x_grid(args):
    if args.n is None:
        raise UsageError("x-grid needs --n")
    n = int(args.n)
    if n < 2:
        raise UsageError("n must be >= 2")
    phi = args.phi or 0.0
    lo = args.from_ if args.from_ is not None else -2.0
    hi = args.to if args.to is not None else 2.0
    xs = _grid(lo, hi, args.steps if args.steps is not None else 40)
    if np.any(np.abs(xs - 1.0) < 1e-12):
        raise UsageError("grid contains x = 1, where R(1) = 0 has no normalization")
    for x in xs:
        x = float(x)
        raw = ybe.rx(n, phi, x)
        g = ybe.normalized_rx(n, phi, x)
        yield {
            "n": n,
            "phi": phi,
            "x": x,
            "rho": float((raw @ raw.conj().T)[0, 0].real),
            "rho_formula": ybe.rho(n, x),
            "theta": ybe.theta_of(n, x),
            "concurrence_00": physics.concurrence(g @ COMPUTATIONAL_BASIS[0]),
            "unitarity_residual": unitarity_residual(g),
            "braided_ybe_residual": ybe.braided_ybe_residual(g),
        }


def _rows_theta_grid(args):
    phi = args.phi or 0.0
    lo = args.from_ if args.from_ is not None else 0.0
    hi = args.to if args.to is not None else math.pi
    for theta in _grid(lo, hi, args.steps if args.steps is not None else 100):
        theta = float(theta)
        g = ybe.r_theta(theta, phi)
        conc = [physics.concurrence(g @ v) for v in COMPUTATIONAL_BASIS]
        h = physics.hamiltonian_phi(theta, phi, 1.0).matrix
        fd = physics.hamiltonian_phi_fd(theta, phi, 1.0, 1e-5)
        yield {
            "theta": theta,
            "phi": phi,
            "sin2theta_abs": abs(math.sin(2 * theta)),
            "concurrence_00": conc[0],
            "concurrence_01": conc[1],
            "concurrence_10": conc[2],
            "concurrence_11": conc[3],
            "eigen_concurrence": physics.concurrence(physics.lambda_ket(theta, phi, "plus")),
            "energy_plus": math.sin(theta),
            "berry_plus": physics.berry_phase_closed_form(theta, "plus"),
            "berry_minus": physics.berry_phase_closed_form(theta, "minus"),
            "circle_residual": physics.berry_circle_residual(theta, "plus"),
            "fd_distance": float(np.linalg.norm(h - fd)),
        }


SWEEPS = {"n-range": _rows_n_range, "x-grid": _rows_x_grid, "theta-grid": _rows_theta_grid}


def cmd_sweep(args, out) -> int:
    rows = list(SWEEPS[args.kind](args))
    if args.format == "json":
        text = _dump({"kind": args.kind, "columns": SWEEP_COLUMNS[args.kind], "rows": rows}) + "\n"
    else:
        text = _csv(SWEEP_COLUMNS[args.kind], rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_berry(args, out) -> int:
    try:
        result = physics.berry_phase(args.theta, args.branch, args.steps)
    except physics.SingularBranchError as exc:
        raise UsageError(str(exc)) from None
    passed = result.difference <= BERRY_TOL
    payload = {
        "theta": args.theta,
        "branch": result.branch,
        "steps": result.steps,
        "closedForm": result.closed_form,
        "numeric": result.numeric,
        "difference": result.difference,
        "circleResidual": physics.berry_circle_residual(args.theta, args.branch),
        "tol": BERRY_TOL,
        "passed": passed,
    }
    out.write(_dump(payload) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_hamiltonian(args, out) -> int:
    theta, phi, rate = args.theta, args.phi, args.rate
    if args.kind == "phi":
        spec = physics.hamiltonian_phi(theta, phi, rate)
        fd = physics.hamiltonian_phi_fd(theta, phi, rate, args.delta)
        coeffs = physics.spin_decomposition_phi(theta, phi, rate)
        decomposition = {
            "Sz(x)1": _c(coeffs.c_z1),
            "1(x)Sz": _c(coeffs.c_1z),
            "e^{i phi} S+(x)S+": _c(coeffs.c_pp),
            "e^{-i phi} S-(x)S-": _c(coeffs.c_mm),
        }
        pairs = physics.eigen_system_phi(theta, phi, rate)
        eigen = [(pairs.energy_plus, pairs.ket_plus), (pairs.energy_minus, pairs.ket_minus)]
        eigenvalues = [pairs.energy_plus, pairs.energy_minus, 0.0, 0.0]
        eigen += [(0.0, COMPUTATIONAL_BASIS[1]), (0.0, COMPUTATIONAL_BASIS[2])]
    else:
        spec = physics.hamiltonian_theta(rate, phi, theta)
        fd = physics.hamiltonian_theta_fd(theta, phi, rate, args.delta)
        coeffs = physics.spin_decomposition_theta(rate, phi)
        decomposition = {
            "(XX+YY)/2": _c(coeffs.c_flip),
            "e^{i phi} S+(x)S+": _c(coeffs.c_pp),
            "e^{-i phi} S-(x)S-": _c(coeffs.c_mm),
        }
        eigen = physics.theta_eigenstates(rate, phi)
        eigenvalues = sorted((e for e, _ in eigen), reverse=True)
    distance = float(np.linalg.norm(spec.matrix - fd))
    eigen_residual = max(float(np.linalg.norm(spec.matrix @ v - e * v)) for e, v in eigen)
    passed = distance <= HAMILTONIAN_FD_TOL
    payload = {
        "kind": args.kind,
        "theta": theta,
        "phi": phi,
        "rate": rate,
        "delta": args.delta,
        "closedForm": encode_matrix(spec.matrix),
        "finiteDifference": encode_matrix(fd),
        "fdDistance": distance,
        "hermiticityResidual": spec.hermiticity_residual(),
        "decomposition": decomposition,
        "decompositionResidual": float(np.linalg.norm(coeffs.reconstruct() - spec.matrix)),
        "eigenvalues": eigenvalues,
        "eigenResidual": eigen_residual,
        "tol": HAMILTONIAN_FD_TOL,
        "passed": passed,
    }
    out.write(_dump(payload) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------- parser


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--tol", type=float, default=d(1e-12), help="residual tolerance (default 1e-12)")
    parser.add_argument("--format", choices=["json", "csv"], default=d(None),
                        help="output format (default json; csv for sweep)")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for sampling (default 0)")


def _family_flags(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--family", choices=sorted(FAMILY_FIELDS), required=required)
    parser.add_argument("--n")
    parser.add_argument("--phi")
    parser.add_argument("--alpha", help="complex for general, angle for barenco")
    parser.add_argument("--beta")
    parser.add_argument("--q")
    parser.add_argument("--t")
    parser.add_argument("--theta")
    parser.add_argument("--d0")
    parser.add_argument("--d1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclic-ybe",
        description="Yang-Baxter gates from cyclic groups: build, verify, sweep.",
    )
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gate", help="emit one gate with its residual checks")
    _global_flags(p, suppress=True)
    _family_flags(p, required=True)
    p.set_defaults(func=cmd_gate)

    p = sub.add_parser("verify", help="full residual report for a family or a matrix file")
    _global_flags(p, suppress=True)
    _family_flags(p, required=False)
    p.add_argument("--matrix", help="JSON matrix file ('-' for stdin)")
    p.add_argument("--samples", type=int, default=1000, help="random product states for the entangling test")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="tabulate a grid", epilog=SWEEP_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _global_flags(p, suppress=True)
    p.add_argument("--kind", choices=sorted(SWEEPS), required=True)
    p.add_argument("--from", dest="from_", type=float)
    p.add_argument("--to", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--phi", type=float)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("berry", help="Berry phase, closed form vs discrete loop")
    _global_flags(p, suppress=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--branch", choices=["plus", "minus"], required=True)
    p.add_argument("--steps", type=int, default=100_000)
    p.set_defaults(func=cmd_berry)

    p = sub.add_parser("hamiltonian", help="closed-form Hamiltonian vs finite-difference oracle")
    _global_flags(p, suppress=True)
    p.add_argument("--kind", choices=["phi", "theta"], required=True)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--rate", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=1e-5)
    p.set_defaults(func=cmd_hamiltonian)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format is None:
        args.format = "csv" if args.command == "sweep" else "json"
    try:
        return args.func(args, out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
